//! Python bindings. Exact scalars cross the boundary as strings (`"n/d"`);
//! inputs accept anything whose `str()` parses as a rational, so `int`,
//! `str` and `fractions.Fraction` all work.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_complex::Complex64 as C64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qsov::macdonald::{self, Spectrum};
use qsov::numkernel::{self, AwParams, NumericConfig};
use qsov::ruijsenaars::{self as rs, PhasePoint};
use qsov::scalar::parse;
use qsov::sov::{self, BasisKind, TransitionKind};
use qsov::verify::{self, ExactGrid, Suite, VerifyConfig};
use qsov::{qpoly, Error, Laurent1, Laurent2, Pair, QContext, Q};

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_) => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    parse(&obj.str()?.to_cow()?).map_err(err)
}

fn pair(lam: (i64, i64)) -> PyResult<Pair> {
    Pair::new(lam.0, lam.1).map_err(err)
}

fn from_str<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

type Poly1 = BTreeMap<i64, String>;
type Poly2 = BTreeMap<(i64, i64), String>;

fn out1(p: &Laurent1) -> Poly1 {
    p.terms().map(|(e, c)| (*e, c.to_string())).collect()
}

fn out2(p: &Laurent2) -> Poly2 {
    p.terms().map(|(e, c)| (*e, c.to_string())).collect()
}

fn in2(p: HashMap<(i64, i64), Bound<'_, PyAny>>) -> PyResult<Laurent2> {
    let mut out = Laurent2::zero();
    for (e, c) in p {
        out.add_term(e, scalar(&c)?);
    }
    Ok(out)
}

/// Parameters `s`, `g`, `xi`, with `q = s^2` and `t = s^(2g)`.
#[pyclass(frozen, module = "pyqsov")]
struct Context {
    inner: QContext,
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (s, g, xi = None))]
    fn new(s: &Bound<'_, PyAny>, g: u32, xi: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let xi = match xi {
            Some(x) => scalar(x)?,
            None => Q::from_integer(1.into()),
        };
        Ok(Context { inner: QContext::new(scalar(s)?, g, xi).map_err(err)? })
    }

    #[getter]
    fn s(&self) -> String {
        self.inner.s().to_string()
    }

    #[getter]
    fn g(&self) -> u32 {
        self.inner.g()
    }

    #[getter]
    fn xi(&self) -> String {
        self.inner.xi().to_string()
    }

    #[getter]
    fn q(&self) -> String {
        self.inner.q().to_string()
    }

    #[getter]
    fn t(&self) -> String {
        self.inner.t().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Context(s={}, g={}, xi={})", self.inner.s(), self.inner.g(), self.inner.xi())
    }
}

/// Coefficients of `C_n(x; beta|q)` in `w = e^{i theta}`.
#[pyfunction]
fn cq_poly(n: usize, beta: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<Poly1> {
    Ok(out1(&qpoly::cq_sum(n, &scalar(beta)?, &scalar(q)?)))
}

#[pyfunction]
fn macdonald_poly(lam: (i64, i64), ctx: &Context) -> PyResult<Poly2> {
    Ok(out2(&macdonald::macdonald_poly(pair(lam)?, &ctx.inner).poly))
}

/// `(h1, h2)`.
#[pyfunction]
fn eigenvalues(lam: (i64, i64), ctx: &Context) -> PyResult<(String, String)> {
    let s = Spectrum::of(pair(lam)?, &ctx.inner);
    Ok((s.h1.to_string(), s.h2.to_string()))
}

#[pyfunction]
fn separated_poly(lam: (i64, i64), ctx: &Context) -> PyResult<Poly1> {
    Ok(out1(&macdonald::separated_poly(pair(lam)?, &ctx.inner).map_err(err)?.poly))
}

#[pyfunction]
fn normalization(lam: (i64, i64), ctx: &Context) -> PyResult<String> {
    Ok(sov::normalization_c(pair(lam)?, &ctx.inner).to_string())
}

/// `M_xi P_lambda = c f(y1) f(y2)`; raises if the identity fails.
#[pyfunction]
fn factorize<'py>(py: Python<'py>, lam: (i64, i64), ctx: &Context) -> PyResult<Bound<'py, PyDict>> {
    let image = sov::separate(pair(lam)?, &ctx.inner).map_err(err)?;
    let d = PyDict::new(py);
    if let Some((c, f)) = image.factored {
        d.set_item("c", c.to_string())?;
        d.set_item("f", out1(&f.poly))?;
    }
    d.set_item("image", out2(&image.poly))?;
    d.set_item("verified", true)?;
    Ok(d)
}

/// Basis element `p`, `r`, `pt` or `rt`.
#[pyfunction]
fn basis(kind: &str, lam: (i64, i64), ctx: &Context) -> PyResult<Poly2> {
    Ok(out2(&sov::basis(from_str::<BasisKind>(kind)?, pair(lam)?, &ctx.inner)))
}

/// Row `lam` of `pi`, `rho`, `Q`, `R`, `pi~`, `rho~`, `Q~` or `R~`.
#[pyfunction]
fn transition_row(kind: &str, lam: (i64, i64), ctx: &Context) -> PyResult<Poly2> {
    let row = sov::transition_row(pair(lam)?, from_str::<TransitionKind>(kind)?, &ctx.inner);
    Ok(row.entries.iter().map(|(nu, c)| ((nu.l1, nu.l2), c.to_string())).collect())
}

#[pyfunction]
fn apply_m(poly: HashMap<(i64, i64), Bound<'_, PyAny>>, ctx: &Context) -> PyResult<Poly2> {
    Ok(out2(&sov::apply_m(&in2(poly)?, &ctx.inner).map_err(err)?))
}

#[pyfunction]
fn apply_m_inverse(poly: HashMap<(i64, i64), Bound<'_, PyAny>>, ctx: &Context) -> PyResult<Poly2> {
    Ok(out2(&sov::apply_m_inverse(&in2(poly)?, &ctx.inner).map_err(err)?))
}

/// `M^{-1}` as a q-difference operator; agrees with `apply_m_inverse`.
#[pyfunction]
fn apply_m_inverse_qdiff(poly: HashMap<(i64, i64), Bound<'_, PyAny>>, ctx: &Context) -> PyResult<Poly2> {
    Ok(out2(&sov::apply_m_inverse_qdiff(&in2(poly)?, &ctx.inner).map_err(err)?))
}

/// Quadrature and closed form of the Askey-Wilson integral.
#[pyfunction]
#[pyo3(signature = (a, b, c, d, q, quad_points = 2048))]
fn askey_wilson(a: C64, b: C64, c: C64, d: C64, q: f64, quad_points: usize) -> PyResult<(C64, C64)> {
    let cfg = NumericConfig { quad_points, ..NumericConfig::default() };
    cfg.validate().map_err(err)?;
    let p = AwParams::new(a, b, c, d).map_err(err)?;
    Ok((numkernel::aw_quadrature(&p, q, quad_points, &cfg), numkernel::aw_closed_form(&p, q, &cfg)))
}

#[pyfunction]
fn dilog(z: C64) -> C64 {
    rs::dilog(z)
}

fn phase_point(angles: Vec<f64>, momenta: Vec<f64>) -> PyResult<PhasePoint> {
    PhasePoint::from_angles(&angles, momenta).map_err(err)
}

/// `H_1, ..., H_n` at `x_j = e^{i angles_j}`, `T_j = momenta_j`.
#[pyfunction]
fn hamiltonians(angles: Vec<f64>, momenta: Vec<f64>, t: f64) -> PyResult<Vec<C64>> {
    rs::hamiltonians(&phase_point(angles, momenta)?, t).map_err(err)
}

/// Two-particle separation variables `([y1, y2], [T_y1, T_y2])`.
#[pyfunction]
fn separation_variables(angles: Vec<f64>, momenta: Vec<f64>, t: f64, xi: C64) -> PyResult<(Vec<C64>, Vec<C64>)> {
    let s = rs::separation_variables(&phase_point(angles, momenta)?, t, xi).map_err(err)?;
    Ok((s.y.to_vec(), s.ty.to_vec()))
}

/// Runs a verification suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, lmax = None, seed = 0, phase_points = None))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    lmax: Option<i64>,
    seed: u64,
    phase_points: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = VerifyConfig { seed, ..VerifyConfig::default() };
    if let Some(l) = lmax {
        cfg.grid = ExactGrid { max_width: l, bound: l, ..ExactGrid::default() };
    }
    if let Some(n) = phase_points {
        cfg.phase_points = n;
    }
    let suite = from_str::<Suite>(suite)?;
    let report = py.detach(|| verify::run_suite(suite, &cfg)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("suite", report.suite.name())?;
    d.set_item("status", if report.passed() { "pass" } else { "fail" })?;
    d.set_item("elapsed_ms", report.elapsed_ms as u64)?;
    let cases = report
        .cases
        .iter()
        .map(|c| {
            let e = PyDict::new(py);
            e.set_item("id", &c.id)?;
            e.set_item("paper_eq", &c.identity)?;
            e.set_item("status", c.status.as_str())?;
            e.set_item("residual", c.residual)?;
            e.set_item("witness", c.witness.as_deref())?;
            Ok(e)
        })
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("cases", cases)?;
    Ok(d)
}

#[pymodule]
pub fn pyqsov(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Context>()?;
    m.add_function(wrap_pyfunction!(cq_poly, m)?)?;
    m.add_function(wrap_pyfunction!(macdonald_poly, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(separated_poly, m)?)?;
    m.add_function(wrap_pyfunction!(normalization, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(transition_row, m)?)?;
    m.add_function(wrap_pyfunction!(apply_m, m)?)?;
    m.add_function(wrap_pyfunction!(apply_m_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(apply_m_inverse_qdiff, m)?)?;
    m.add_function(wrap_pyfunction!(askey_wilson, m)?)?;
    m.add_function(wrap_pyfunction!(dilog, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonians, m)?)?;
    m.add_function(wrap_pyfunction!(separation_variables, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
