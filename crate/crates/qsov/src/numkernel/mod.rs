//! Floating-point contour integrals on the unit circle: the Askey–Wilson
//! integral, integral realizations of `M_{αβ}` and `I^α`, and the classical
//! identities of the continuous q-ultraspherical polynomials.

mod fractional;
mod ultraspherical;

pub use fractional::*;
pub use ultraspherical::*;

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Quadrature and truncation settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    /// Trapezoid nodes on the unit circle.
    pub quad_points: usize,
    /// `(a;q)_∞` is truncated once `|a| q^k` drops below this.
    pub prod_cutoff: f64,
    pub tol_tight: f64,
    pub tol_loose: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { quad_points: 2048, prod_cutoff: 1e-16, tol_tight: 1e-10, tol_loose: 1e-6 }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quad_points < 256 {
            return Err(Error::InvalidParameter(format!("quad_points must be >= 256, got {}", self.quad_points)));
        }
        if !(self.prod_cutoff > 0.0 && self.prod_cutoff <= 1e-14) {
            return Err(Error::InvalidParameter(format!("prod_cutoff must lie in (0, 1e-14], got {}", self.prod_cutoff)));
        }
        if !(self.tol_tight > 0.0 && self.tol_loose > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// A numeric value next to the value it should reproduce.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub numeric: C64,
    pub expected: C64,
    /// `|numeric - expected| / max(1, |expected|)`.
    pub residual: f64,
}

impl Comparison {
    pub fn new(numeric: C64, expected: C64) -> Self {
        let residual = (numeric - expected).norm() / expected.norm().max(1.0);
        Comparison { numeric, expected, residual }
    }

    /// Fails with `ToleranceExceeded` unless the residual is below `tol`.
    pub fn within(self, tol: f64, what: &str) -> Result<Self> {
        if self.residual.is_finite() && self.residual < tol {
            Ok(self)
        } else {
            Err(Error::ToleranceExceeded {
                what: format!("{what} (numeric {}, expected {})", self.numeric, self.expected),
                value: self.residual,
                tol,
            })
        }
    }
}

/// `(a;q)_∞`, truncated when `|a| q^k < cutoff`.
pub fn qprod_inf(a: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let mut out = C64::new(1.0, 0.0);
    let mut term = a;
    while term.norm() >= cfg.prod_cutoff {
        out *= C64::new(1.0, 0.0) - term;
        term *= q;
    }
    out
}

/// `(a;q)_∞ / (b;q)_∞` multiplied factor by factor; stays finite as `q -> 1`
/// where both products underflow.
pub fn qprod_ratio(a: C64, b: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let one = C64::new(1.0, 0.0);
    let mut out = one;
    let (mut ta, mut tb) = (a, b);
    while ta.norm().max(tb.norm()) >= cfg.prod_cutoff {
        out *= (one - ta) / (one - tb);
        ta *= q;
        tb *= q;
    }
    out
}

/// `(a;q)_n` for `n >= 0`.
pub fn qprod_n(a: C64, q: f64, n: usize) -> C64 {
    let mut out = C64::new(1.0, 0.0);
    let mut term = a;
    for _ in 0..n {
        out *= C64::new(1.0, 0.0) - term;
        term *= q;
    }
    out
}

/// `L_ν(x, y) = (ν x y, ν x/y, ν y/x, ν/(x y); q)_∞`.
pub fn l_product(nu: f64, x: C64, y: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let terms = [x * y, x / y, y / x, (x * y).inv()];
    terms.iter().map(|z| qprod_inf(z * nu, q, cfg)).product()
}

/// `L_ν(x, y) / L_ν(x, y')` computed factor by factor.
pub fn l_ratio(nu: f64, x: C64, y: C64, y2: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let num = [x * y, x / y, y / x, (x * y).inv()];
    let den = [x * y2, x / y2, y2 / x, (x * y2).inv()];
    num.iter().zip(den.iter()).map(|(a, b)| qprod_ratio(a * nu, b * nu, q, cfg)).product()
}

/// `(1/2πi) ∮ f(x) dx/x` over the unit circle by the n-point trapezoid rule.
pub fn circle_mean(n: usize, f: impl Fn(C64) -> C64) -> C64 {
    let sum: C64 = (0..n).map(|k| f(C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))).sum();
    sum / n as f64
}

/// Parameters of the Askey–Wilson weight, all strictly inside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AwParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl AwParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let p = AwParams { a, b, c, d };
        let m = p.as_array().iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m >= 1.0 {
            return Err(Error::ContourUnsupported(format!(
                "Askey-Wilson parameter of modulus {m} needs a deformed contour"
            )));
        }
        Ok(p)
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// `w(x; a,b,c,d) = (x², x^{-2}; q)_∞ / prod_{z=a,b,c,d} (z x, z/x; q)_∞`.
pub fn aw_weight(x: C64, p: &AwParams, q: f64, cfg: &NumericConfig) -> C64 {
    let num = qprod_inf(x * x, q, cfg) * qprod_inf((x * x).inv(), q, cfg);
    let den: C64 = p.as_array().iter().map(|z| qprod_inf(z * x, q, cfg) * qprod_inf(z / x, q, cfg)).product();
    num / den
}

/// `2 (abcd;q)_∞ / (q, ab, ac, ad, bc, bd, cd; q)_∞`.
pub fn aw_closed_form(p: &AwParams, q: f64, cfg: &NumericConfig) -> C64 {
    let [a, b, c, d] = p.as_array();
    let num = qprod_inf(a * b * c * d, q, cfg) * 2.0;
    let den: C64 = [C64::new(q, 0.0), a * b, a * c, a * d, b * c, b * d, c * d]
        .iter()
        .map(|z| qprod_inf(*z, q, cfg))
        .product();
    num / den
}

/// Trapezoid value of `(1/2πi) ∮ w(x) dx/x` with `n` nodes.
pub fn aw_quadrature(p: &AwParams, q: f64, n: usize, cfg: &NumericConfig) -> C64 {
    circle_mean(n, |x| aw_weight(x, p, q, cfg))
}

/// The Askey–Wilson integral against its closed form, within `tol_tight`.
pub fn aw_integral(p: &AwParams, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    Comparison::new(aw_quadrature(p, q, cfg.quad_points, cfg), aw_closed_form(p, q, cfg))
        .within(cfg.tol_tight, "Askey-Wilson integral")
}

/// Quadrature errors for each node count, and a check that each doubling cuts
/// the error at least fourfold until it reaches `floor`.
pub fn aw_convergence(p: &AwParams, q: f64, nodes: &[usize], floor: f64, cfg: &NumericConfig) -> Result<Vec<f64>> {
    let exact = aw_closed_form(p, q, cfg);
    let errors: Vec<f64> = nodes.iter().map(|n| (aw_quadrature(p, q, *n, cfg) - exact).norm()).collect();
    for w in errors.windows(2) {
        if w[0] > floor && w[1] > w[0] / 4.0 {
            return Err(Error::TrendViolation(format!("quadrature error went from {:e} to {:e}", w[0], w[1])));
        }
        if w[0] <= floor && w[1] > floor {
            return Err(Error::TrendViolation(format!("quadrature error rose above {floor:e}: {:e}", w[1])));
        }
    }
    Ok(errors)
}

/// Fails with `TrendViolation` unless each error is smaller than the previous one,
/// treating values below `floor` as already converged.
pub fn check_decreasing(errors: &[f64], floor: f64, what: &str) -> Result<()> {
    for w in errors.windows(2) {
        if !(w[1] < w[0] || w[1] < floor) {
            return Err(Error::TrendViolation(format!("{what}: error {:e} did not drop below {:e}", w[1], w[0])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn products() {
        let cfg = NumericConfig::default();
        assert_eq!(qprod_inf(c(0.0, 0.0), 0.25, &cfg), c(1.0, 0.0));
        let a = c(0.3, 0.2);
        let lhs = qprod_inf(a, 0.25, &cfg);
        let rhs = (c(1.0, 0.0) - a) * qprod_inf(a * 0.25, 0.25, &cfg);
        assert!((lhs - rhs).norm() < 1e-15);
        let r = qprod_ratio(a, c(0.1, 0.0), 0.25, &cfg);
        assert!((r - lhs / qprod_inf(c(0.1, 0.0), 0.25, &cfg)).norm() < 1e-14);
    }

    #[test]
    fn askey_wilson_examples() {
        let cfg = NumericConfig::default();
        let zero = AwParams::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let v = aw_integral(&zero, 0.25, &cfg).unwrap();
        assert!((v.expected - 2.0 / qprod_inf(c(0.25, 0.0), 0.25, &cfg)).norm() < 1e-15);
        let p = AwParams::new(c(0.3, 0.0), c(-0.2, 0.0), c(0.0, 0.1), c(0.4, 0.0)).unwrap();
        let v = aw_integral(&p, 0.25, &cfg).unwrap();
        let swapped = AwParams::new(p.d, p.c, p.a, p.b).unwrap();
        assert!((aw_closed_form(&swapped, 0.25, &cfg) - v.expected).norm() < 1e-14);
        assert!(AwParams::new(c(1.2, 0.0), p.b, p.c, p.d).is_err());
    }

    #[test]
    fn quadrature_converges() {
        let cfg = NumericConfig::default();
        let p = AwParams::new(c(0.6, 0.0), c(-0.5, 0.1), c(0.0, 0.55), c(0.4, -0.3)).unwrap();
        let errs = aw_convergence(&p, 0.4, &[8, 16, 32, 64, 128], 1e-13, &cfg).unwrap();
        assert!(errs[0] > errs[2]);
    }

    #[test]
    fn config_validation() {
        assert!(NumericConfig::default().validate().is_ok());
        let bad = NumericConfig { quad_points: 64, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
