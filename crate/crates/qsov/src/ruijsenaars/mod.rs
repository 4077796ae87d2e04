//! The classical trigonometric Ruijsenaars model: Lax matrix, integrals of
//! motion, the two-particle separation of variables with its dilogarithm
//! generating function, and the reduction from three particles to two.

mod dilog;
mod genfun;
mod reduction;
mod separation;

pub use dilog::*;
pub use genfun::*;
pub use reduction::*;
pub use separation::*;

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};

/// Particles closer than this are treated as collided.
pub const COLLISION_EPS: f64 = 1e-8;

/// Positions on the unit circle with real positive conjugate shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    pub x: Vec<C64>,
    pub tx: Vec<f64>,
}

impl PhasePoint {
    pub fn new(x: Vec<C64>, tx: Vec<f64>) -> Result<Self> {
        if x.len() != tx.len() || x.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "phase point needs equally many positions and momenta, got {} and {}",
                x.len(),
                tx.len()
            )));
        }
        if let Some(z) = x.iter().find(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidParameter(format!("|x| = {} is off the unit circle", z.norm())));
        }
        if let Some(t) = tx.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidParameter(format!("T_x = {t} must be positive")));
        }
        Ok(PhasePoint { x, tx })
    }

    pub fn from_angles(theta: &[f64], tx: Vec<f64>) -> Result<Self> {
        Self::new(theta.iter().map(|a| C64::from_polar(1.0, *a)).collect(), tx)
    }

    /// Angles uniform on the circle, momenta uniform in `[1/2, 2]`, resampled
    /// until no two particles lie within `0.1` of each other.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        loop {
            let theta: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
            let tx: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
            let p = Self::from_angles(&theta, tx).expect("sampled point is valid");
            if min_gap(&p.x) > 0.1 {
                return p;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn tx_complex(&self) -> Vec<C64> {
        self.tx.iter().map(|t| C64::new(*t, 0.0)).collect()
    }

    pub fn check_distinct(&self) -> Result<()> {
        let gap = min_gap(&self.x);
        if gap < COLLISION_EPS {
            return Err(Error::Collision(gap));
        }
        Ok(())
    }
}

fn min_gap(x: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            gap = gap.min((x[j] - x[k]).norm());
        }
    }
    gap
}

/// `v_{jk} = (t^{1/2} x_j - t^{-1/2} x_k) / (x_j - x_k)`.
pub fn v(xj: C64, xk: C64, t: f64) -> C64 {
    let st = t.sqrt();
    (xj * st - xk / st) / (xj - xk)
}

/// `H_0, ..., H_n` from the subset-product formula, over complex momenta so
/// that finite differences can leave the real phase space.
pub(crate) fn hamiltonians_raw(x: &[C64], tx: &[C64], t: f64) -> Vec<C64> {
    let n = x.len();
    let mut h = vec![C64::new(0.0, 0.0); n + 1];
    for mask in 0u32..(1 << n) {
        let mut term = C64::new(1.0, 0.0);
        for j in (0..n).filter(|j| mask >> j & 1 == 1) {
            term *= tx[j];
            for k in (0..n).filter(|k| mask >> k & 1 == 0) {
                term *= v(x[j], x[k], t);
            }
        }
        h[mask.count_ones() as usize] += term;
    }
    h
}

/// `H_1, ..., H_n`.
pub fn hamiltonians(p: &PhasePoint, t: f64) -> Result<Vec<C64>> {
    p.check_distinct()?;
    Ok(hamiltonians_raw(&p.x, &p.tx_complex(), t)[1..].to_vec())
}

/// The two-particle integrals written out directly.
pub fn hamiltonians_n2(p: &PhasePoint, t: f64) -> Result<[C64; 2]> {
    if p.n() != 2 {
        return Err(Error::InvalidParameter("two particles expected".into()));
    }
    p.check_distinct()?;
    let st = t.sqrt();
    let (x1, x2) = (p.x[0], p.x[1]);
    let h1 = (x1 * st - x2 / st) / (x1 - x2) * p.tx[0] + (x2 * st - x1 / st) / (x2 - x1) * p.tx[1];
    Ok([h1, C64::new(p.tx[0] * p.tx[1], 0.0)])
}

/// Gaussian `t`-binomial `[n, i]_t`.
pub fn t_binomial(n: usize, i: usize, t: f64) -> f64 {
    (0..i).map(|k| (1.0 - t.powi((n - k) as i32)) / (1.0 - t.powi(k as i32 + 1))).product()
}

/// `H_i` when every `T_{x_j}` equals `tx`: `tx^i t^{-i(n-i)/2} [n, i]_t`.
pub fn hamiltonian_equal_momenta(n: usize, i: usize, tx: f64, t: f64) -> f64 {
    tx.powi(i as i32) * t.powf(-((i * (n - i)) as f64) / 2.0) * t_binomial(n, i, t)
}

/// Complex square matrix stored by rows.
pub type CMatrix = Vec<Vec<C64>>;

/// Determinant by elimination with partial pivoting.
pub fn det(m: &[Vec<C64>]) -> C64 {
    let n = m.len();
    let mut a: CMatrix = m.to_vec();
    let mut d = C64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n).max_by(|i, j| a[*i][col].norm().total_cmp(&a[*j][col].norm())).unwrap();
        if a[piv][col].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let s = a[col][c];
                a[r][c] -= f * s;
            }
        }
    }
    d
}

pub(crate) fn row_times(r: &[C64], m: &[Vec<C64>]) -> Vec<C64> {
    (0..m.len()).map(|k| (0..r.len()).map(|j| r[j] * m[j][k]).sum()).collect()
}

fn minus_scalar(m: &[Vec<C64>], z: C64) -> CMatrix {
    let mut out = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= z;
    }
    out
}

/// `L(u) = D(u) E(u)` at a fixed spectral parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxMatrix {
    pub u: C64,
    pub entries: CMatrix,
}

impl LaxMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// `det(z - L(u))`.
    pub fn char_det(&self, z: C64) -> C64 {
        let n = self.n();
        let m: CMatrix =
            (0..n).map(|i| (0..n).map(|k| if i == k { z } else { C64::new(0.0, 0.0) } - self.entries[i][k]).collect()).collect();
        det(&m)
    }

    /// `det(L(u) - z)`.
    pub fn shifted_det(&self, z: C64) -> C64 {
        det(&minus_scalar(&self.entries, z))
    }

    /// The leading `k x k` block, i.e. the Lax matrix with trailing rows and
    /// columns removed.
    pub fn truncated(&self, k: usize) -> LaxMatrix {
        LaxMatrix { u: self.u, entries: self.entries[..k].iter().map(|r| r[..k].to_vec()).collect() }
    }
}

/// `E_{jk} = (t^n+u)/(t^n-u) - (t x_j + x_k)/(t x_j - x_k)`.
pub fn e_entry(xj: C64, xk: C64, n: usize, t: f64, u: C64) -> C64 {
    let tn = t.powi(n as i32);
    (u + tn) / (-u + tn) - (xj * t + xk) / (xj * t - xk)
}

pub(crate) fn lax_raw(x: &[C64], tx: &[C64], t: f64, u: C64) -> CMatrix {
    let n = x.len();
    let tn = t.powi(n as i32);
    let pref = (-u + tn) * (1.0 - t) / ((-u + 1.0) * 2.0 * t.powf((n as f64 + 1.0) / 2.0));
    (0..n)
        .map(|j| {
            let vprod: C64 = (0..n).filter(|i| *i != j).map(|i| v(x[j], x[i], t)).product();
            let d = pref * vprod * tx[j];
            (0..n).map(|k| d * e_entry(x[j], x[k], n, t, u)).collect()
        })
        .collect()
}

pub fn lax_matrix(p: &PhasePoint, t: f64, u: C64) -> Result<LaxMatrix> {
    p.check_distinct()?;
    let n = p.n();
    let tn = t.powi(n as i32);
    if (u - 1.0).norm() < 1e-14 || (u - tn).norm() < 1e-14 {
        return Err(Error::Pole(format!("Lax matrix at u = {u}")));
    }
    for j in 0..n {
        for k in 0..n {
            if j != k && (p.x[j] * t - p.x[k]).norm() < 1e-14 {
                return Err(Error::Pole(format!("t x_{} = x_{}", j + 1, k + 1)));
            }
        }
    }
    Ok(LaxMatrix { u, entries: lax_raw(&p.x, &p.tx_complex(), t, u) })
}

/// Named residuals from a numeric check, with the tolerance they must meet.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub entries: Vec<(String, f64)>,
    pub tol: f64,
}

impl Report {
    pub fn new(tol: f64) -> Self {
        Report { entries: Vec::new(), tol }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64) {
        self.entries.push((name.into(), residual));
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.1 < self.tol)
    }

    /// Fails with `ToleranceExceeded` naming the worst entry.
    pub fn ensure(self) -> Result<Self> {
        let worst = self
            .entries
            .iter()
            .filter(|e| !(e.1 < self.tol))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        match worst {
            None => Ok(self),
            Some((what, value)) => Err(Error::ToleranceExceeded { what: what.clone(), value: *value, tol: self.tol }),
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}

pub(crate) fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Residual of the characteristic-polynomial identity
/// `(-1)^n t^{n(n-1)/2} (t^n-u)(1-u)^n det(z-L) = Σ_k (-1)^k t^{(n-1)k/2} (t^k-u)(1-u)^k (t^n-u)^{n-k} H_{n-k} z^k`.
pub fn char_poly_residual(p: &PhasePoint, t: f64, u: C64, z: C64) -> Result<f64> {
    let n = p.n();
    let l = lax_matrix(p, t, u)?;
    let h = hamiltonians_raw(&p.x, &p.tx_complex(), t);
    let tn = t.powi(n as i32);
    let one = C64::new(1.0, 0.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let lhs = (-u + tn) * (one - u).powi(n as i32) * l.char_det(z) * sign * t.powf((n * (n - 1)) as f64 / 2.0);
    let rhs: C64 = (0..=n)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            (-u + t.powi(k as i32)) * (one - u).powi(k as i32) * (-u + tn).powi((n - k) as i32) * h[n - k] * z.powi(k as i32)
                * (s * t.powf((n - 1) as f64 * k as f64 / 2.0))
        })
        .sum();
    Ok(rel(lhs, rhs))
}

/// The two-particle form `t(1-u) det(z-L) = t(1-u) z² - t^{1/2}(t-u) H_1 z + (t²-u) H_2`.
pub fn char_poly_residual_n2(p: &PhasePoint, t: f64, u: C64, z: C64) -> Result<f64> {
    let [h1, h2] = hamiltonians_n2(p, t)?;
    let l = lax_matrix(p, t, u)?;
    let one = C64::new(1.0, 0.0);
    let lhs = (one - u) * t * l.char_det(z);
    let rhs = (one - u) * t * z * z - (-u + t) * h1 * z * t.sqrt() + (-u + t * t) * h2;
    Ok(rel(lhs, rhs))
}

/// Derivatives of `f` along `ln x_j` and `ln T_{x_j}` by central differences.
/// Positions move along the circle: `∂/∂ln x = -i ∂/∂θ`.
pub(crate) fn log_gradients<F>(f: F, x: &[C64], tx: &[C64], h: f64) -> (Vec<Vec<C64>>, Vec<Vec<C64>>)
where
    F: Fn(&[C64], &[C64]) -> Vec<C64>,
{
    let n = x.len();
    let mut dchi = Vec::with_capacity(n);
    let mut dtau = Vec::with_capacity(n);
    let rot = |s: f64| C64::from_polar(1.0, s);
    for j in 0..n {
        let shift = |v: &[C64], by: C64| -> Vec<C64> {
            let mut w = v.to_vec();
            w[j] *= by;
            w
        };
        let fp = f(&shift(x, rot(h)), tx);
        let fm = f(&shift(x, rot(-h)), tx);
        dchi.push(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h) * C64::new(0.0, -1.0)).collect());
        let fp = f(x, &shift(tx, C64::new(h.exp(), 0.0)));
        let fm = f(x, &shift(tx, C64::new((-h).exp(), 0.0)));
        dtau.push(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect());
    }
    (dchi, dtau)
}

/// Weyl bracket `{f_a, f_b}` with `{ln T_{x_j}, ln x_k} = -i δ_{jk}`, given
/// log-coordinate gradients.
pub(crate) fn weyl_bracket(dchi: &[Vec<C64>], dtau: &[Vec<C64>], a: usize, b: usize) -> C64 {
    let s: C64 = (0..dchi.len()).map(|j| dtau[j][a] * dchi[j][b] - dchi[j][a] * dtau[j][b]).sum();
    s * C64::new(0.0, -1.0)
}

/// `|{H_1, H_2}|` for two particles by central differences with step `h`.
pub fn involutivity_residual(p: &PhasePoint, t: f64, h: f64) -> Result<f64> {
    if p.n() != 2 {
        return Err(Error::InvalidParameter("two particles expected".into()));
    }
    p.check_distinct()?;
    let f = |x: &[C64], tx: &[C64]| hamiltonians_raw(x, tx, t)[1..].to_vec();
    let (dchi, dtau) = log_gradients(f, &p.x, &p.tx_complex(), h);
    Ok(weyl_bracket(&dchi, &dtau, 0, 1).norm())
}
