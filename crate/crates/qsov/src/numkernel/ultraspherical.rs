//! Numeric identities of `C_n(cos θ; β | q)`: orthogonality, the second-order
//! q-difference equation, the product formula and its kernel, and the `q -> 1` limit.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{check_decreasing, circle_mean, qprod_inf, qprod_n, Comparison, NumericConfig};
use crate::error::Result;

/// `C_n(cos θ; β | q)` at `w = e^{iθ}` from the terminating sum.
pub fn cq_numeric(n: usize, beta: f64, q: f64, w: C64) -> C64 {
    let b = C64::new(beta, 0.0);
    let qq = C64::new(q, 0.0);
    let ratio: Vec<C64> = (0..=n).map(|k| qprod_n(b, q, k) / qprod_n(qq, q, k)).collect();
    (0..=n).map(|k| ratio[k] * ratio[n - k] * w.powi(n as i32 - 2 * k as i32)).sum()
}

/// Classical Gegenbauer `C_n^λ(cos θ) = sum_k (λ)_k (λ)_{n-k} / (k! (n-k)!) cos((n-2k)θ)`.
pub fn gegenbauer(n: usize, lambda: f64, theta: f64) -> f64 {
    let rising = |k: usize| (0..k).fold(1.0, |acc, i| acc * (lambda + i as f64) / (i + 1) as f64);
    (0..=n).map(|k| rising(k) * rising(n - k) * ((n as f64 - 2.0 * k as f64) * theta).cos()).sum()
}

/// `|(e^{2iθ}; q)_∞ / (β e^{2iθ}; q)_∞|²` written as a product over `z` and `1/z`.
fn weight(z: C64, beta: f64, q: f64, cfg: &NumericConfig) -> C64 {
    let z2 = z * z;
    qprod_inf(z2, q, cfg) * qprod_inf(z2.inv(), q, cfg)
        / (qprod_inf(z2 * beta, q, cfg) * qprod_inf(z2.inv() * beta, q, cfg))
}

/// Left side `(1/2π) ∫ C_m C_n w dξ/√(1-ξ²)` against
/// `(β, βq; q)_∞ / (β², q; q)_∞ (β²;q)_n/(q;q)_n (1-β)/(1-βq^n) δ_{mn}`.
pub fn orthogonality_check(m: usize, n: usize, beta: f64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    // ∫_0^π dθ is half of the full-circle integral.
    let numeric = circle_mean(cfg.quad_points, |z| {
        cq_numeric(m, beta, q, z) * cq_numeric(n, beta, q, z) * weight(z, beta, q, cfg)
    }) / 2.0;
    let expected = if m == n {
        let b = C64::new(beta, 0.0);
        qprod_inf(b, q, cfg) * qprod_inf(b * q, q, cfg) / (qprod_inf(b * beta, q, cfg) * qprod_inf(C64::new(q, 0.0), q, cfg))
            * qprod_n(b * beta, q, n)
            / qprod_n(C64::new(q, 0.0), q, n)
            * (1.0 - beta)
            / (1.0 - beta * q.powi(n as i32))
    } else {
        C64::new(0.0, 0.0)
    };
    Comparison::new(numeric, expected).within(cfg.tol_loose, &format!("orthogonality m={m} n={n}"))
}

/// Which form of the second-order q-difference equation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QDiffForm {
    /// `(1-q)² D_q [w(ξ; q^{1/2}β) D_q y] + λ_n w(ξ; β) y`.
    Printed,
    /// `(1-q)² D_q [w(ξ; qβ)/sin θ D_q y] + λ_n w(ξ; β)/sin θ y`, the Askey–Wilson form.
    Corrected,
}

/// Residual of the q-difference equation for `y = C_n` at `ξ = cos θ`, with
/// `λ_n = 4 q^{1-n} (1 - q^n)(1 - β² q^n)` and
/// `D_q f = [f(q^{1/2} z) - f(q^{-1/2} z)] / [(q^{1/2} - q^{-1/2})(z - 1/z)/2]`.
pub fn qdiff_residual(n: usize, theta: f64, beta: f64, q: f64, form: QDiffForm, cfg: &NumericConfig) -> C64 {
    let h = q.sqrt();
    let z = C64::from_polar(1.0, theta);
    let y = |z: C64| cq_numeric(n, beta, q, z);
    let dxi = |z: C64| (z - z.inv()) * ((h - 1.0 / h) / 2.0);
    let (inner, sine): (f64, Box<dyn Fn(C64) -> C64>) = match form {
        QDiffForm::Printed => (h * beta, Box::new(|_| C64::new(1.0, 0.0))),
        QDiffForm::Corrected => (q * beta, Box::new(|z: C64| (z - z.inv()) / C64::new(0.0, 2.0))),
    };
    let dy = |z: C64| (y(z * h) - y(z / h)) / dxi(z);
    let g = |z: C64| weight(z, inner, q, cfg) / sine(z) * dy(z);
    let lambda = 4.0 * q.powi(1 - n as i32) * (1.0 - q.powi(n as i32)) * (1.0 - beta * beta * q.powi(n as i32));
    (g(z * h) - g(z / h)) / dxi(z) * (1.0 - q).powi(2) + weight(z, beta, q, cfg) / sine(z) * y(z) * lambda
}

/// Checks the corrected q-difference equation at every `θ` in `thetas`.
pub fn qdiff_equation_check(n: usize, thetas: &[f64], beta: f64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    let mut worst = Comparison::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for &theta in thetas {
        let r = qdiff_residual(n, theta, beta, q, QDiffForm::Corrected, cfg);
        let c = Comparison::new(r, C64::new(0.0, 0.0));
        if c.residual >= worst.residual {
            worst = c;
        }
    }
    worst.within(cfg.tol_loose, &format!("q-difference equation n={n}"))
}

/// The product-formula kernel `K(cos θ, cos φ, cos ψ)` times `sin ψ`, evaluated at `x = e^{iψ}`.
fn kernel_times_sine(theta: f64, phi: f64, x: C64, beta: f64, q: f64, cfg: &NumericConfig) -> C64 {
    let sb = beta.sqrt();
    let params = [
        C64::from_polar(sb, theta + phi),
        C64::from_polar(sb, -theta - phi),
        C64::from_polar(sb, theta - phi),
        C64::from_polar(sb, phi - theta),
    ];
    let b = C64::new(beta, 0.0);
    let pref = qprod_inf(C64::new(q, 0.0), q, cfg) * qprod_inf(b, q, cfg).powi(2)
        * (qprod_inf(C64::from_polar(beta, 2.0 * theta), q, cfg) * qprod_inf(C64::from_polar(beta, 2.0 * phi), q, cfg))
            .norm_sqr()
        / (qprod_inf(b * beta, q, cfg) * (2.0 * PI));
    let num = qprod_inf(x * x, q, cfg) * qprod_inf((x * x).inv(), q, cfg);
    let den: C64 = params.iter().map(|p| qprod_inf(p * x, q, cfg) * qprod_inf(p / x, q, cfg)).product();
    pref * num / den
}

/// `∫_{-1}^{1} K(ξ, η, ζ) f(ζ) dζ` with `ζ = cos ψ`, as half the full-circle integral.
fn kernel_integral(theta: f64, phi: f64, beta: f64, q: f64, cfg: &NumericConfig, f: impl Fn(C64) -> C64) -> C64 {
    circle_mean(cfg.quad_points, |x| kernel_times_sine(theta, phi, x, beta, q, cfg) * f(x)) * PI
}

/// `C_n(ξ) C_n(η)` against `(β²;q)_n/(q;q)_n β^{-n/2} ∫ K(ξ,η,ζ) C_n(ζ) dζ`.
pub fn product_formula_check(n: usize, theta: f64, phi: f64, beta: f64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    let lhs = cq_numeric(n, beta, q, C64::from_polar(1.0, theta)) * cq_numeric(n, beta, q, C64::from_polar(1.0, phi));
    let integral = kernel_integral(theta, phi, beta, q, cfg, |x| cq_numeric(n, beta, q, x));
    let b2 = C64::new(beta * beta, 0.0);
    let rhs = qprod_n(b2, q, n) / qprod_n(C64::new(q, 0.0), q, n) * beta.powf(-(n as f64) / 2.0) * integral;
    Comparison::new(rhs, lhs).within(cfg.tol_loose, &format!("product formula n={n}"))
}

/// Total mass `∫ K dζ`, which must be one.
pub fn kernel_mass_check(theta: f64, phi: f64, beta: f64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    let mass = kernel_integral(theta, phi, beta, q, cfg, |_| C64::new(1.0, 0.0));
    Comparison::new(mass, C64::new(1.0, 0.0)).within(cfg.tol_loose, "product kernel mass")
}

/// The closed kernel at `ψ` against the orthogonal-polynomial series truncated at `terms`:
/// `K = (q, β²; q)_∞ / (2π (β, β; q)_∞ sin ψ) w(ζ) sum_n β^{n/2} (1-βq^n) ((q;q)_n/(β²;q)_n)² C_n C_n C_n`.
pub fn kernel_series_check(
    theta: f64,
    phi: f64,
    psi: f64,
    terms: usize,
    beta: f64,
    q: f64,
    cfg: &NumericConfig,
) -> Result<Comparison> {
    let x = C64::from_polar(1.0, psi);
    let closed = kernel_times_sine(theta, phi, x, beta, q, cfg);
    let b = C64::new(beta, 0.0);
    let qq = C64::new(q, 0.0);
    let pref = qprod_inf(qq, q, cfg) * qprod_inf(b * beta, q, cfg) / (qprod_inf(b, q, cfg).powi(2) * (2.0 * PI))
        * weight(x, beta, q, cfg);
    let (w1, w2) = (C64::from_polar(1.0, theta), C64::from_polar(1.0, phi));
    let sum: C64 = (0..=terms)
        .map(|n| {
            let r = qprod_n(qq, q, n) / qprod_n(b * beta, q, n);
            r * r * beta.powf(n as f64 / 2.0) * (1.0 - beta * q.powi(n as i32))
                * cq_numeric(n, beta, q, w1)
                * cq_numeric(n, beta, q, w2)
                * cq_numeric(n, beta, q, x)
        })
        .sum();
    Comparison::new(pref * sum, closed).within(cfg.tol_loose, &format!("kernel series with {terms} terms"))
}

/// `|C_n(cos θ; q^λ | q) - C_n^λ(cos θ)|` at `q = 1 - ε` for each `ε`, checked to decrease.
pub fn gegenbauer_limit(n: usize, lambda: f64, theta: f64, eps: &[f64]) -> Result<Vec<f64>> {
    let exact = gegenbauer(n, lambda, theta);
    let errors: Vec<f64> = eps
        .iter()
        .map(|e| {
            let q = 1.0 - e;
            (cq_numeric(n, q.powf(lambda), q, C64::from_polar(1.0, theta)) - exact).norm()
        })
        .collect();
    check_decreasing(&errors, 1e-12, &format!("Gegenbauer limit n={n} λ={lambda}"))?;
    Ok(errors)
}
