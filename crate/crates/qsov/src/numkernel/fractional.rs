//! Integral realizations of `M_{αβ}^r` and of the fractional q-integral `I^α`,
//! with the finite-difference form of `I^{-g}`.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_decreasing, circle_mean, l_product, l_ratio, qprod_inf, qprod_n, Comparison, NumericConfig};
use crate::error::{Error, Result};
use crate::pair::Pair;
use crate::scalar::{to_f64, QContext};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `B_q(a, b) = (1-q) (q, q^{a+b}; q)_∞ / (q^a, q^b; q)_∞`.
pub fn beta_q(a: f64, b: f64, q: f64, cfg: &NumericConfig) -> f64 {
    let p = |x: f64| qprod_inf(real(x), q, cfg).re;
    (1.0 - q) * p(q) * p(q.powf(a + b)) / (p(q.powf(a)) * p(q.powf(b)))
}

/// `Γ_q(x) = (q;q)_∞ (1-q)^{1-x} / (q^x;q)_∞`.
pub fn gamma_q(x: f64, q: f64, cfg: &NumericConfig) -> f64 {
    qprod_inf(real(q), q, cfg).re * (1.0 - q).powf(1.0 - x) / qprod_inf(real(q.powf(x)), q, cfg).re
}

fn require_disk(values: &[(C64, &str)]) -> Result<()> {
    for (z, name) in values {
        if z.norm() >= 1.0 {
            return Err(Error::ContourUnsupported(format!("kernel parameter {name} = {z} lies outside the unit disk")));
        }
    }
    Ok(())
}

/// `(1-q)(q;q)²_∞ (x², x^{-2};q)_∞ L_{q^{(α+β)/2}}(r,y) / (2 B_q(α,β) L_{q^{α/2}}(y,x) L_{q^{β/2}}(r,x))`.
pub fn mab_kernel(alpha: f64, beta: f64, r: C64, y: C64, x: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let qq = qprod_inf(real(q), q, cfg);
    qq * qq * (1.0 - q) * qprod_inf(x * x, q, cfg) * qprod_inf((x * x).inv(), q, cfg)
        * l_product(q.powf((alpha + beta) / 2.0), r, y, q, cfg)
        / (l_product(q.powf(alpha / 2.0), y, x, q, cfg) * l_product(q.powf(beta / 2.0), r, x, q, cfg)
            * (2.0 * beta_q(alpha, beta, q, cfg)))
}

/// `(M_{αβ}^r f)(y)` by trapezoid quadrature on the unit circle.
pub fn apply_mab_numeric(
    f: impl Fn(C64) -> C64,
    alpha: f64,
    beta: f64,
    r: C64,
    y: C64,
    q: f64,
    cfg: &NumericConfig,
) -> Result<C64> {
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::ContourUnsupported(format!("integral form needs α, β > 0, got ({alpha}, {beta})")));
    }
    let (ha, hb) = (q.powf(alpha / 2.0), q.powf(beta / 2.0));
    require_disk(&[(y * ha, "y q^(α/2)"), (y.inv() * ha, "q^(α/2)/y"), (r * hb, "r q^(β/2)"), (r.inv() * hb, "q^(β/2)/r")])?;
    Ok(circle_mean(cfg.quad_points, |x| mab_kernel(alpha, beta, r, y, x, q, cfg) * f(x)))
}

/// Exponents `(j1, j2, k1, k2)` of an R-polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RIndex {
    pub j1: usize,
    pub j2: usize,
    pub k1: usize,
    pub k2: usize,
}

impl RIndex {
    /// All indices with `j1 + j2 + k1 + k2 <= total`.
    pub fn up_to(total: usize) -> Vec<RIndex> {
        let mut out = Vec::new();
        for j1 in 0..=total {
            for j2 in 0..=total - j1 {
                for k1 in 0..=total - j1 - j2 {
                    for k2 in 0..=total - j1 - j2 - k1 {
                        out.push(RIndex { j1, j2, k1, k2 });
                    }
                }
            }
        }
        out
    }
}

/// `R^{αβ}_{j1 j2 k1 k2}(r, x)`, reflexive in `x`.
pub fn r_polynomial(idx: RIndex, alpha: f64, beta: f64, r: C64, y: C64, x: C64, q: f64) -> C64 {
    let (ha, hb) = (q.powf(alpha / 2.0), q.powf(beta / 2.0));
    let pair = |c: C64, n: usize| qprod_n(c * x, q, n) * qprod_n(c / x, q, n);
    pair(y * ha, idx.j1) * pair(y.inv() * ha, idx.j2) * pair(r * hb, idx.k1) * pair(r.inv() * hb, idx.k2)
}

/// Image of an R-polynomial under `M_{αβ}^r`.
pub fn r_polynomial_image(idx: RIndex, alpha: f64, beta: f64, r: C64, y: C64, q: f64) -> C64 {
    let c = q.powf((alpha + beta) / 2.0);
    let RIndex { j1, j2, k1, k2 } = idx;
    qprod_n(real(q.powf(alpha)), q, j1 + j2) * qprod_n(real(q.powf(beta)), q, k1 + k2)
        / qprod_n(real(q.powf(alpha + beta)), q, j1 + j2 + k1 + k2)
        * qprod_n(r * y * c, q, j1 + k1)
        * qprod_n(r / y * c, q, j2 + k1)
        * qprod_n(y / r * c, q, j1 + k2)
        * qprod_n((r * y).inv() * c, q, j2 + k2)
}

/// `M_{αβ}^r R_{jk}` by quadrature against its closed form.
pub fn r_polynomial_check(idx: RIndex, alpha: f64, beta: f64, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    let numeric = apply_mab_numeric(|x| r_polynomial(idx, alpha, beta, r, y, x, q), alpha, beta, r, y, q, cfg)?;
    Comparison::new(numeric, r_polynomial_image(idx, alpha, beta, r, y, q)).within(1e-8, &format!("M_ab on R{idx:?}"))
}

/// Compares the integral `M_{g,g}` with `r = y_+/t`, `x_± ` from `x_+ = ξ y_+ / t^{1/2}`,
/// applied to `p_ν(x1, x2)`, with the exact action `μ^{(p)}_ν p̃_ν(y1, y2)` at `samples`
/// random points. `|y_+|` is drawn inside `(t^{3/2}, t^{1/2})` so that every kernel
/// parameter stays in the unit disk. Returns the worst relative residual.
pub fn mgg_versus_exact(nu: Pair, ctx: &QContext, samples: usize, seed: u64, cfg: &NumericConfig) -> Result<Comparison> {
    let (q, t, xi) = (to_f64(ctx.q()), to_f64(ctx.t()), to_f64(ctx.xi()));
    let g = f64::from(ctx.g());
    let st = t.sqrt();
    let d = nu.width() as usize;
    let mu = t.powi(-nu.l1 as i32) * xi.powi(2 * nu.l1 as i32) * qprod_n(real(t), q, d).re / qprod_n(real(t * t), q, d).re;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<Comparison> = None;
    for _ in 0..samples {
        let u = t + (1.0 - t) * rng.random_range(0.2..0.7);
        let y_minus = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let y_plus = C64::from_polar(u * st, rng.random_range(0.0..std::f64::consts::TAU));
        let r = y_plus / t;
        let x_plus = y_plus * (xi / st);
        let p = |x: C64| {
            let (x1, x2) = (x_plus * x, x_plus / x);
            (x1 * x2).powi(nu.l1 as i32) * qprod_n(x1 / xi, q, d) * qprod_n(x2 / xi, q, d)
        };
        let numeric = apply_mab_numeric(p, g, g, r, y_minus, q, cfg)?;
        let (y1, y2) = (y_plus * y_minus, y_plus / y_minus);
        let expected = (y1 * y2).powi(nu.l1 as i32) * qprod_n(y1, q, d) * qprod_n(y2, q, d) * mu;
        let c = Comparison { numeric, expected, residual: (numeric - expected).norm() / expected.norm() };
        if worst.map_or(true, |w| c.residual > w.residual) {
            worst = Some(c);
        }
    }
    let worst = worst.ok_or_else(|| Error::InvalidParameter("need at least one sample".into()))?;
    worst.within(1e-8, &format!("integral M_gg on p_{nu}"))
}

/// `ψ_r^ν(x) = L_{q^{1/2}}(r, x) / (Γ_q(ν+1) L_{q^{(ν+1)/2}}(r, x))`.
pub fn psi_power(nu: f64, r: C64, x: C64, q: f64, cfg: &NumericConfig) -> C64 {
    l_ratio_params(q.sqrt(), q.powf((nu + 1.0) / 2.0), r, x, q, cfg) / gamma_q(nu + 1.0, q, cfg)
}

/// `L_a(r, x) / L_b(r, x)` factor by factor.
fn l_ratio_params(a: f64, b: f64, r: C64, x: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let args = [r * x, r / x, x / r, (r * x).inv()];
    args.iter().map(|z| super::qprod_ratio(z * a, z * b, q, cfg)).product()
}

/// `(1-q)(q;q)²_∞ (x², x^{-2};q)_∞ L_{q^{1/2}}(r,y) / (2 Γ_q(α) L_{q^{α/2}}(y,x) L_{q^{1/2}}(r,x))`.
pub fn i_kernel(alpha: f64, r: C64, y: C64, x: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let qq = qprod_inf(real(q), q, cfg);
    let h = q.sqrt();
    qq * qq * (1.0 - q) * qprod_inf(x * x, q, cfg) * qprod_inf((x * x).inv(), q, cfg) * l_ratio(h, r, y, x, q, cfg)
        / (l_product(q.powf(alpha / 2.0), y, x, q, cfg) * (2.0 * gamma_q(alpha, q, cfg)))
}

/// `I^{-g} f (y) = sum_k ζ_{g,k}(r, y) f(q^{k-g/2} y)` with
/// `ζ_{g,k} = (-1)^k q^{-k(k-1)/2} [g,k]_q y^{-2k}(1 - q^{g-2k} y^{-2}) / ((1-q)^g (q^{-k} y^{-2}; q)_{g+1})
///            L_{q^{1/2}}(r, y) / L_{q^{1/2}}(r, q^{k-g/2} y)`.
pub fn apply_i_negative(f: impl Fn(C64) -> C64, g: u32, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let gi = g as i32;
    let h = q.sqrt();
    let qbin = |k: i32| qprod_n(real(q), q, g as usize).re / (qprod_n(real(q), q, k as usize).re * qprod_n(real(q), q, (gi - k) as usize).re);
    let y2inv = (y * y).inv();
    (0..=gi)
        .map(|k| {
            let point = y * q.powf(k as f64 - gi as f64 / 2.0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let zeta = y2inv.powi(k) * (C64::new(1.0, 0.0) - y2inv * q.powi(gi - 2 * k))
                * (sign * q.powf(-(k * (k - 1)) as f64 / 2.0) * qbin(k) / (1.0 - q).powi(gi))
                / qprod_n(y2inv * q.powi(-k), q, g as usize + 1)
                * l_ratio(h, r, y, point, q, cfg);
            zeta * f(point)
        })
        .sum()
}

/// `I^{-1} f (y) = L(r,y)/((1-q)(1-y²)) [f(q^{1/2}y)/L(r,q^{1/2}y) - y² f(q^{-1/2}y)/L(r,q^{-1/2}y)]`.
pub fn apply_i_minus_one(f: impl Fn(C64) -> C64, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> C64 {
    let h = q.sqrt();
    let (up, down) = (y * h, y / h);
    (f(up) * l_ratio(h, r, y, up, q, cfg) - y * y * f(down) * l_ratio(h, r, y, down, q, cfg)) / ((1.0 - q) * (C64::new(1.0, 0.0) - y * y))
}

/// `(I^α f)(y)`: quadrature for `α > 0`, the identity for `α = 0`, and the
/// finite-difference form for negative integers.
pub fn apply_i_fractional(f: impl Fn(C64) -> C64, alpha: f64, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> Result<C64> {
    if alpha == 0.0 {
        return Ok(f(y));
    }
    if alpha < 0.0 {
        if alpha.fract() != 0.0 {
            return Err(Error::ContourUnsupported(format!("negative non-integer order {alpha} needs a deformed contour")));
        }
        return Ok(apply_i_negative(f, (-alpha) as u32, r, y, q, cfg));
    }
    let ha = q.powf(alpha / 2.0);
    let h = q.sqrt();
    require_disk(&[(y * ha, "y q^(α/2)"), (y.inv() * ha, "q^(α/2)/y"), (r * h, "r q^(1/2)"), (r.inv() * h, "q^(1/2)/r")])?;
    Ok(circle_mean(cfg.quad_points, |x| i_kernel(alpha, r, y, x, q, cfg) * f(x)))
}

/// `I^α ψ_r^ν` against `ψ_r^{ν+α}(y)`.
pub fn power_action_check(alpha: f64, nu: f64, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    let numeric = apply_i_fractional(|x| psi_power(nu, r, x, q, cfg), alpha, r, y, q, cfg)?;
    Comparison::new(numeric, psi_power(nu + alpha, r, y, q, cfg)).within(cfg.tol_loose, &format!("I^{alpha} ψ^{nu}"))
}

/// `I^a (I^b f)` against `I^{a+b} f`; the inner operator is evaluated at each of
/// `inner_points` outer nodes with the same node count.
pub fn group_property_check(
    f: impl Fn(C64) -> C64 + Sync,
    a: f64,
    b: f64,
    r: C64,
    y: C64,
    q: f64,
    inner_points: usize,
    cfg: &NumericConfig,
) -> Result<Comparison> {
    let inner_cfg = NumericConfig { quad_points: inner_points, ..*cfg };
    let mut composed = C64::new(0.0, 0.0);
    for k in 0..inner_points {
        let x = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / inner_points as f64);
        let inner = apply_i_fractional(&f, b, r, x, q, &inner_cfg)?;
        composed += i_kernel(a, r, y, x, q, cfg) * inner;
    }
    composed /= inner_points as f64;
    let direct = apply_i_fractional(&f, a + b, r, y, q, &inner_cfg)?;
    Comparison::new(composed, direct).within(cfg.tol_loose, &format!("I^{a} I^{b} = I^{}", a + b))
}

/// `I^{-g} f` from the finite-difference form against `g` applications of `I^{-1}`.
pub fn negative_power_check(f: &dyn Fn(C64) -> C64, g: u32, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> Result<Comparison> {
    fn iterate(f: &dyn Fn(C64) -> C64, g: u32, r: C64, y: C64, q: f64, cfg: &NumericConfig) -> C64 {
        if g == 0 {
            f(y)
        } else {
            apply_i_minus_one(|z| iterate(f, g - 1, r, z, q, cfg), r, y, q, cfg)
        }
    }
    let direct = apply_i_negative(f, g, r, y, q, cfg);
    Comparison::new(direct, iterate(f, g, r, y, q, cfg)).within(cfg.tol_tight, &format!("I^-{g} = (I^-1)^{g}"))
}

/// `|I^{-1} f - (-y²/(1-y²)) f'(y)|` at `q = 1 - ε`, checked to decrease.
pub fn i_minus_one_limit(
    f: impl Fn(C64) -> C64,
    df: impl Fn(C64) -> C64,
    r: C64,
    y: C64,
    eps: &[f64],
    cfg: &NumericConfig,
) -> Result<Vec<f64>> {
    let exact = -y * y / (C64::new(1.0, 0.0) - y * y) * df(y);
    let errors: Vec<f64> = eps.iter().map(|e| (apply_i_minus_one(&f, r, y, 1.0 - e, cfg) - exact).norm()).collect();
    check_decreasing(&errors, 1e-12, "I^-1 limit")?;
    Ok(errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: f64 = 0.25;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn mab_maps_one_to_one() {
        let (r, y) = (C64::new(0.9, 0.2), C64::new(0.3, 0.8));
        let v = apply_mab_numeric(|_| C64::new(1.0, 0.0), 0.7, 1.3, r, y, Q, &cfg()).unwrap();
        assert!((v - 1.0).norm() < 1e-10);
        assert!(matches!(
            apply_mab_numeric(|_| C64::new(1.0, 0.0), 0.7, 1.3, C64::new(3.0, 0.0), y, Q, &cfg()),
            Err(Error::ContourUnsupported(_))
        ));
    }

    #[test]
    fn r_polynomials() {
        let (r, y) = (C64::new(0.9, 0.2), C64::new(0.3, 0.8));
        for idx in RIndex::up_to(3) {
            r_polynomial_check(idx, 0.7, 1.3, r, y, Q, &cfg()).unwrap();
        }
        assert_eq!(RIndex::up_to(3).len(), 35);
    }

    #[test]
    fn mgg_agrees_with_exact_action() {
        let ctx = QContext::from_parts(1, 2, 1, 1, 1).unwrap();
        for nu in [(0, 0), (0, 1), (-1, 2)] {
            mgg_versus_exact(Pair::new(nu.0, nu.1).unwrap(), &ctx, 3, 7, &cfg()).unwrap();
        }
    }

    #[test]
    fn fractional_power_action() {
        let (r, y) = (C64::new(0.95, 0.1), C64::from_polar(1.0, 0.4));
        for (a, nu) in [(0.5, 0.3), (1.0, 0.0), (0.7, 1.2)] {
            power_action_check(a, nu, r, y, Q, &cfg()).unwrap();
        }
    }

    #[test]
    fn group_property() {
        let (r, y) = (C64::new(0.95, 0.1), C64::from_polar(1.0, 0.4));
        let f = |x: C64| x + x.inv() + (x * x + (x * x).inv()) * 0.3;
        group_property_check(f, 0.5, 0.5, r, y, Q, 256, &cfg()).unwrap();
    }

    #[test]
    fn negative_powers() {
        let (r, y) = (C64::new(0.4, 0.3), C64::new(0.6, 0.5));
        let f = |x: C64| x.powi(3) + x.inv() * 2.0 + (x * x + 3.0).inv();
        for g in 1..=3 {
            negative_power_check(&f, g, r, y, 0.3, &cfg()).unwrap();
        }
    }

    #[test]
    fn q_to_one_limit() {
        let r = C64::from_polar(1.0, 0.7);
        let errs = i_minus_one_limit(|y| y * y, |y| y * 2.0, r, C64::new(0.5, 0.0), &[1e-2, 1e-3, 1e-4], &cfg()).unwrap();
        assert!(errs[2] < 1e-4);
    }
}
