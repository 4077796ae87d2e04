use num_complex::Complex64 as C64;

use super::{hamiltonians_n2, lax_raw, log_gradients, rel, row_times, v, weyl_bracket, PhasePoint, Report};
use crate::error::{Error, Result};

/// Roots `(y_1, y_2)` with `T_{y_j} = T_{x_1} a_1(y_j) = T_{x_2} a_2(y_j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationData {
    pub y: [C64; 2],
    pub ty: [C64; 2],
}

impl SeparationData {
    pub fn swapped(self) -> Self {
        SeparationData { y: [self.y[1], self.y[0]], ty: [self.ty[1], self.ty[0]] }
    }

    /// Relabels the roots so that `y_1` is the one nearer `reference.y[0]`.
    pub fn aligned_to(self, reference: &SeparationData) -> Self {
        let d = |s: &SeparationData| (s.y[0] - reference.y[0]).norm() + (s.y[1] - reference.y[1]).norm();
        let sw = self.swapped();
        if d(&sw) < d(&self) {
            sw
        } else {
            self
        }
    }
}

/// Roots of `a u² + b u + c` without cancellation; the larger-modulus root
/// comes first. Fails when the discriminant is negligible.
pub(crate) fn quadratic_roots(a: C64, b: C64, c: C64) -> Result<[C64; 2]> {
    let disc = b * b - a * c * 4.0;
    let scale = (b * b).norm().max((a * c * 4.0).norm());
    if a.norm() <= 1e-14 * b.norm().max(c.norm()) || disc.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateRoots(disc.norm()));
    }
    let d = disc.sqrt();
    let s = if (b.conj() * d).re >= 0.0 { b + d } else { b - d };
    let big = -s / 2.0;
    Ok([big / a, c / big])
}

/// `a_j(u) = (t²-u)(ξ-x_j)(ξu-x_{3-j}) / ((1-u)(tξ-x_j)(ξu-t x_{3-j}))`, `j ∈ {1, 2}`.
pub fn a_coeff(j: usize, u: C64, x: [C64; 2], t: f64, xi: C64) -> C64 {
    let (xj, xo) = if j == 1 { (x[0], x[1]) } else { (x[1], x[0]) };
    (-u + t * t) * (xi - xj) * (xi * u - xo) / ((-u + 1.0) * (xi * t - xj) * (xi * u - xo * t))
}

/// Separation variables for complex momenta; also used away from the real
/// phase space by finite differences and by the reduction map.
pub(crate) fn separation_raw(x: [C64; 2], tx: [C64; 2], t: f64, xi: C64) -> Result<SeparationData> {
    let k1 = tx[0] * (xi - x[0]) * (xi * t - x[1]);
    let k2 = tx[1] * (xi - x[1]) * (xi * t - x[0]);
    let a = (k1 - k2) * xi * xi;
    let b = -xi * (k1 * (x[1] + x[0] * t) - k2 * (x[0] + x[1] * t));
    let c = (k1 - k2) * x[0] * x[1] * t;
    let y = quadratic_roots(a, b, c)?;
    let ty = y.map(|yj| tx[0] * a_coeff(1, yj, x, t, xi));
    Ok(SeparationData { y, ty })
}

fn check_xi(x: &[C64], t: f64, xi: C64) -> Result<()> {
    if xi.norm() < 1e-14 {
        return Err(Error::InvalidParameter("ξ must be nonzero".into()));
    }
    for (j, xj) in x.iter().enumerate() {
        if (xi * t - xj).norm() < 1e-12 {
            return Err(Error::Pole(format!("t ξ = x_{}", j + 1)));
        }
    }
    Ok(())
}

fn pair(p: &PhasePoint) -> Result<[C64; 2]> {
    if p.n() != 2 {
        return Err(Error::InvalidParameter(format!("two particles expected, got {}", p.n())));
    }
    p.check_distinct()?;
    Ok([p.x[0], p.x[1]])
}

pub fn separation_variables(p: &PhasePoint, t: f64, xi: C64) -> Result<SeparationData> {
    let x = pair(p)?;
    check_xi(&x, t, xi)?;
    separation_raw(x, [p.tx[0].into(), p.tx[1].into()], t, xi)
}

/// `t(1-u) a_1 a_2 - t^{1/2}(t-u)[v_{12} a_2 + v_{21} a_1] + (t²-u)`.
pub fn a_identity_residual(p: &PhasePoint, t: f64, xi: C64, u: C64) -> Result<f64> {
    let x = pair(p)?;
    check_xi(&x, t, xi)?;
    let (a1, a2) = (a_coeff(1, u, x, t, xi), a_coeff(2, u, x, t, xi));
    let terms = [
        (-u + 1.0) * t * a1 * a2,
        -(-u + t) * (v(x[0], x[1], t) * a2 + v(x[1], x[0], t) * a1) * t.sqrt(),
        -u + t * t,
    ];
    Ok(normalized_sum(&terms))
}

/// `|a_1/a_2 (u) - a_1/a_2 (t x_1 x_2 / (u ξ²))|`.
pub fn a_ratio_invariance_residual(p: &PhasePoint, t: f64, xi: C64, u: C64) -> Result<f64> {
    let x = pair(p)?;
    check_xi(&x, t, xi)?;
    let u2 = x[0] * x[1] * t / (u * xi * xi);
    let r = |w: C64| a_coeff(1, w, x, t, xi) / a_coeff(2, w, x, t, xi);
    Ok(rel(r(u), r(u2)))
}

/// `|Σ terms| / max(1, max |term|)`.
fn normalized_sum(terms: &[C64]) -> f64 {
    let s: C64 = terms.iter().sum();
    s.norm() / terms.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// Normalization row `α_k(u) = (t²+u)/(t²-u) - (tξ+x_k)/(tξ-x_k)`.
pub fn alpha_row(u: C64, x: [C64; 2], t: f64, xi: C64) -> [C64; 2] {
    x.map(|xk| (u + t * t) / (-u + t * t) - (xi * t + xk) / (xi * t - xk))
}

/// `B(u) = det(α; α L(u))` divided by `|α| |α L|`.
pub fn b_normalized(p: &PhasePoint, t: f64, xi: C64, u: C64) -> Result<f64> {
    let x = pair(p)?;
    let l = lax_raw(&p.x, &p.tx_complex(), t, u);
    let a = alpha_row(u, x, t, xi);
    let al = row_times(&a, &l);
    let b = a[0] * al[1] - a[1] * al[0];
    let scale = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt() * (al[0].norm_sqr() + al[1].norm_sqr()).sqrt();
    Ok(b.norm() / scale.max(f64::MIN_POSITIVE))
}

/// Constraint, both defining equations, the separation equation and `B(y_j) = 0`
/// at the solved roots.
pub fn separation_checks(p: &PhasePoint, t: f64, xi: C64, tol: f64) -> Result<Report> {
    let s = separation_variables(p, t, xi)?;
    let x = pair(p)?;
    let [h1, h2] = hamiltonians_n2(p, t)?;
    let mut r = Report::new(tol);
    r.push("constraint y1 y2 xi^2 = t x1 x2", rel(s.y[0] * s.y[1] * xi * xi, x[0] * x[1] * t));
    for j in 0..2 {
        let (y, ty) = (s.y[j], s.ty[j]);
        r.push(format!("T_y{} = T_x2 a_2(y{})", j + 1, j + 1), rel(ty, a_coeff(2, y, x, t, xi) * p.tx[1]));
        let terms = [(-y + 1.0) * t * ty * ty, -(-y + t) * h1 * ty * t.sqrt(), (-y + t * t) * h2];
        r.push(format!("separation equation at y{}", j + 1), normalized_sum(&terms));
        r.push(format!("B(y{}) = 0", j + 1), b_normalized(p, t, xi, y)?);
    }
    Ok(r)
}

/// Normalized bracket deviations of `(y_1, y_2, T_{y_1}, T_{y_2})` at step `h`;
/// each should vanish for a canonical map.
pub fn bracket_deviations(p: &PhasePoint, t: f64, xi: C64, h: f64) -> Result<Vec<(String, C64)>> {
    let base = separation_variables(p, t, xi)?;
    let f = |x: &[C64], tx: &[C64]| -> Vec<C64> {
        match separation_raw([x[0], x[1]], [tx[0], tx[1]], t, xi) {
            Ok(s) => {
                let s = s.aligned_to(&base);
                vec![s.y[0], s.y[1], s.ty[0], s.ty[1]]
            }
            Err(_) => vec![C64::new(f64::NAN, 0.0); 4],
        }
    };
    let (dchi, dtau) = log_gradients(f, &p.x, &p.tx_complex(), h);
    let vals = [base.y[0], base.y[1], base.ty[0], base.ty[1]];
    let br = |a: usize, b: usize| weyl_bracket(&dchi, &dtau, a, b) / (vals[a] * vals[b]);
    let mi = C64::new(0.0, -1.0);
    Ok(vec![
        ("{y1,y2}".to_string(), br(0, 1)),
        ("{Ty1,Ty2}".to_string(), br(2, 3)),
        ("{Ty1,y1}/(-i Ty1 y1) - 1".to_string(), br(2, 0) / mi - 1.0),
        ("{Ty2,y2}/(-i Ty2 y2) - 1".to_string(), br(3, 1) / mi - 1.0),
        ("{Ty1,y2}".to_string(), br(2, 1)),
        ("{Ty2,y1}".to_string(), br(3, 0)),
    ])
}

/// Bracket residuals at the working step, plus the coarse-step pair used to
/// show second-order convergence and its Richardson extrapolation.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicityReport {
    pub report: Report,
    pub coarse_step: f64,
    /// Largest deviation at `coarse_step` and `coarse_step / 2`.
    pub coarse: [f64; 2],
    pub richardson: f64,
}

impl CanonicityReport {
    pub fn improvement(&self) -> f64 {
        self.coarse[0] / self.coarse[1]
    }

    pub fn ensure(self) -> Result<Self> {
        self.report.clone().ensure()?;
        if !(self.improvement() >= 2.0) {
            return Err(Error::TrendViolation(format!(
                "halving the bracket step cut the residual only {:.2}x",
                self.improvement()
            )));
        }
        Ok(self)
    }
}

pub fn canonicity_check(p: &PhasePoint, t: f64, xi: C64, h: f64, tol: f64) -> Result<CanonicityReport> {
    let mut report = Report::new(tol);
    for (name, d) in bracket_deviations(p, t, xi, h)? {
        report.push(name, d.norm());
    }
    let coarse_step = 1e-2;
    let big = bracket_deviations(p, t, xi, coarse_step)?;
    let small = bracket_deviations(p, t, xi, coarse_step / 2.0)?;
    let max = |v: &[(String, C64)]| v.iter().map(|e| e.1.norm()).fold(0.0, f64::max);
    let richardson = big.iter().zip(&small).map(|(a, b)| ((b.1 * 4.0 - a.1) / 3.0).norm()).fold(0.0, f64::max);
    Ok(CanonicityReport { report, coarse_step, coarse: [max(&big), max(&small)], richardson })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const XIS: [C64; 2] = [C64::new(0.7, 0.0), C64::new(1.3, 0.2)];

    #[test]
    fn roots_satisfy_all_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = PhasePoint::random(2, &mut rng);
            for xi in XIS {
                separation_checks(&p, 0.5, xi, 1e-10).unwrap().ensure().unwrap();
            }
        }
    }

    #[test]
    fn coefficient_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = PhasePoint::random(2, &mut rng);
        for xi in XIS {
            for _ in 0..5 {
                let u = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                assert!(a_identity_residual(&p, 0.5, xi, u).unwrap() < 1e-10);
                assert!(a_ratio_invariance_residual(&p, 0.5, xi, u).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn brackets_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..3 {
            let p = PhasePoint::random(2, &mut rng);
            let r = canonicity_check(&p, 0.5, XIS[1], 1e-6, 1e-5).unwrap().ensure().unwrap();
            assert!(r.richardson < r.coarse[1]);
        }
    }

    #[test]
    fn quadratic() {
        let r = quadratic_roots(C64::new(1.0, 0.0), C64::new(-3.0, 0.0), C64::new(2.0, 0.0)).unwrap();
        assert!((r[0] - 2.0).norm() < 1e-15 && (r[1] - 1.0).norm() < 1e-15);
        let e = quadratic_roots(C64::new(1.0, 0.0), C64::new(-2.0, 0.0), C64::new(1.0, 0.0));
        assert!(matches!(e, Err(Error::DegenerateRoots(_))));
    }

    #[test]
    fn labels_follow_reference() {
        let s = SeparationData { y: [C64::new(1.0, 0.0), C64::new(2.0, 0.0)], ty: [C64::new(3.0, 0.0), C64::new(4.0, 0.0)] };
        assert_eq!(s.swapped().aligned_to(&s), s);
    }
}
