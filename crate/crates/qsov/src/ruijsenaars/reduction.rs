use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::separation::{quadratic_roots, separation_raw};
use super::{det, lax_raw, rel, row_times, v, LaxMatrix, PhasePoint, Report};
use crate::error::{Error, Result};
use crate::numkernel::{qprod_inf, NumericConfig};

fn qprods(args: &[C64], q: f64, cfg: &NumericConfig) -> C64 {
    args.iter().map(|a| qprod_inf(*a, q, cfg)).product()
}

/// `W_x = (t, t x_1/x_3, t x_2/x_3; q)_∞ / (t², x_1/x_3, x_2/x_3; q)_∞`.
pub fn w_x(x: [C64; 3], t: f64, q: f64, cfg: &NumericConfig) -> C64 {
    let (r1, r2) = (x[0] / x[2], x[1] / x[2]);
    qprods(&[t.into(), r1 * t, r2 * t], q, cfg) / qprods(&[(t * t).into(), r1, r2], q, cfg)
}

/// `W_y = (t², ỹ_1, ỹ_2; q)_∞ / (t³, ỹ_1/t, ỹ_2/t; q)_∞`.
pub fn w_y(yt: [C64; 2], t: f64, q: f64, cfg: &NumericConfig) -> C64 {
    qprods(&[(t * t).into(), yt[0], yt[1]], q, cfg) / qprods(&[t.powi(3).into(), yt[0] / t, yt[1] / t], q, cfg)
}

/// Conjugating `T_{q,x_j}` by `W_x` multiplies by `W_x(x) / W_x(.., q x_j, ..)`,
/// which should equal `(1 - t x_j/x_3)/(1 - x_j/x_3) = t^{1/2} v_{j3}`.
/// Same for `W_y` with `(1 - ỹ_j)/(1 - ỹ_j/t)`.
pub fn conjugation_checks(x: [C64; 3], yt: [C64; 2], t: f64, q: f64, cfg: &NumericConfig, tol: f64) -> Report {
    let mut r = Report::new(tol);
    let one = C64::new(1.0, 0.0);
    for j in 0..2 {
        let mut shifted = x;
        shifted[j] *= q;
        let want = (one - x[j] / x[2] * t) / (one - x[j] / x[2]);
        r.push(format!("W_x shift ratio, x{}", j + 1), rel(w_x(x, t, q, cfg) / w_x(shifted, t, q, cfg), want));
        r.push(format!("t^(1/2) v_{}3 factor", j + 1), rel(v(x[j], x[2], t) * t.sqrt(), want));
        let mut ys = yt;
        ys[j] *= q;
        let want = (one - yt[j]) / (one - yt[j] / t);
        r.push(format!("W_y shift ratio, y{}", j + 1), rel(w_y(yt, t, q, cfg) / w_y(ys, t, q, cfg), want));
    }
    r
}

/// `T_y = t^{1/2} (1-ỹ)/(t^{1/2} - t^{-1/2} ỹ) T̃_y`.
pub fn momentum_factor(yt: C64, t: f64) -> C64 {
    let st = t.sqrt();
    (-yt + 1.0) * st / (-yt / st + st)
}

/// Separation variables of a three-particle point seen through the map
/// `ξ = x_3`, `T_{x_j} = t^{1/2} v_{j3} T̃_{x_j}`, `ỹ = t y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedSeparation {
    /// Two-particle roots and momenta.
    pub y: [C64; 2],
    pub ty: [C64; 2],
    /// The same data in three-particle variables.
    pub y_tilde: [C64; 2],
    pub ty_tilde: [C64; 2],
}

fn three(p: &PhasePoint) -> Result<()> {
    if p.n() != 3 {
        return Err(Error::InvalidParameter(format!("three particles expected, got {}", p.n())));
    }
    p.check_distinct()
}

pub fn reduce(p: &PhasePoint, t: f64) -> Result<ReducedSeparation> {
    three(p)?;
    let x3 = p.x[2];
    let tx = [0, 1].map(|j| v(p.x[j], x3, t) * t.sqrt() * p.tx[j]);
    let s = separation_raw([p.x[0], p.x[1]], tx, t, x3)?;
    let y_tilde = s.y.map(|y| y * t);
    let ty_tilde = [0, 1].map(|j| s.ty[j] / momentum_factor(y_tilde[j], t));
    Ok(ReducedSeparation { y: s.y, ty: s.ty, y_tilde, ty_tilde })
}

/// Roots of `(1-u)³ B(u)` for the standard row `α_0 = (0,0,1)` of the
/// three-particle Lax matrix, with the root `u = t³` (where `L` has rank one)
/// divided out. Returns the two remaining roots and the deflation remainder.
pub fn standard_zeros(p: &PhasePoint, t: f64) -> Result<([C64; 2], f64)> {
    three(p)?;
    let tx = p.tx_complex();
    let b = |u: C64| -> C64 {
        let l = lax_raw(&p.x, &tx, t, u);
        let a0 = vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let r1 = row_times(&a0, &l);
        let r2 = row_times(&r1, &l);
        det(&[a0, r1, r2]) * (C64::new(1.0, 0.0) - u).powi(3)
    };
    // cubic coefficients by discrete Fourier transform on a circle
    let (nodes, radius) = (8usize, 0.6);
    let pts: Vec<C64> = (0..nodes).map(|k| C64::from_polar(radius, 2.0 * PI * (k as f64 + 0.25) / nodes as f64)).collect();
    let vals: Vec<C64> = pts.iter().map(|u| b(*u)).collect();
    let coef: Vec<C64> = (0..4)
        .map(|k| pts.iter().zip(&vals).map(|(u, f)| f * u.powi(-k)).sum::<C64>() / nodes as f64)
        .collect();
    // synthetic division by (u - t³)
    let r = t.powi(3);
    let c2 = coef[3];
    let c1 = coef[2] + c2 * r;
    let c0 = coef[1] + c1 * r;
    let rem = coef[0] + c0 * r;
    let scale = coef.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok((quadratic_roots(c2, c1, c0)?, rem.norm() / scale))
}

/// Composed check of the reduction: the mapped two-particle data lies on both
/// spectral curves `det(L^{(3)} - T̃) = det(L̃ - T̃) = 0`, and the zeros of the
/// standard three-particle `B(u)`, pulled back through the map, reproduce the
/// two-particle separation variables.
pub fn reduction_map_check(p: &PhasePoint, t: f64, tol: f64) -> Result<Report> {
    let red = reduce(p, t)?;
    let tx = p.tx_complex();
    let mut r = Report::new(tol);
    let curve = |m: &LaxMatrix, z: C64| {
        let size: f64 = m.entries.iter().flatten().map(|e| e.norm_sqr()).sum::<f64>().sqrt() + z.norm();
        m.shifted_det(z).norm() / size.powi(m.n() as i32)
    };
    for j in 0..2 {
        let l3 = LaxMatrix { u: red.y_tilde[j], entries: lax_raw(&p.x, &tx, t, red.y_tilde[j]) };
        r.push(format!("det(L3 - Ty~{}) = 0", j + 1), curve(&l3, red.ty_tilde[j]));
        r.push(format!("det(L~ - Ty~{}) = 0", j + 1), curve(&l3.truncated(2), red.ty_tilde[j]));
    }
    let (zeros, rem) = standard_zeros(p, t)?;
    r.push("B(t^3) = 0", rem);
    for j in 0..2 {
        let u = *zeros.iter().min_by(|a, b| (**a - red.y_tilde[j]).norm().total_cmp(&(**b - red.y_tilde[j]).norm())).unwrap();
        let l3 = LaxMatrix { u, entries: lax_raw(&p.x, &tx, t, u) };
        let lt = l3.truncated(2);
        let (a, b, c) = (
            C64::new(1.0, 0.0),
            -(lt.entries[0][0] + lt.entries[1][1]),
            lt.entries[0][0] * lt.entries[1][1] - lt.entries[0][1] * lt.entries[1][0],
        );
        let eig = quadratic_roots(a, b, c)?;
        let tt = *eig.iter().min_by(|a, b| l3.shifted_det(**a).norm().total_cmp(&l3.shifted_det(**b).norm())).unwrap();
        r.push(format!("y{} from B(u) zeros", j + 1), rel(u / t, red.y[j]));
        r.push(format!("Ty{} from common eigenvalue", j + 1), rel(tt * momentum_factor(u, t), red.ty[j]));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conjugation_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cfg = NumericConfig::default();
        for _ in 0..5 {
            let p = PhasePoint::random(3, &mut rng);
            let yt = [0, 1].map(|_| C64::new(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8)));
            let x = [p.x[0], p.x[1], p.x[2]];
            conjugation_checks(x, yt, 0.5, 0.25, &cfg, 1e-10).ensure().unwrap();
        }
    }

    #[test]
    fn reversed_orientation_fails() {
        let cfg = NumericConfig::default();
        let p = PhasePoint::from_angles(&[0.3, 1.9, 4.0], vec![1.0; 3]).unwrap();
        let x = [p.x[0], p.x[1], p.x[2]];
        let mut s = x;
        s[0] *= 0.25;
        let want = (C64::new(1.0, 0.0) - x[0] / x[2] * 0.5) / (C64::new(1.0, 0.0) - x[0] / x[2]);
        assert!(rel(w_x(s, 0.5, 0.25, &cfg) / w_x(x, 0.5, 0.25, &cfg), want) > 1e-3);
    }

    #[test]
    fn reduction_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..10 {
            let p = PhasePoint::random(3, &mut rng);
            reduction_map_check(&p, 0.5, 1e-8).unwrap().ensure().unwrap();
        }
    }
}
