use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Case, VerifyConfig};
use crate::numkernel::{self as nk, AwParams, RIndex};
use crate::pair::Pair;
use crate::ruijsenaars::{self as ru, PhasePoint};
use crate::scalar::QContext;

/// Numeric grid of the ultraspherical and fractional checks.
pub const KERNEL_Q: f64 = 0.25;
pub const KERNEL_BETA: f64 = 0.5;
/// Coupling of the classical checks.
pub const CLASSICAL_T: f64 = 0.5;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    C64::from_polar(radius * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI))
}

/// `count` Askey–Wilson parameter sets drawn in the disk of radius 0.6.
pub fn aw_draws(seed: u64, count: usize) -> Vec<AwParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5);
    (0..count)
        .map(|_| {
            let [a, b, cc, d] = [(); 4].map(|_| disk_point(&mut rng, 0.6));
            AwParams::new(a, b, cc, d).expect("inside the unit disk")
        })
        .collect()
}

/// `(θ, φ)` samples away from the ends of `(0, π)`.
pub fn angle_samples(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a);
    (0..count).map(|_| (rng.random_range(0.2..PI - 0.2), rng.random_range(0.2..PI - 0.2))).collect()
}

pub fn numkernel_cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = &cfg.numeric;
    let mut jobs: Vec<Box<dyn Fn() -> Case + Sync + '_>> = Vec::new();

    for q in [0.2f64, 0.4] {
        for (k, p) in aw_draws(cfg.seed ^ q.to_bits(), 50).into_iter().enumerate() {
            jobs.push(Box::new(move || {
                Case::comparison(format!("askey-wilson/q={q}/{k}"), "Askey-Wilson integral equals its closed form", nk::aw_integral(&p, q, n))
            }));
        }
    }
    jobs.push(Box::new(move || {
        let p = AwParams::new(c(0.6, 0.0), c(-0.5, 0.1), c(0.0, 0.55), c(0.4, -0.3)).unwrap();
        let r = nk::aw_convergence(&p, 0.4, &[8, 16, 32, 64, 128], 1e-13, n);
        Case::from_result("askey-wilson-convergence", "doubling the nodes cuts the quadrature error at least fourfold", r.map(|e| e[e.len() - 1]))
    }));
    for m in 0..=4 {
        for k in 0..=4 {
            jobs.push(Box::new(move || {
                Case::comparison(
                    format!("orthogonality/{m},{k}"),
                    "orthogonality of C_m and C_n against the Askey-Wilson weight",
                    nk::orthogonality_check(m, k, KERNEL_BETA, KERNEL_Q, n),
                )
            }));
        }
    }
    for deg in 0..=4 {
        jobs.push(Box::new(move || {
            Case::comparison(
                format!("q-difference/{deg}"),
                "C_n satisfies its second-order q-difference equation",
                nk::qdiff_equation_check(deg, &[0.3, 0.8, 1.4, 2.2], KERNEL_BETA, KERNEL_Q, n),
            )
        }));
    }
    let angles = angle_samples(cfg.seed, 5);
    for (i, &(theta, phi)) in angles.iter().enumerate() {
        for deg in 0..=5 {
            jobs.push(Box::new(move || {
                Case::comparison(
                    format!("product-formula/n={deg}/{i}"),
                    "product formula C_n(cos th) C_n(cos ph) as a kernel integral",
                    nk::product_formula_check(deg, theta, phi, KERNEL_BETA, KERNEL_Q, n),
                )
            }));
        }
        jobs.push(Box::new(move || {
            Case::comparison(format!("kernel-mass/{i}"), "the product-formula kernel integrates to one", nk::kernel_mass_check(theta, phi, KERNEL_BETA, KERNEL_Q, n))
        }));
        jobs.push(Box::new(move || {
            Case::comparison(
                format!("kernel-series/{i}"),
                "40-term series of the kernel matches its closed form",
                nk::kernel_series_check(theta, phi, 0.5 * (theta + phi), 40, KERNEL_BETA, KERNEL_Q, n),
            )
        }));
    }
    for lambda in [1.0, 2.0] {
        jobs.push(Box::new(move || {
            let theta = 0.4f64.acos();
            let r = nk::gegenbauer_limit(3, lambda, theta, &[1e-2, 1e-3, 1e-4]);
            Case::from_result(format!("gegenbauer-limit/lambda={lambda}"), "C_n(x; q^lambda|q) tends to the Gegenbauer polynomial as q -> 1", r.map(|e| e[e.len() - 1]))
        }));
    }
    for idx in RIndex::up_to(3) {
        jobs.push(Box::new(move || {
            let (r, y) = (c(0.9, 0.2), c(0.3, 0.8));
            Case::comparison(
                format!("m-ab-r-polynomial/{},{},{},{}", idx.j1, idx.j2, idx.k1, idx.k2),
                "integral M_ab acts on R-polynomials by the stated closed form",
                nk::r_polynomial_check(idx, 0.7, 1.3, r, y, KERNEL_Q, n),
            )
        }));
    }
    let ctx = QContext::from_parts(1, 2, 1, 1, 1).expect("valid context");
    for nu in Pair::grid(2, 2) {
        let ctx = ctx.clone();
        jobs.push(Box::new(move || {
            Case::comparison(
                format!("m-gg-vs-exact/{nu}"),
                "integral M_gg on p_nu equals mu_nu p~_nu",
                nk::mgg_versus_exact(nu, &ctx, 10, cfg.seed, n),
            )
        }));
    }
    let (r, y) = (c(0.95, 0.1), C64::from_polar(1.0, 0.4));
    for (a, b) in [(0.5, 0.5), (0.3, 0.7), (1.0, 1.0)] {
        jobs.push(Box::new(move || {
            let f = |x: C64| x + x.inv() + (x * x + (x * x).inv()) * 0.3;
            Case::comparison(format!("group-property/{a},{b}"), "I^a I^b = I^(a+b)", nk::group_property_check(f, a, b, r, y, KERNEL_Q, 256, n))
        }));
    }
    for (a, nu) in [(0.5, 0.3), (1.0, 0.0), (0.7, 1.2)] {
        jobs.push(Box::new(move || {
            Case::comparison(format!("power-action/{a},{nu}"), "I^a psi^nu = psi^(nu+a)", nk::power_action_check(a, nu, r, y, KERNEL_Q, n))
        }));
    }
    for g in 1..=3 {
        jobs.push(Box::new(move || {
            let f = |x: C64| x.powi(3) + x.inv() * 2.0 + (x * x + 3.0).inv();
            Case::comparison(
                format!("negative-power/g={g}"),
                "I^-g equals the g-fold iterate of I^-1",
                nk::negative_power_check(&f, g, c(0.4, 0.3), c(0.6, 0.5), 0.3, n),
            )
        }));
    }
    jobs.push(Box::new(move || {
        let r = nk::i_minus_one_limit(|y| y * y, |y| y * 2.0, C64::from_polar(1.0, 0.7), c(0.5, 0.0), &[1e-2, 1e-3, 1e-4], n);
        Case::from_result("i-minus-one-limit", "I^-1 tends to -(y^2/(1-y^2)) d/dy as q -> 1", r.map(|e| e[e.len() - 1]))
    }));

    jobs.par_iter().map(|j| j()).collect()
}

/// Phase points for the classical checks: `count` two-particle and `count`
/// three-particle points.
pub fn phase_points(seed: u64, count: usize) -> (Vec<PhasePoint>, Vec<PhasePoint>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc1a5);
    let two = (0..count).map(|_| PhasePoint::random(2, &mut rng)).collect();
    let three = (0..count).map(|_| PhasePoint::random(3, &mut rng)).collect();
    (two, three)
}

pub const XI_SAMPLES: [C64; 2] = [C64::new(0.7, 0.0), C64::new(1.3, 0.2)];

fn worst<I: IntoIterator<Item = crate::error::Result<f64>>>(it: I) -> crate::error::Result<f64> {
    let mut m = 0.0f64;
    for r in it {
        let r = r?;
        m = if r.is_nan() { f64::NAN } else { m.max(r) };
    }
    Ok(m)
}

fn report_case(id: String, identity: &str, r: crate::error::Result<ru::Report>) -> Case {
    match r {
        Ok(rep) => {
            let tol = rep.tol;
            let worst = rep.entries.iter().max_by(|a, b| a.1.total_cmp(&b.1)).cloned();
            let mut case = Case::residual(id, identity, rep.max_residual(), tol);
            if !case.passed() {
                if let Some((name, v)) = worst {
                    case.witness = Some(format!("{name}: {v:e} vs tolerance {tol:e}"));
                }
            }
            case
        }
        Err(e) => Case::from_result(id, identity, Err(e)),
    }
}

pub fn ruijsenaars_cases(cfg: &VerifyConfig) -> Vec<Case> {
    let t = CLASSICAL_T;
    let (two, three) = phase_points(cfg.seed, cfg.phase_points);
    let nc = &cfg.numeric;
    let mut jobs: Vec<Box<dyn Fn() -> Case + Sync + '_>> = Vec::new();
    for (i, p) in two.iter().enumerate() {
        let seed = cfg.seed.wrapping_add(i as u64);
        jobs.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<(C64, C64)> = (0..5).map(|_| (disk_point(&mut rng, 1.5), disk_point(&mut rng, 2.0))).collect();
            let r = worst(samples.iter().flat_map(|(u, z)| [ru::char_poly_residual(p, t, *u, *z), ru::char_poly_residual_n2(p, t, *u, *z)]));
            Case::from_result(format!("char-poly/n=2/{i}"), "t(1-u) det(z - L(u)) = t(1-u) z^2 - t^(1/2)(t-u) H_1 z + (t^2-u) H_2", r.and_then(|v| tol_check(v, 1e-10, "characteristic polynomial")))
        }));
        jobs.push(Box::new(move || {
            let r = ru::hamiltonians(p, t).and_then(|h| {
                let d = ru::hamiltonians_n2(p, t)?;
                Ok((h[0] - d[0]).norm().max((h[1] - d[1]).norm()))
            });
            Case::from_result(format!("integrals-direct/{i}"), "subset-product integrals equal the two-particle formulas", r.and_then(|v| tol_check(v, 1e-10, "integrals")))
        }));
        jobs.push(Box::new(move || {
            let r = ru::involutivity_residual(p, t, 1e-5);
            Case::from_result(format!("involutivity/{i}"), "{H_1, H_2} = 0", r.and_then(|v| tol_check(v, 1e-6, "{H1,H2}")))
        }));
        for (k, xi) in XI_SAMPLES.into_iter().enumerate() {
            jobs.push(Box::new(move || {
                report_case(
                    format!("separation/xi{k}/{i}"),
                    "y1 y2 xi^2 = t x1 x2, T_y = T_x1 a_1(y) = T_x2 a_2(y), separation equation and B(y) = 0 at both roots",
                    ru::separation_checks(p, t, xi, 1e-10),
                )
            }));
            jobs.push(Box::new(move || {
                let us = spectral_samples(seed ^ 0xabc);
                let r = worst(us.iter().map(|u| ru::a_identity_residual(p, t, xi, *u)));
                Case::from_result(
                    format!("a-identity/xi{k}/{i}"),
                    "t(1-u) a1 a2 - t^(1/2)(t-u)[v12 a2 + v21 a1] + (t^2-u) = 0",
                    r.and_then(|v| tol_check(v, 1e-10, "a_1, a_2 identity")),
                )
            }));
            jobs.push(Box::new(move || {
                let us = spectral_samples(seed ^ 0xabd);
                let r = worst(us.iter().map(|u| ru::a_ratio_invariance_residual(p, t, xi, *u)));
                Case::from_result(
                    format!("a-ratio-invariance/xi{k}/{i}"),
                    "a1/a2 is invariant under u -> t x1 x2/(u xi^2)",
                    r.and_then(|v| tol_check(v, 1e-12, "a_1/a_2 invariance")),
                )
            }));
            jobs.push(Box::new(move || {
                let id = format!("canonicity/xi{k}/{i}");
                let identity = "(T_y, y) have Weyl brackets: {y1,y2} = {Ty1,Ty2} = 0, {Ty_j, y_k} = -i Ty_j y_k delta_jk; residual halves or better when the step halves";
                match ru::canonicity_check(p, t, xi, 1e-6, 1e-5) {
                    Ok(rep) => {
                        let res = rep.report.max_residual();
                        match rep.clone().ensure() {
                            Ok(_) => Case::residual(id, identity, res, 1e-5),
                            Err(e) => {
                                let mut c = Case::residual(id, identity, res, 1e-5);
                                c.status = super::Status::Fail;
                                c.witness = Some(e.to_string());
                                c
                            }
                        }
                    }
                    Err(e) => Case::from_result(id, identity, Err(e)),
                }
            }));
            jobs.push(Box::new(move || {
                let r = ru::generating_function_check(p, t, xi, 1e-5, 1e-5).map(|g| g.report);
                report_case(
                    format!("generating-function/xi{k}/{i}"),
                    "x+ dF/dx+ = i ln(Tx+/Ty+), x- dF/dx- = i ln Tx-, y- dF/dy- = -i ln Ty-, y+ dF/dy+ = 0",
                    r,
                )
            }));
        }
    }
    for (i, p) in three.iter().enumerate() {
        let seed = cfg.seed.wrapping_add(1000 + i as u64);
        jobs.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<(C64, C64)> = (0..5).map(|_| (disk_point(&mut rng, 1.5), disk_point(&mut rng, 2.0))).collect();
            let r = worst(samples.iter().map(|(u, z)| ru::char_poly_residual(p, t, *u, *z)));
            Case::from_result(format!("char-poly/n=3/{i}"), "characteristic polynomial of L(u) generates H_1, H_2, H_3", r.and_then(|v| tol_check(v, 1e-10, "characteristic polynomial")))
        }));
        jobs.push(Box::new(move || {
            let mut eq = p.clone();
            eq.tx = vec![p.tx[0]; 3];
            let r = ru::hamiltonians(&eq, t).map(|h| {
                (1..=3).map(|k| (h[k - 1] - ru::hamiltonian_equal_momenta(3, k, eq.tx[0], t)).norm()).fold(0.0, f64::max)
            });
            Case::from_result(format!("equal-momenta/{i}"), "with equal momenta T, H_i = T^i t^(-i(n-i)/2) [n, i]_t", r.and_then(|v| tol_check(v, 1e-10, "equal-momenta integrals")))
        }));
        jobs.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdef);
            let yt = [disk_point(&mut rng, 0.8), disk_point(&mut rng, 0.8)];
            let x = [p.x[0], p.x[1], p.x[2]];
            report_case(
                format!("conjugation/{i}"),
                "W_x T_{q,x_j} W_x^-1 = (1 - t x_j/x3)/(1 - x_j/x3) T_{q,x_j}, W_y T_{q,y_j} W_y^-1 = (1 - y_j)/(1 - y_j/t) T_{q,y_j}",
                Ok(ru::conjugation_checks(x, yt, t, KERNEL_Q, nc, 1e-10)),
            )
        }));
        jobs.push(Box::new(move || {
            report_case(
                format!("reduction/{i}"),
                "three-particle separation variables pulled back by y = y~/t, T_y = t^(1/2)(1-y~)/(t^(1/2) - t^(-1/2) y~) T~_y reproduce the two-particle ones",
                ru::reduction_map_check(p, t, 1e-8),
            )
        }));
    }
    jobs.par_iter().map(|j| j()).collect()
}

fn spectral_samples(seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5).map(|_| disk_point(&mut rng, 1.5)).collect()
}

fn tol_check(v: f64, tol: f64, what: &str) -> crate::error::Result<f64> {
    if v < tol {
        Ok(v)
    } else {
        Err(crate::error::Error::ToleranceExceeded { what: what.into(), value: v, tol })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        assert_eq!(aw_draws(3, 4), aw_draws(3, 4));
        assert_eq!(phase_points(9, 2), phase_points(9, 2));
        for p in aw_draws(0, 50) {
            assert!(p.as_array().iter().all(|z| z.norm() < 0.6));
        }
    }

    #[test]
    fn default_config_is_valid() {
        crate::numkernel::NumericConfig::default().validate().unwrap();
    }
}
