use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsov::numkernel::{self, NumericConfig};
use qsov::ruijsenaars::{self as rs, PhasePoint};
use qsov::scalar::{frac, int};
use qsov::sov::{self, BasisKind, TransitionKind};
use qsov::verify::{run_suite, ExactGrid, Suite, VerifyConfig};
use qsov::{macdonald, Laurent1, Laurent2, Pair, QContext};

#[test]
fn factorization_at_small_parameters() {
    // s = 1/2, g = 1: q = t = 1/4, so f_(0,1) = 1 + y/t and c = t/(1+t)
    let ctx = QContext::from_parts(1, 2, 1, 1, 1).unwrap();
    let lam = Pair::new(0, 1).unwrap();
    let (c, f) = sov::separate(lam, &ctx).unwrap().factored.unwrap();
    assert_eq!(c, frac(1, 5));
    assert_eq!(f.poly, Laurent1::from_terms([(0, int(1)), (1, int(4))]));
}

#[test]
fn macdonald_to_separated_and_back() {
    let ctx = QContext::from_parts(3, 5, 2, 3, 2).unwrap();
    let lam = Pair::new(-2, 3).unwrap();
    let p = macdonald::macdonald_poly(lam, &ctx).poly;
    let image = sov::apply_m(&p, &ctx).unwrap();
    assert_eq!(image, sov::apply_m_via_r(&p, &ctx).unwrap());
    let f = macdonald::separated_poly(lam, &ctx).unwrap().poly;
    assert_eq!(image, Laurent2::tensor(&f, &f).scale(&sov::normalization_c(lam, &ctx)));
    assert_eq!(sov::apply_m_inverse(&image, &ctx).unwrap(), p);
}

#[test]
fn transition_rows_reassemble() {
    let ctx = QContext::from_parts(1, 3, 3, 2, 1).unwrap();
    let lam = Pair::new(-1, 2).unwrap();
    let p = macdonald::macdonald_poly(lam, &ctx).poly;
    for (kind, basis) in [(TransitionKind::Pi, BasisKind::P), (TransitionKind::Rho, BasisKind::R)] {
        let mut sum = Laurent2::zero();
        for (nu, c) in sov::transition_row(lam, kind, &ctx).entries {
            sum.add_scaled(&sov::basis(basis, nu, &ctx), &c, (0, 0));
        }
        assert_eq!(sum, p, "{kind:?}");
    }
}

#[test]
fn integral_operator_matches_algebra() {
    let ctx = QContext::from_parts(1, 2, 1, 1, 1).unwrap();
    let cfg = NumericConfig::default();
    for nu in [Pair::new(0, 0).unwrap(), Pair::new(0, 2).unwrap()] {
        let c = numkernel::mgg_versus_exact(nu, &ctx, 10, 3, &cfg).unwrap();
        assert!(c.residual < 1e-8, "{nu}: {}", c.residual);
    }
}

#[test]
fn classical_separation_constraint() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (t, xi) = (0.5, C64::new(1.3, 0.0));
    for _ in 0..5 {
        let p = PhasePoint::random(2, &mut rng);
        let s = rs::separation_variables(&p, t, xi).unwrap();
        let lhs = s.y[0] * s.y[1] * xi * xi;
        let rhs = p.x[0] * p.x[1] * t;
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn suites_pass_on_a_small_grid() {
    let cfg = VerifyConfig {
        grid: ExactGrid { s: vec![frac(1, 2)], g: vec![1, 2], xi: vec![frac(3, 2)], max_width: 2, bound: 2 },
        phase_points: 3,
        ..VerifyConfig::default()
    };
    for suite in Suite::EACH {
        let r = run_suite(suite, &cfg).unwrap();
        let failed: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        assert!(failed.is_empty(), "{suite}: {failed:?}");
        assert!(!r.cases.is_empty());
    }
}
