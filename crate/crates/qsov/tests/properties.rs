use num_complex::Complex64 as C64;
use proptest::prelude::*;

use qsov::macdonald;
use qsov::ruijsenaars::dilog;
use qsov::scalar::{frac, parse, qpoch, qpochhammer};
use qsov::sov::{self, BasisKind, Index};
use qsov::{Laurent1, Laurent2, Pair, QContext, Q};

fn context() -> impl Strategy<Value = QContext> {
    (prop::sample::select(vec![(1, 2), (1, 3), (3, 5), (2, 7)]), 1u32..=3, prop::sample::select(vec![(1, 1), (2, 1), (3, 2), (-1, 3)]))
        .prop_map(|((sn, sd), g, (xn, xd))| QContext::from_parts(sn, sd, g, xn, xd).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

/// Symmetric Laurent polynomial built from `m_{(a,b)}` with `|a|, |b| <= 3`.
fn symmetric() -> impl Strategy<Value = Laurent2> {
    prop::collection::vec((-3i64..=3, -3i64..=3, rational()), 1..5).prop_map(|terms| {
        let mut p = Laurent2::zero();
        for (a, b, c) in terms {
            p.add_term((a, b), c.clone());
            if a != b {
                p.add_term((b, a), c);
            }
        }
        p
    })
}

fn laurent1() -> impl Strategy<Value = Laurent1> {
    prop::collection::vec((-4i64..=4, rational()), 0..5).prop_map(Laurent1::from_terms)
}

fn pair() -> impl Strategy<Value = Pair> {
    (-3i64..=3, 0i64..=4).prop_map(|(a, w)| Pair::new(a, a + w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn laurent_ring_laws(a in laurent1(), b in laurent1(), c in laurent1()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent1(), b in laurent1()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn qpochhammer_splits(a in rational(), m in -4i64..=4, n in -4i64..=4) {
        let q = frac(1, 3);
        if let (Ok(whole), Ok(left)) = (qpochhammer(&a, &q, m + n), qpochhammer(&a, &q, m)) {
            let shifted = &a * qsov::scalar::pow(&q, m);
            if let Ok(right) = qpochhammer(&shifted, &q, n) {
                prop_assert_eq!(whole, left * right);
            }
        }
    }

    #[test]
    fn pair_order(lam in pair()) {
        let below = lam.below();
        let w = lam.width() as usize;
        prop_assert_eq!(below.len(), (w + 1) * (w + 2) / 2);
        prop_assert!(below.iter().all(|nu| nu.precedes(&lam)));
        prop_assert!(lam.bar().bar() == lam && lam.precedes(&lam));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_expansion_is_bijective(p in symmetric(), ctx in context()) {
        for kind in BasisKind::ALL {
            let e = sov::expand_in_basis(&p, kind, &ctx).unwrap();
            prop_assert_eq!(e.reassemble(&ctx), p.clone(), "{:?}", kind);
        }
    }

    #[test]
    fn m_round_trips(p in symmetric(), ctx in context()) {
        let image = sov::apply_m(&p, &ctx).unwrap();
        prop_assert_eq!(sov::apply_m_inverse(&image, &ctx).unwrap(), p.clone());
        prop_assert_eq!(sov::apply_m(&sov::apply_m_inverse(&p, &ctx).unwrap(), &ctx).unwrap(), p.clone());
        prop_assert_eq!(sov::apply_m_inverse_qdiff(&image, &ctx).unwrap(), p);
    }

    #[test]
    fn m_is_linear(a in symmetric(), b in symmetric(), c in rational(), ctx in context()) {
        let lhs = sov::apply_m(&(&a + &b.scale(&c)), &ctx).unwrap();
        let rhs = &sov::apply_m(&a, &ctx).unwrap() + &sov::apply_m(&b, &ctx).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn m_intertwines(p in symmetric(), ctx in context()) {
        let mp = sov::apply_m(&p, &ctx).unwrap();
        prop_assert_eq!(sov::apply_m(&sov::involution_u(&p, &ctx), &ctx).unwrap(), sov::involution_v(&mp, &ctx));
        for j in [Index::One, Index::Two] {
            let lhs = sov::apply_m(&sov::apply_n(&p, j, &ctx).unwrap(), &ctx).unwrap();
            prop_assert_eq!(lhs, sov::apply_nt(&mp, j, &ctx).unwrap());
            let lhs = sov::apply_m(&sov::apply_q(&p, j, &ctx).unwrap(), &ctx).unwrap();
            prop_assert_eq!(lhs, sov::apply_qt(&mp, j, &ctx).unwrap());
        }
    }

    #[test]
    fn hamiltonians_commute(p in symmetric(), ctx in context()) {
        let h1h2 = macdonald::apply_h1(&macdonald::apply_h2(&p, &ctx).unwrap(), &ctx).unwrap();
        let h2h1 = macdonald::apply_h2(&macdonald::apply_h1(&p, &ctx).unwrap(), &ctx).unwrap();
        prop_assert_eq!(h1h2, h2h1);
        prop_assert!(macdonald::apply_h1(&p, &ctx).unwrap().is_symmetric());
    }

    #[test]
    fn factorization_holds(lam in pair(), ctx in context()) {
        let image = sov::separate(lam, &ctx).unwrap();
        let (c, f) = image.factored.unwrap();
        prop_assert_eq!(c, sov::normalization_c(lam, &ctx));
        prop_assert_eq!(f.poly.min_exp(), Some(lam.l1));
        prop_assert_eq!(f.poly.max_exp(), Some(lam.l2));
    }
}

proptest! {
    #[test]
    fn dilog_reflection(re in -0.9f64..0.9, im in -0.9f64..0.9) {
        let z = C64::new(re, im);
        prop_assume!((z.norm() > 0.05) && ((C64::new(1.0, 0.0) - z).norm() > 0.05));
        let one = C64::new(1.0, 0.0);
        let lhs = dilog(z) + dilog(one - z);
        let rhs = C64::new(std::f64::consts::PI.powi(2) / 6.0, 0.0) - z.ln() * (one - z).ln();
        prop_assert!((lhs - rhs).norm() < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn finite_qpoch_is_a_product(a in rational(), n in 0usize..6) {
        let q = frac(2, 5);
        let mut want = Q::from_integer(1.into());
        let mut aq = a.clone();
        for _ in 0..n {
            want *= Q::from_integer(1.into()) - &aq;
            aq *= &q;
        }
        prop_assert_eq!(qpoch(&a, &q, n), want);
    }
}
