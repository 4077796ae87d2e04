use std::collections::BTreeMap;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ctx_label, random_symmetric, Case, VerifyConfig};
use crate::error::{Error, Result};
use crate::laurent::Laurent2;
use crate::macdonald::{self, Spectrum};
use crate::pair::Pair;
use crate::qpoly;
use crate::scalar::{frac, int, pow, qpoch, qpochhammer, QContext, Q};
use crate::sov::{self, BasisKind, Index, TransitionKind};

type Check<'a> = (&'static str, &'static str, Box<dyn Fn(&QContext) -> Result<()> + Sync + 'a>);

/// Runs every check on every context in parallel; cases come out ordered by
/// check, then context.
fn run_checks(checks: Vec<Check<'_>>, ctxs: &[QContext]) -> Vec<Case> {
    let jobs: Vec<(usize, usize)> = (0..checks.len()).flat_map(|i| (0..ctxs.len()).map(move |j| (i, j))).collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let (name, identity, f) = &checks[i];
            Case::exact(format!("{name}/{}", ctx_label(&ctxs[j])), identity, f(&ctxs[j]))
        })
        .collect()
}

fn ensure_eq<T: PartialEq>(a: &T, b: &T, what: impl FnOnce() -> String) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::IdentityViolation(what()))
    }
}

fn for_pairs(pairs: &[Pair], mut f: impl FnMut(Pair) -> Result<()>) -> Result<()> {
    pairs.iter().try_for_each(|lam| f(*lam))
}

/// Deterministic per-context generator, so results do not depend on scheduling.
fn ctx_rng(seed: u64, ctx: &QContext, salt: u64) -> ChaCha8Rng {
    let mut h = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in ctx_label(ctx).bytes() {
        h = h.rotate_left(7) ^ u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn random_polys(cfg: &VerifyConfig, ctx: &QContext, salt: u64) -> Vec<Laurent2> {
    let mut rng = ctx_rng(cfg.seed, ctx, salt);
    (0..cfg.random_polys).map(|_| random_symmetric(&mut rng, 3, 4)).collect()
}

const MAX_N: usize = 8;

pub fn qpoly_cases(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let ctxs = cfg.grid.contexts_without_xi()?;
    let checks: Vec<Check> = vec![
        ("cq-sum-vs-recurrence", "C_n(x; beta|q): explicit sum equals three-term recurrence, beta in {t, q}, n <= 8", Box::new(|c| {
            for beta in [c.t(), c.q()] {
                for n in 0..=MAX_N {
                    let (a, b) = (qpoly::cq_sum(n, beta, c.q()), qpoly::cq_recurrence(n, beta, c.q()));
                    ensure_eq(&a, &b, || format!("C_{n} with beta = {beta}"))?;
                }
            }
            Ok(())
        })),
        ("cq-chebyshev", "C_n(x; q|q) has all coefficients 1 (Chebyshev U_n), n <= 8", Box::new(|c| {
            for n in 0..=MAX_N {
                let p = qpoly::cq_sum(n, c.q(), c.q());
                let want = crate::laurent::Laurent1::from_terms((0..=n as i64).map(|k| (n as i64 - 2 * k, Q::one())));
                ensure_eq(&p, &want, || format!("C_{n}(x; q|q) = {p:?}"))?;
            }
            Ok(())
        })),
        ("cq-reflexive", "C_n coefficients are symmetric under w -> 1/w", Box::new(|c| {
            for n in 0..=MAX_N {
                if !qpoly::cq_sum(n, c.t(), c.q()).is_reflexive() {
                    return Err(Error::IdentityViolation(format!("C_{n} is not reflexive")));
                }
            }
            Ok(())
        })),
        ("cq-leading", "leading coefficient of C_n is (beta;q)_n/(q;q)_n", Box::new(|c| {
            for n in 0..=MAX_N {
                let lead = qpoly::cq_sum(n, c.t(), c.q()).coeff(n as i64);
                let want = qpoch(c.t(), c.q(), n) / qpoch(c.q(), c.q(), n);
                ensure_eq(&lead, &want, || format!("leading coefficient of C_{n} is {lead}"))?;
            }
            Ok(())
        })),
        ("cq-generating-function", "generating-function coefficients of z^n equal C_n, n <= 6", Box::new(|c| {
            qpoly::generating_function_check(6, c.t(), c.q()).map(|_| ())
        })),
        ("qpoch-additivity", "(a;q)_{m+n} = (a;q)_m (aq^m;q)_n for m, n in [-4, 4]", Box::new(|c| {
            for a in [c.t().clone(), frac(3, 7), int(-2)] {
                for m in -4..=4i64 {
                    for n in -4..=4i64 {
                        let lhs = qpochhammer(&a, c.q(), m + n);
                        let rhs = qpochhammer(&a, c.q(), m)
                            .and_then(|x| qpochhammer(&(&a * pow(c.q(), m)), c.q(), n).map(|y| x * y));
                        match (lhs, rhs) {
                            (Ok(l), Ok(r)) => ensure_eq(&l, &r, || format!("a={a}, m={m}, n={n}"))?,
                            (Err(Error::Pole(_)), _) | (_, Err(Error::Pole(_))) => {}
                            (Err(e), _) | (_, Err(e)) => return Err(e),
                        }
                    }
                }
            }
            Ok(())
        })),
        ("exact-division", "(p d) / d = p for random Laurent polynomials", Box::new(|c| {
            let mut rng = ctx_rng(cfg.seed, c, 1);
            for _ in 0..4 {
                let p = random_symmetric(&mut rng, 3, 3);
                let d = &random_symmetric(&mut rng, 2, 2) + &Laurent2::one();
                if d.is_zero() {
                    continue;
                }
                let back = (&p * &d).divide_exact(&d)?;
                ensure_eq(&back, &p, || "exact division did not return the factor".into())?;
            }
            Ok(())
        })),
        ("qshift-homomorphism", "q-shift of a product is the product of q-shifts", Box::new(|c| {
            let mut rng = ctx_rng(cfg.seed, c, 2);
            let one = Q::one();
            for _ in 0..4 {
                let (a, b) = (random_symmetric(&mut rng, 3, 3), random_symmetric(&mut rng, 3, 3));
                let lhs = (&a * &b).scale_vars(c.q(), &one);
                let rhs = &a.scale_vars(c.q(), &one) * &b.scale_vars(c.q(), &one);
                ensure_eq(&lhs, &rhs, || "q-shift is not multiplicative".into())?;
            }
            Ok(())
        })),
    ];
    Ok(run_checks(checks, &ctxs))
}

pub fn macdonald_cases(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let ctxs = cfg.grid.contexts_without_xi()?;
    let pairs = cfg.grid.pairs();
    let pairs = &pairs;
    let checks: Vec<Check> = vec![
        ("eigenvalues", "H_1 P_lambda = h_1 P_lambda and H_2 P_lambda = h_2 P_lambda", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let p = macdonald::macdonald_poly(lam, c).poly;
                let s = Spectrum::of(lam, c);
                ensure_eq(&macdonald::apply_h1(&p, c)?, &p.scale(&s.h1), || format!("H_1 P_{lam}"))?;
                ensure_eq(&macdonald::apply_h2(&p, c)?, &p.scale(&s.h2), || format!("H_2 P_{lam}"))
            })
        })),
        ("h1-h2-commute", "H_1 H_2 = H_2 H_1 on random symmetric polynomials", Box::new(|c| {
            for p in random_polys(cfg, c, 10) {
                let a = macdonald::apply_h1(&macdonald::apply_h2(&p, c)?, c)?;
                let b = macdonald::apply_h2(&macdonald::apply_h1(&p, c)?, c)?;
                ensure_eq(&a, &b, || "H_1 and H_2 do not commute".into())?;
            }
            Ok(())
        })),
        ("separated-euler", "f_lambda from the chi recursion equals its Euler-transformed form", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                ensure_eq(&macdonald::separated_poly(lam, c)?, &macdonald::separated_poly_alt(lam, c)?, || format!("f_{lam}"))
            })
        })),
        ("separation-equation", "f_lambda solves the separation equation with spectrum h_1, h_2", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let f = macdonald::separated_poly(lam, c)?;
                macdonald::check_separation_equation(&f, &Spectrum::of(lam, c), c).map(|_| ())
            })
        })),
        ("separation-uniqueness", "f_lambda is the only polynomial solution supported on [lambda_1, lambda_2]", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let d = macdonald::separation_solution_dimension(lam, c);
                ensure_eq(&d, &1, || format!("solution space for {lam} has dimension {d}"))
            })
        })),
        ("separated-from-cq", "f_lambda is y^{|lambda|/2} t^{-d/2} (q;q)_d/(t;q)_d C_d under y = t w^{-2}", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let f = macdonald::separated_poly(lam, c)?.poly;
                ensure_eq(&macdonald::separated_from_ultraspherical(lam, c), &f, || format!("f_{lam}"))
            })
        })),
        ("macdonald-from-cq", "P_lambda = x_+^{|lambda|} (q;q)_d/(t;q)_d C_d in x_- (factorized form)", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let p = macdonald::macdonald_poly(lam, c).poly;
                ensure_eq(&macdonald::macdonald_from_ultraspherical(lam, c), &p, || format!("P_{lam}"))
            })
        })),
    ];
    Ok(run_checks(checks, &ctxs))
}

pub fn sov_cases(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let ctxs = cfg.grid.contexts()?;
    let pairs = cfg.grid.pairs();
    let pairs = &pairs;
    let idx = [Index::One, Index::Two];
    let checks: Vec<Check> = vec![
        ("factorization", "M P_lambda = c_lambda f_lambda(y1) f_lambda(y2)", Box::new(move |c| {
            for_pairs(pairs, |lam| sov::separate(lam, c).map(|_| ()))
        })),
        ("m-two-bases", "M through the p basis equals M through the r basis", Box::new(move |c| {
            let mut inputs = random_polys(cfg, c, 20);
            inputs.extend(pairs.iter().map(|lam| macdonald::macdonald_poly(*lam, c).poly));
            for p in inputs {
                ensure_eq(&sov::apply_m(&p, c)?, &sov::apply_m_via_r(&p, c)?, || "M via p differs from M via r".into())?;
            }
            Ok(())
        })),
        ("m-inverse-left", "M^{-1} M = id on random symmetric polynomials", Box::new(|c| {
            for p in random_polys(cfg, c, 21) {
                ensure_eq(&sov::apply_m_inverse(&sov::apply_m(&p, c)?, c)?, &p, || "M^{-1} M p != p".into())?;
            }
            Ok(())
        })),
        ("m-inverse-right", "M M^{-1} = id on random symmetric polynomials", Box::new(|c| {
            for f in random_polys(cfg, c, 22) {
                ensure_eq(&sov::apply_m(&sov::apply_m_inverse(&f, c)?, c)?, &f, || "M M^{-1} f != f".into())?;
            }
            Ok(())
        })),
        ("m-inverse-qdiff", "difference-operator M^{-1} equals the basis realization", Box::new(|c| {
            for f in random_polys(cfg, c, 23) {
                ensure_eq(&sov::apply_m_inverse_qdiff(&f, c)?, &sov::apply_m_inverse(&f, c)?, || "two realizations of M^{-1} differ".into())?;
            }
            Ok(())
        })),
        ("intertwine-u-v", "M U = V M", Box::new(|c| {
            for p in random_polys(cfg, c, 24) {
                let a = sov::apply_m(&sov::involution_u(&p, c), c)?;
                let b = sov::involution_v(&sov::apply_m(&p, c)?, c);
                ensure_eq(&a, &b, || "M U p != V M p".into())?;
            }
            Ok(())
        })),
        ("intertwine-n-q", "M N_j = N~_j M and M Q_j = Q~_j M, j = 1, 2", Box::new(move |c| {
            for p in random_polys(cfg, c, 25) {
                let mp = sov::apply_m(&p, c)?;
                for j in idx {
                    let a = sov::apply_m(&sov::apply_n(&p, j, c)?, c)?;
                    ensure_eq(&a, &sov::apply_nt(&mp, j, c)?, || format!("M N_{j:?} != N~_{j:?} M"))?;
                    let a = sov::apply_m(&sov::apply_q(&p, j, c)?, c)?;
                    ensure_eq(&a, &sov::apply_qt(&mp, j, c)?, || format!("M Q_{j:?} != Q~_{j:?} M"))?;
                }
            }
            Ok(())
        })),
        ("commuting-pairs", "[N_1, N_2] = 0 and [Q_1, Q_2] = 0", Box::new(|c| {
            for p in random_polys(cfg, c, 26) {
                let a = sov::apply_n(&sov::apply_n(&p, Index::Two, c)?, Index::One, c)?;
                let b = sov::apply_n(&sov::apply_n(&p, Index::One, c)?, Index::Two, c)?;
                ensure_eq(&a, &b, || "N_1 N_2 != N_2 N_1".into())?;
                let a = sov::apply_q(&sov::apply_q(&p, Index::Two, c)?, Index::One, c)?;
                let b = sov::apply_q(&sov::apply_q(&p, Index::One, c)?, Index::Two, c)?;
                ensure_eq(&a, &b, || "Q_1 Q_2 != Q_2 Q_1".into())?;
            }
            Ok(())
        })),
        ("identification", "with y = x/xi, M commutes with N_1 and N_2", Box::new(move |c| {
            for p in random_polys(cfg, c, 27) {
                let m = |p: &Laurent2| sov::apply_m(p, c).map(|f| sov::identify_y_with_x(&f, c));
                for j in idx {
                    let a = m(&sov::apply_n(&p, j, c)?)?;
                    let b = sov::apply_n(&m(&p)?, j, c)?;
                    ensure_eq(&a, &b, || format!("M N_{j:?} != N_{j:?} M after identification"))?;
                }
            }
            Ok(())
        })),
        ("jacobian", "H_j r_nu = a r_nu + b r_{nu1+1,nu2} + c r_{nu1,nu2-1}", Box::new(move |c| {
            for_pairs(pairs, |nu| sov::check_jacobian_action(nu, c).map(|_| ()))
        })),
        ("quantum-char-eq", "quantum characteristic equation annihilates r_nu, j = 1, 2", Box::new(move |c| {
            for_pairs(pairs, |nu| {
                for j in idx {
                    sov::check_quantum_char_eq(nu, j, c)?;
                }
                Ok(())
            })
        })),
    ];
    Ok(run_checks(checks, &ctxs))
}

fn combine(terms: impl IntoIterator<Item = (Q, Laurent2)>) -> Laurent2 {
    let mut out = Laurent2::zero();
    for (c, p) in terms {
        out.add_scaled(&p, &c, (0, 0));
    }
    out
}

/// `F_ν = c_ν f_ν(y1) f_ν(y2)`.
fn separated_product(nu: Pair, ctx: &QContext) -> Result<Laurent2> {
    let f = macdonald::separated_poly(nu, ctx)?.poly;
    Ok(Laurent2::tensor(&f, &f).scale(&sov::normalization_c(nu, ctx)))
}

pub fn transition_cases(cfg: &VerifyConfig) -> Result<Vec<Case>> {
    let ctxs = cfg.grid.contexts()?;
    let pairs = cfg.grid.pairs();
    let pairs = &pairs;
    use TransitionKind as K;
    let row = |lam: Pair, k: K, c: &QContext| sov::transition_row(lam, k, c).entries;
    let checks: Vec<Check> = vec![
        ("closed-vs-recursive", "closed-form transition rows equal recursively built rows (all eight matrices)", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                for k in K::ALL {
                    let (a, b) = (sov::transition_row(lam, k, c), sov::transition_row_recursive(lam, k, c));
                    ensure_eq(&a, &b, || format!("{} row {lam}", k.name()))?;
                }
                Ok(())
            })
        })),
        ("expansion-rows", "expanding P_lambda in p and r gives the pi and rho rows", Box::new(move |c| {
            for_pairs(pairs, |lam| {
                let p = macdonald::macdonald_poly(lam, c).poly;
                ensure_eq(&sov::expand_in_basis(&p, BasisKind::P, c)?.coeffs, &row(lam, K::Pi, c), || format!("pi row {lam}"))?;
                ensure_eq(&sov::expand_in_basis(&p, BasisKind::R, c)?.coeffs, &row(lam, K::Rho, c), || format!("rho row {lam}"))
            })
        })),
        ("reassembly", "sum pi p = sum rho r = P_lambda, sum Q P = p_lambda, sum R P = r_lambda", Box::new(move |c| {
            let polys: BTreeMap<Pair, Laurent2> = pairs.iter().map(|&lam| (lam, macdonald::macdonald_poly(lam, c).poly)).collect();
            for_pairs(pairs, |lam| {
                let p = &polys[&lam];
                let via = |k: K, b: BasisKind| combine(row(lam, k, c).into_iter().map(|(nu, v)| (v, sov::basis(b, nu, c))));
                ensure_eq(&via(K::Pi, BasisKind::P), p, || format!("sum pi p != P_{lam}"))?;
                ensure_eq(&via(K::Rho, BasisKind::R), p, || format!("sum rho r != P_{lam}"))?;
                let back = |k: K| combine(row(lam, k, c).into_iter().map(|(nu, v)| (v, polys[&nu].clone())));
                ensure_eq(&back(K::Q), &sov::basis(BasisKind::P, lam, c), || format!("sum Q P != p_{lam}"))?;
                ensure_eq(&back(K::R), &sov::basis(BasisKind::R, lam, c), || format!("sum R P != r_{lam}"))
            })
        })),
        ("mutual-inverses", "R rho = rho R = pi Q = Q pi = identity", Box::new(move |c| {
            let table = |k: K| sov::TransitionTable::build(k, pairs, c);
            let (pi, rho, q, r) = (table(K::Pi), table(K::Rho), table(K::Q), table(K::R));
            for_pairs(pairs, |lam| {
                for (a, b) in [(&r, &rho), (&rho, &r), (&pi, &q), (&q, &pi)] {
                    a.check_inverse(b, lam)?;
                }
                Ok(())
            })
        })),
        ("separated-expansions", "c f(y1) f(y2) = sum pi~ p~ = sum rho~ r~; p~ = sum Q~ F, r~ = sum R~ F", Box::new(move |c| {
            let mut products = BTreeMap::new();
            for &lam in pairs {
                products.insert(lam, separated_product(lam, c)?);
            }
            for_pairs(pairs, |lam| {
                let f = &products[&lam];
                let via = |k: K, b: BasisKind| combine(row(lam, k, c).into_iter().map(|(nu, v)| (v, sov::basis(b, nu, c))));
                ensure_eq(&via(K::PiTilde, BasisKind::PTilde), f, || format!("sum pi~ p~ != F_{lam}"))?;
                ensure_eq(&via(K::RhoTilde, BasisKind::RTilde), f, || format!("sum rho~ r~ != F_{lam}"))?;
                for (k, b) in [(K::QTilde, BasisKind::PTilde), (K::RTilde, BasisKind::RTilde)] {
                    let sum = combine(row(lam, k, c).into_iter().map(|(nu, v)| (v, products[&nu].clone())));
                    ensure_eq(&sum, &sov::basis(b, lam, c), || format!("sum {} F != {}_{lam}", k.name(), b.name()))?;
                }
                Ok(())
            })
        })),
    ];
    Ok(run_checks(checks, &ctxs))
}
