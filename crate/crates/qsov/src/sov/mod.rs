//! The separating operator `M_ξ` realized exactly through its diagonal action
//! on the bases `p_ν`, `r_ν` (x-side) and `p̃_ν`, `r̃_ν` (y-side).

mod operators;
mod transition;

pub use operators::*;
pub use transition::*;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::Laurent2;
use crate::macdonald::{self, SeparatedPoly};
use crate::pair::Pair;
use crate::scalar::{pow, qbinomial, qpoch, QContext, Q};

/// Which of the four triangular bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `p_ν = (x1 x2)^{ν1} (x1/ξ, x2/ξ; q)_{ν21}`
    P,
    /// `r_ν = (x1 x2)^{ν2} (tξ/x1, tξ/x2; q)_{ν21}`
    R,
    /// `p̃_ν = (y1 y2)^{ν1} (y1, y2; q)_{ν21}`
    PTilde,
    /// `r̃_ν = (y1 y2)^{ν2} (t²/y1, t²/y2; q)_{ν21}`
    RTilde,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [BasisKind::P, BasisKind::R, BasisKind::PTilde, BasisKind::RTilde];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::P => "p",
            BasisKind::R => "r",
            BasisKind::PTilde => "pt",
            BasisKind::RTilde => "rt",
        }
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown basis {s:?}; expected p, r, pt or rt")))
    }
}

/// `prod_{i<n} (1 - c q^i X)` with `X` the monomial of exponent `e`.
fn poch_monomial(e: (i64, i64), c: &Q, q: &Q, n: i64) -> Laurent2 {
    let mut out = Laurent2::one();
    let mut ci = c.clone();
    for _ in 0..n {
        out = &out * &Laurent2::from_terms([((0, 0), Q::one()), (e, -ci.clone())]);
        ci *= q;
    }
    out
}

fn product_basis(shift: i64, c: &Q, inverse: bool, q: &Q, n: i64) -> Laurent2 {
    let sign = if inverse { -1 } else { 1 };
    let f1 = poch_monomial((sign, 0), c, q, n);
    let f2 = poch_monomial((0, sign), c, q, n);
    (&f1 * &f2).mul_monomial((shift, shift))
}

pub fn basis(kind: BasisKind, nu: Pair, ctx: &QContext) -> Laurent2 {
    let (q, t, xi) = (ctx.q(), ctx.t(), ctx.xi());
    let d = nu.width();
    match kind {
        BasisKind::P => product_basis(nu.l1, &xi.recip(), false, q, d),
        BasisKind::R => product_basis(nu.l2, &(t * xi), true, q, d),
        BasisKind::PTilde => product_basis(nu.l1, &Q::one(), false, q, d),
        BasisKind::RTilde => product_basis(nu.l2, &(t * t), true, q, d),
    }
}

pub fn basis_p(nu: Pair, ctx: &QContext) -> Laurent2 {
    basis(BasisKind::P, nu, ctx)
}

pub fn basis_r(nu: Pair, ctx: &QContext) -> Laurent2 {
    basis(BasisKind::R, nu, ctx)
}

pub fn basis_pt(nu: Pair, ctx: &QContext) -> Laurent2 {
    basis(BasisKind::PTilde, nu, ctx)
}

pub fn basis_rt(nu: Pair, ctx: &QContext) -> Laurent2 {
    basis(BasisKind::RTilde, nu, ctx)
}

/// Finite expansion `sum coeff(ν) basis_ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub kind: BasisKind,
    pub coeffs: BTreeMap<Pair, Q>,
}

impl BasisExpansion {
    pub fn reassemble(&self, ctx: &QContext) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (nu, c) in &self.coeffs {
            out.add_scaled(&basis(self.kind, *nu, ctx), c, (0, 0));
        }
        out
    }
}

/// The `≺`-maximal support monomial `x1^{ν1} x2^{ν2}` with the largest `ν2`
/// (and, among those, the smallest `ν1`, which is the only maximal one).
fn top_pair(p: &Laurent2) -> Option<Pair> {
    p.terms()
        .filter(|((a, b), _)| a <= b)
        .map(|((a, b), _)| Pair { l1: *a, l2: *b })
        .max_by(|u, v| u.l2.cmp(&v.l2).then(v.l1.cmp(&u.l1)))
}

/// Expands a symmetric Laurent polynomial in one of the triangular bases by
/// repeatedly removing its `≺`-maximal monomial.
pub fn expand_in_basis(p: &Laurent2, kind: BasisKind, ctx: &QContext) -> Result<BasisExpansion> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let cap = match (p.min_exps(), p.max_exps()) {
        (Some(lo), Some(hi)) => {
            let w = (hi.0.max(hi.1) - lo.0.min(lo.1) + 1) as usize;
            w * w + 1
        }
        _ => 1,
    };
    let mut rest = p.clone();
    let mut coeffs = BTreeMap::new();
    for _ in 0..cap {
        let Some(nu) = top_pair(&rest) else {
            return Ok(BasisExpansion { kind, coeffs });
        };
        let b = basis(kind, nu, ctx);
        let lead = b.coeff((nu.l1, nu.l2));
        if lead.is_zero() {
            return Err(Error::NonTerminating(cap));
        }
        let c = rest.coeff((nu.l1, nu.l2)) / lead;
        rest.add_scaled(&b, &-c.clone(), (0, 0));
        *coeffs.entry(nu).or_insert_with(Q::zero) += c;
    }
    if rest.is_zero() {
        Ok(BasisExpansion { kind, coeffs })
    } else {
        Err(Error::NonTerminating(cap))
    }
}

/// `(t;q)_{ν21} / (t²;q)_{ν21}`.
fn mu_ratio(nu: Pair, ctx: &QContext) -> Q {
    let d = nu.width() as usize;
    let t = ctx.t();
    qpoch(t, ctx.q(), d) / qpoch(&(t * t), ctx.q(), d)
}

/// `μ^{(p)}_ν = t^{-ν1} ξ^{2ν1} (t;q)_{ν21}/(t²;q)_{ν21}`.
pub fn mu_p(nu: Pair, ctx: &QContext) -> Q {
    ctx.t_pow(-nu.l1) * pow(ctx.xi(), 2 * nu.l1) * mu_ratio(nu, ctx)
}

/// `μ^{(r)}_ν = t^{-ν2} ξ^{2ν2} (t;q)_{ν21}/(t²;q)_{ν21}`.
pub fn mu_r(nu: Pair, ctx: &QContext) -> Q {
    ctx.t_pow(-nu.l2) * pow(ctx.xi(), 2 * nu.l2) * mu_ratio(nu, ctx)
}

fn map_expansion(
    p: &Laurent2,
    from: BasisKind,
    to: BasisKind,
    weight: impl Fn(Pair) -> Q,
    ctx: &QContext,
) -> Result<Laurent2> {
    let e = expand_in_basis(p, from, ctx)?;
    let mut out = Laurent2::zero();
    for (nu, c) in &e.coeffs {
        out.add_scaled(&basis(to, *nu, ctx), &(c * weight(*nu)), (0, 0));
    }
    Ok(out)
}

/// `M_ξ p` through `p_ν -> μ^{(p)}_ν p̃_ν`; the result is a polynomial in `y1, y2`.
pub fn apply_m(p: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    map_expansion(p, BasisKind::P, BasisKind::PTilde, |nu| mu_p(nu, ctx), ctx)
}

/// `M_ξ p` through `r_ν -> μ^{(r)}_ν r̃_ν`.
pub fn apply_m_via_r(p: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    map_expansion(p, BasisKind::R, BasisKind::RTilde, |nu| mu_r(nu, ctx), ctx)
}

/// `M_ξ^{-1} f` through `p̃_ν -> p_ν / μ^{(p)}_ν`.
pub fn apply_m_inverse(f: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    map_expansion(f, BasisKind::PTilde, BasisKind::P, |nu| mu_p(nu, ctx).recip(), ctx)
}

/// `M_ξ^{-1}` as the order-`g` q-difference operator
/// `(M^{-1} f)(x) = sum_{k=0}^{g} ξ_k(x) f(ξ^{-1} q^k x1, ξ^{-1} q^{g-k} x2)` with
/// `ξ_k = (-1)^k q^{-k(k-1)/2} [g,k]_q z^k (1 - q^{g-2k} z) (x1/ξ, tξ/x2; q)_k (x2/ξ, tξ/x1; q)_{g-k}
///        / ((t;q)_g (q^{-k} z; q)_{g+1})`, `z = x2/x1`.
/// All terms are put over `prod_{m=-g}^{g} (1 - q^m z)` and divided once.
pub fn apply_m_inverse_qdiff(f: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (q, t, xi) = (ctx.q(), ctx.t(), ctx.xi());
    let g = i64::from(ctx.g());
    let z = (-1, 1);
    let one_minus = |c: Q| Laurent2::from_terms([((0, 0), Q::one()), (z, -c)]);
    let tq_g = qpoch(t, q, g as usize);
    let xi_inv = xi.recip();
    let mut num = Laurent2::zero();
    for k in 0..=g {
        let konst = pow(&Q::from_integer((-1).into()), k) * ctx.q_pow(-k * (k - 1) / 2) * qbinomial(g, k, q)
            / &tq_g;
        let mut term = one_minus(ctx.q_pow(g - 2 * k)).mul_monomial((-k, k));
        term = &term * &poch_monomial((1, 0), &xi_inv, q, k);
        term = &term * &poch_monomial((0, -1), &(t * xi), q, k);
        term = &term * &poch_monomial((0, 1), &xi_inv, q, g - k);
        term = &term * &poch_monomial((-1, 0), &(t * xi), q, g - k);
        for m in (-g..=g).filter(|m| *m < -k || *m > g - k) {
            term = &term * &one_minus(ctx.q_pow(m));
        }
        let shifted = f.scale_vars(&(&xi_inv * ctx.q_pow(k)), &(&xi_inv * ctx.q_pow(g - k)));
        num.add_scaled(&(&term * &shifted), &konst, (0, 0));
    }
    let mut den = Laurent2::one();
    for m in -g..=g {
        den = &den * &one_minus(ctx.q_pow(m));
    }
    num.divide_exact(&den)
}

/// `c_{λ,ξ} = t^{-2λ1+λ2} ξ^{|λ|} (t;q)_{λ21}/(t²;q)_{λ21}`.
pub fn normalization_c(lam: Pair, ctx: &QContext) -> Q {
    ctx.t_pow(-2 * lam.l1 + lam.l2) * pow(ctx.xi(), lam.size()) * mu_ratio(lam, ctx)
}

/// `M_ξ P_λ` together with its factorized form `c_{λ,ξ} f_λ(y1) f_λ(y2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingImage {
    pub poly: Laurent2,
    pub factored: Option<(Q, SeparatedPoly)>,
}

/// Computes `M_ξ P_λ` and checks that it equals `c_{λ,ξ} f_λ(y1) f_λ(y2)`.
pub fn separate(lam: Pair, ctx: &QContext) -> Result<SeparatingImage> {
    let p = macdonald::macdonald_poly(lam, ctx);
    let poly = apply_m(&p.poly, ctx)?;
    let f = macdonald::separated_poly(lam, ctx)?;
    let c = normalization_c(lam, ctx);
    let product = Laurent2::tensor(&f.poly, &f.poly).scale(&c);
    if product != poly {
        return Err(Error::IdentityViolation(format!("M P_{lam} differs from c f(y1) f(y2)")));
    }
    Ok(SeparatingImage { poly, factored: Some((c, f)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn ctx() -> QContext {
        QContext::from_parts(1, 2, 1, 2, 1).unwrap()
    }

    #[test]
    fn basis_examples() {
        let c = ctx();
        let k = Pair::new(2, 2).unwrap();
        assert_eq!(basis_p(k, &c), Laurent2::monomial((2, 2), int(1)));
        let nu = Pair::new(0, 1).unwrap();
        let inv = c.xi().recip();
        let expected = &Laurent2::linear(1, int(1), -inv.clone()) * &Laurent2::linear(2, int(1), -inv);
        assert_eq!(basis_p(nu, &c), expected);
        let t2 = c.t() * c.t();
        let rt = Laurent2::from_terms([((1, 1), int(1)), ((0, 1), -t2.clone()), ((1, 0), -t2.clone()), ((0, 0), &t2 * &t2)]);
        assert_eq!(basis_rt(nu, &c), rt);
        for kind in BasisKind::ALL {
            assert!(basis(kind, Pair::new(-1, 3).unwrap(), &c).is_symmetric());
        }
    }

    #[test]
    fn expansion_round_trip() {
        let c = ctx();
        for kind in BasisKind::ALL {
            let e = expand_in_basis(&Laurent2::one(), kind, &c).unwrap();
            assert_eq!(e.coeffs.len(), 1);
            assert_eq!(e.coeffs[&Pair::new(0, 0).unwrap()], int(1));
            let nu = Pair::new(-1, 2).unwrap();
            let e = expand_in_basis(&basis(kind, nu, &c), kind, &c).unwrap();
            assert_eq!(e.coeffs.len(), 1);
            assert_eq!(e.coeffs[&nu], int(1));
        }
        assert!(matches!(expand_in_basis(&Laurent2::x1(), BasisKind::P, &c), Err(Error::NotSymmetric)));
    }

    #[test]
    fn m_examples() {
        let c = ctx();
        assert_eq!(apply_m(&Laurent2::one(), &c).unwrap(), Laurent2::one());
        let x12 = Laurent2::monomial((2, 2), int(1));
        let scale = pow(&(pow(c.xi(), 2) / c.t()), 2);
        assert_eq!(apply_m(&x12, &c).unwrap(), x12.scale(&scale));
        let lam = Pair::new(0, 1).unwrap();
        let p = macdonald::macdonald_poly(lam, &c).poly;
        let t = c.t();
        let cc = t * c.xi() * (int(1) - t) / (int(1) - t * t);
        let y = |j| Laurent2::linear(j, int(1), t.recip());
        assert_eq!(apply_m(&p, &c).unwrap(), (&y(1) * &y(2)).scale(&cc));
    }

    #[test]
    fn normalization_examples() {
        let c = ctx();
        let t = c.t().clone();
        assert_eq!(normalization_c(Pair::new(0, 0).unwrap(), &c), int(1));
        assert_eq!(
            normalization_c(Pair::new(0, 1).unwrap(), &c),
            &t * c.xi() * (int(1) - &t) / (int(1) - &t * &t)
        );
        assert_eq!(normalization_c(Pair::new(1, 1).unwrap(), &c), t.recip() * int(4));
    }

    #[test]
    fn inverse_realizations() {
        for g in 1..=2 {
            let c = QContext::new(frac(1, 3), g, frac(3, 2)).unwrap();
            assert_eq!(apply_m_inverse_qdiff(&Laurent2::one(), &c).unwrap(), Laurent2::one());
            for lam in [(0, 1), (0, 2), (-1, 2)] {
                let lam = Pair::new(lam.0, lam.1).unwrap();
                let img = separate(lam, &c).unwrap();
                let p = macdonald::macdonald_poly(lam, &c).poly;
                assert_eq!(apply_m_inverse(&img.poly, &c).unwrap(), p);
                assert_eq!(apply_m_inverse_qdiff(&img.poly, &c).unwrap(), p);
                assert_eq!(apply_m_via_r(&p, &c).unwrap(), img.poly);
            }
        }
    }
}
