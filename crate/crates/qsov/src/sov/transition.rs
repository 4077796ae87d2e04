//! Transition matrices between `P_λ` and the bases `p_ν`, `r_ν`:
//! `P_λ = sum π_λ^ν p_ν = sum ρ_λ^ν r_ν`, `p_λ = sum Q_λ^ν P_ν`, `r_λ = sum R_λ^ν P_ν`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pair::Pair;
use crate::scalar::{pow, qpoch, QContext, Q};

use super::{mu_p, mu_r};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    Pi,
    Rho,
    Q,
    R,
    PiTilde,
    RhoTilde,
    QTilde,
    RTilde,
}

impl TransitionKind {
    pub const ALL: [TransitionKind; 8] = [
        TransitionKind::Pi,
        TransitionKind::Rho,
        TransitionKind::Q,
        TransitionKind::R,
        TransitionKind::PiTilde,
        TransitionKind::RhoTilde,
        TransitionKind::QTilde,
        TransitionKind::RTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransitionKind::Pi => "pi",
            TransitionKind::Rho => "rho",
            TransitionKind::Q => "Q",
            TransitionKind::R => "R",
            TransitionKind::PiTilde => "pi~",
            TransitionKind::RhoTilde => "rho~",
            TransitionKind::QTilde => "Q~",
            TransitionKind::RTilde => "R~",
        }
    }

    /// The untilded matrix underlying a tilded one.
    fn base(self) -> TransitionKind {
        match self {
            TransitionKind::PiTilde => TransitionKind::Pi,
            TransitionKind::RhoTilde => TransitionKind::Rho,
            TransitionKind::QTilde => TransitionKind::Q,
            TransitionKind::RTilde => TransitionKind::R,
            k => k,
        }
    }
}

impl std::str::FromStr for TransitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransitionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown transition matrix {s:?}")))
    }
}

/// Row `λ` of a transition matrix over `ν ≺ λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionRow {
    pub lam: Pair,
    pub kind: TransitionKind,
    pub entries: BTreeMap<Pair, Q>,
}

impl TransitionRow {
    /// The entry at `ν`, zero outside `ν ≺ λ`.
    pub fn get(&self, nu: Pair) -> Q {
        self.entries.get(&nu).cloned().unwrap_or_else(Q::zero)
    }
}

fn sign(n: i64) -> Q {
    if n.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

fn half(twice: i64) -> i64 {
    debug_assert!(twice % 2 == 0);
    twice / 2
}

fn pq(a: &Q, ctx: &QContext, n: i64) -> Q {
    qpoch(a, ctx.q(), n as usize)
}

/// The factor shared by all four closed forms, with `a` either `t` (π, ρ) or `tq` (Q, R):
/// for π, ρ: `(t;q)_{λ2-ν1} (t;q)_{ν2-λ1} (q;q)_{λ21} / [(q;q)_{λ2-ν2} (q;q)_{ν1-λ1} (t;q)_{ν21} (t;q)_{λ21} (q;q)_{ν21}]`;
/// for Q, R: `(tq;q)_{λ21} (tq;q)_{ν21} (q;q)_{λ21} / [(q;q)_{λ2-ν2} (q;q)_{ν1-λ1} (tq;q)_{ν2-λ1} (tq;q)_{λ2-ν1} (q;q)_{ν21}]`.
fn pochhammer_part(lam: Pair, nu: Pair, dual: bool, ctx: &QContext) -> Q {
    let q = ctx.q();
    let common = pq(q, ctx, lam.width()) / (pq(q, ctx, lam.l2 - nu.l2) * pq(q, ctx, nu.l1 - lam.l1) * pq(q, ctx, nu.width()));
    if dual {
        let tq = ctx.t() * q;
        common * pq(&tq, ctx, lam.width()) * pq(&tq, ctx, nu.width())
            / (pq(&tq, ctx, nu.l2 - lam.l1) * pq(&tq, ctx, lam.l2 - nu.l1))
    } else {
        let t = ctx.t();
        common * pq(t, ctx, lam.l2 - nu.l1) * pq(t, ctx, nu.l2 - lam.l1) / (pq(t, ctx, nu.width()) * pq(t, ctx, lam.width()))
    }
}

fn closed_entry(kind: TransitionKind, lam: Pair, nu: Pair, ctx: &QContext) -> Q {
    let xi = ctx.xi();
    let txi = ctx.t() * xi;
    let (l1, l2) = (lam.l1, lam.l2);
    let (n1, n2) = (nu.l1, nu.l2);
    let nsz = nu.size();
    let s = sign(nu.width());
    match kind {
        TransitionKind::Pi => {
            let e = half(nu.width() * (nsz - 2 * l2 + 1));
            s * pow(xi, lam.size() - 2 * n1) * ctx.q_pow(e) * pochhammer_part(lam, nu, false, ctx)
        }
        TransitionKind::Rho => {
            let e = half(nu.width() * (2 * l1 + 1 - nsz));
            s * pow(&txi, lam.size() - 2 * n2) * ctx.q_pow(e) * pochhammer_part(lam, nu, false, ctx)
        }
        TransitionKind::Q => {
            let e = l1 * l1 - (nsz - 1) * l1 + half(n1 * n1 + n2 * n2 - nsz);
            s * pow(xi, 2 * l1 - nsz) * ctx.q_pow(e) * pochhammer_part(lam, nu, true, ctx)
        }
        TransitionKind::R => {
            let e = l2 * l2 - (nsz + 1) * l2 + half(n1 * n1 + n2 * n2 + nsz);
            s * pow(&txi, 2 * l2 - nsz) * ctx.q_pow(e) * pochhammer_part(lam, nu, true, ctx)
        }
        _ => unreachable!("tilded kinds are derived from their base"),
    }
}

/// Converts an untilded entry to its tilded counterpart.
fn tilde(kind: TransitionKind, lam: Pair, nu: Pair, value: Q, ctx: &QContext) -> Q {
    match kind {
        TransitionKind::PiTilde => value * mu_p(nu, ctx),
        TransitionKind::RhoTilde => value * mu_r(nu, ctx),
        TransitionKind::QTilde => value / mu_p(lam, ctx),
        TransitionKind::RTilde => value / mu_r(lam, ctx),
        _ => value,
    }
}

fn finish(kind: TransitionKind, lam: Pair, base: BTreeMap<Pair, Q>, ctx: &QContext) -> TransitionRow {
    let entries = base.into_iter().map(|(nu, v)| (nu, tilde(kind, lam, nu, v, ctx))).collect();
    TransitionRow { lam, kind, entries }
}

/// Row from the closed-form products.
pub fn transition_row(lam: Pair, kind: TransitionKind, ctx: &QContext) -> TransitionRow {
    let base = kind.base();
    let entries = lam.below().into_iter().map(|nu| (nu, closed_entry(base, lam, nu, ctx))).collect();
    finish(kind, lam, entries, ctx)
}

/// `ρ_λ^λ = (-1)^d q^{-d(d-1)/2} (tξ)^{-d}`.
pub fn rho_diagonal(lam: Pair, ctx: &QContext) -> Q {
    let d = lam.width();
    sign(d) * ctx.q_pow(-d * (d - 1) / 2) * pow(&(ctx.t() * ctx.xi()), -d)
}

/// `R_λ^λ = (-1)^d q^{d(d-1)/2} (tξ)^d`.
pub fn r_diagonal(lam: Pair, ctx: &QContext) -> Q {
    let d = lam.width();
    sign(d) * ctx.q_pow(d * (d - 1) / 2) * pow(&(ctx.t() * ctx.xi()), d)
}

/// Row of `ρ` from its diagonal value and the two-step recurrences, run inward:
/// `ρ^{ν1-1,ν2} = -(1-q^{ν1-λ1})(1-tq^{λ2-ν1}) / [q^{ν1-λ1-1}(1-q^{ν21+1})(1-tq^{ν21})] ρ^ν`,
/// `ρ^{ν1,ν2+1} = -(1-q^{λ2-ν2})(1-tq^{ν2-λ1}) / [q^{ν2-λ1} t²ξ² (1-q^{ν21+1})(1-tq^{ν21})] ρ^ν`.
fn rho_row_recursive(lam: Pair, ctx: &QContext) -> BTreeMap<Pair, Q> {
    let (t, xi) = (ctx.t(), ctx.xi());
    let one = Q::one();
    let step_left = |nu: Pair| -> Q {
        -(&one - ctx.q_pow(nu.l1 - lam.l1)) * (&one - t * ctx.q_pow(lam.l2 - nu.l1))
            / (ctx.q_pow(nu.l1 - lam.l1 - 1) * (&one - ctx.q_pow(nu.width() + 1)) * (&one - t * ctx.q_pow(nu.width())))
    };
    let step_up = |nu: Pair| -> Q {
        -(&one - ctx.q_pow(lam.l2 - nu.l2)) * (&one - t * ctx.q_pow(nu.l2 - lam.l1))
            / (ctx.q_pow(nu.l2 - lam.l1) * t * t * xi * xi * (&one - ctx.q_pow(nu.width() + 1)) * (&one - t * ctx.q_pow(nu.width())))
    };
    let mut row = BTreeMap::new();
    let mut edge = rho_diagonal(lam, ctx);
    for n1 in lam.l1..=lam.l2 {
        if n1 > lam.l1 {
            // ρ^{(n1-1, λ2)} = step_left(n1, λ2) ρ^{(n1, λ2)}
            edge /= step_left(Pair { l1: n1, l2: lam.l2 });
        }
        let mut cur = edge.clone();
        row.insert(Pair { l1: n1, l2: lam.l2 }, cur.clone());
        for n2 in (n1..lam.l2).rev() {
            // ρ^{(n1, n2+1)} = step_up(n1, n2) ρ^{(n1, n2)}
            cur /= step_up(Pair { l1: n1, l2: n2 });
            row.insert(Pair { l1: n1, l2: n2 }, cur.clone());
        }
    }
    row
}

/// Entry `R_λ^ν` from `R_ν^ν` and the recurrences in the row index, run outward from `ν`:
/// `R_{λ1+1,λ2}^ν = (1-q^{ν1-λ1})(1-tq^{ν2-λ1}) / [(1-q^{λ21})(1-tq^{λ21})] R_λ^ν`,
/// `R_{λ1,λ2-1}^ν = (1-q^{λ2-ν2})(1-tq^{λ2-ν1}) / [q^{2λ2-|ν|-2} t²ξ² (1-q^{λ21})(1-tq^{λ21})] R_λ^ν`.
fn r_entry_recursive(lam: Pair, nu: Pair, ctx: &QContext) -> Q {
    let (t, xi) = (ctx.t(), ctx.xi());
    let one = Q::one();
    let down = |l: Pair| -> Q {
        (&one - ctx.q_pow(nu.l1 - l.l1)) * (&one - t * ctx.q_pow(nu.l2 - l.l1))
            / ((&one - ctx.q_pow(l.width())) * (&one - t * ctx.q_pow(l.width())))
    };
    let up = |l: Pair| -> Q {
        (&one - ctx.q_pow(l.l2 - nu.l2)) * (&one - t * ctx.q_pow(l.l2 - nu.l1))
            / (ctx.q_pow(2 * l.l2 - nu.size() - 2) * t * t * xi * xi * (&one - ctx.q_pow(l.width())) * (&one - t * ctx.q_pow(l.width())))
    };
    let mut value = r_diagonal(nu, ctx);
    let mut cur = nu;
    while cur.l1 > lam.l1 {
        let next = Pair { l1: cur.l1 - 1, l2: cur.l2 };
        value /= down(next);
        cur = next;
    }
    while cur.l2 < lam.l2 {
        let next = Pair { l1: cur.l1, l2: cur.l2 + 1 };
        value /= up(next);
        cur = next;
    }
    value
}

/// Row from the recurrences and diagonal values; `π` and `Q` follow from `ρ` and `R` via
/// `π_λ^ν = (tξ²)^{|λ|-2ν1} ρ_{λ̄}^{ν̄}` and `Q_λ^ν = (tξ²)^{2λ1-|ν|} R_{λ̄}^{ν̄}`.
pub fn transition_row_recursive(lam: Pair, kind: TransitionKind, ctx: &QContext) -> TransitionRow {
    let txi2 = ctx.t() * ctx.xi() * ctx.xi();
    let base: BTreeMap<Pair, Q> = match kind.base() {
        TransitionKind::Rho => rho_row_recursive(lam, ctx),
        TransitionKind::R => lam.below().into_iter().map(|nu| (nu, r_entry_recursive(lam, nu, ctx))).collect(),
        TransitionKind::Pi => {
            let rho = rho_row_recursive(lam.bar(), ctx);
            lam.below()
                .into_iter()
                .map(|nu| (nu, pow(&txi2, lam.size() - 2 * nu.l1) * &rho[&nu.bar()]))
                .collect()
        }
        TransitionKind::Q => lam
            .below()
            .into_iter()
            .map(|nu| (nu, pow(&txi2, 2 * lam.l1 - nu.size()) * r_entry_recursive(lam.bar(), nu.bar(), ctx)))
            .collect(),
        _ => unreachable!(),
    };
    finish(kind, lam, base, ctx)
}

/// `sum_{μ ≺ ν ≺ λ} A_λ^ν B_ν^μ` for every `μ ≺ λ`; for mutually inverse pairs this is `δ_{λμ}`.
pub fn compose_rows(lam: Pair, a: TransitionKind, b: TransitionKind, ctx: &QContext) -> BTreeMap<Pair, Q> {
    compose_with(&transition_row(lam, a, ctx), |nu| transition_row(nu, b, ctx))
}

fn compose_with<R: std::borrow::Borrow<TransitionRow>>(row: &TransitionRow, inner: impl Fn(Pair) -> R) -> BTreeMap<Pair, Q> {
    let mut out: BTreeMap<Pair, Q> = BTreeMap::new();
    for (nu, av) in &row.entries {
        for (mu, bv) in &inner(*nu).borrow().entries {
            *out.entry(*mu).or_insert_with(Q::zero) += av * bv;
        }
    }
    out
}

fn ensure_identity_row(lam: Pair, composed: BTreeMap<Pair, Q>, a: TransitionKind, b: TransitionKind) -> Result<bool> {
    for (mu, v) in composed {
        let expected = if mu == lam { Q::one() } else { Q::zero() };
        if v != expected {
            return Err(Error::IdentityViolation(format!(
                "sum over ν of {}_λ^ν {}_ν^μ at λ={lam}, μ={mu} is {v}",
                a.name(),
                b.name()
            )));
        }
    }
    Ok(true)
}

/// Checks that `A` and `B` are mutually inverse on row `λ`.
pub fn check_inverse_pair(lam: Pair, a: TransitionKind, b: TransitionKind, ctx: &QContext) -> Result<bool> {
    ensure_identity_row(lam, compose_rows(lam, a, b, ctx), a, b)
}

/// Closed-form rows of one matrix for a set of pairs and everything below them.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionTable {
    pub kind: TransitionKind,
    pub rows: BTreeMap<Pair, TransitionRow>,
}

impl TransitionTable {
    pub fn build(kind: TransitionKind, pairs: &[Pair], ctx: &QContext) -> Self {
        let mut rows = BTreeMap::new();
        for lam in pairs {
            for nu in lam.below() {
                rows.entry(nu).or_insert_with(|| transition_row(nu, kind, ctx));
            }
        }
        TransitionTable { kind, rows }
    }

    pub fn row(&self, lam: Pair) -> Option<&TransitionRow> {
        self.rows.get(&lam)
    }

    /// Same as [`check_inverse_pair`], reusing stored rows.
    pub fn check_inverse(&self, other: &TransitionTable, lam: Pair) -> Result<bool> {
        let missing = |nu: Pair| Error::InvalidParameter(format!("row {nu} not in table"));
        let row = self.row(lam).ok_or_else(|| missing(lam))?;
        if let Some(nu) = row.entries.keys().find(|nu| other.row(**nu).is_none()) {
            return Err(missing(*nu));
        }
        ensure_identity_row(lam, compose_with(row, |nu| &other.rows[&nu]), self.kind, other.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent2;
    use crate::macdonald;
    use crate::sov::{basis, expand_in_basis, BasisKind};

    fn ctx() -> QContext {
        QContext::from_parts(1, 3, 2, 3, 2).unwrap()
    }

    #[test]
    fn diagonals_match_initial_conditions() {
        let c = ctx();
        for lam in [(0, 0), (0, 3), (-2, 2)] {
            let lam = Pair::new(lam.0, lam.1).unwrap();
            assert_eq!(transition_row(lam, TransitionKind::Rho, &c).get(lam), rho_diagonal(lam, &c));
            assert_eq!(transition_row(lam, TransitionKind::R, &c).get(lam), r_diagonal(lam, &c));
        }
    }

    #[test]
    fn recurrences_agree_with_closed_forms() {
        let c = ctx();
        for lam in [(0, 0), (0, 1), (-1, 3), (2, 6)] {
            let lam = Pair::new(lam.0, lam.1).unwrap();
            for kind in TransitionKind::ALL {
                assert_eq!(transition_row_recursive(lam, kind, &c), transition_row(lam, kind, &c), "{kind:?} {lam}");
            }
        }
    }

    #[test]
    fn expansions_of_macdonald_polynomials() {
        let c = ctx();
        for lam in [(0, 1), (0, 2), (-1, 2)] {
            let lam = Pair::new(lam.0, lam.1).unwrap();
            let p = macdonald::macdonald_poly(lam, &c).poly;
            let e = expand_in_basis(&p, BasisKind::R, &c).unwrap();
            assert_eq!(e.coeffs, transition_row(lam, TransitionKind::Rho, &c).entries);
            let e = expand_in_basis(&p, BasisKind::P, &c).unwrap();
            assert_eq!(e.coeffs, transition_row(lam, TransitionKind::Pi, &c).entries);
            let mut r = Laurent2::zero();
            for (nu, v) in &transition_row(lam, TransitionKind::R, &c).entries {
                r.add_scaled(&macdonald::macdonald_poly(*nu, &c).poly, v, (0, 0));
            }
            assert_eq!(r, basis(BasisKind::R, lam, &c));
        }
    }

    #[test]
    fn inverse_pairs() {
        let c = ctx();
        let lam = Pair::new(-1, 3).unwrap();
        assert!(check_inverse_pair(lam, TransitionKind::R, TransitionKind::Rho, &c).unwrap());
        assert!(check_inverse_pair(lam, TransitionKind::Pi, TransitionKind::Q, &c).unwrap());
        let rho = TransitionTable::build(TransitionKind::Rho, &[lam], &c);
        let r = TransitionTable::build(TransitionKind::R, &[lam], &c);
        assert!(r.check_inverse(&rho, lam).unwrap());
        assert!(rho.check_inverse(&r, lam).unwrap());
    }
}
