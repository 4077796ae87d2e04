//! Involutions, the first-order difference operators diagonal on the bases,
//! the Jacobian action of `H_j` on `r_ν`, and the quantum characteristic equation.

use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::Laurent2;
use crate::macdonald;
use crate::pair::Pair;
use crate::scalar::{QContext, Q};

use super::{basis_r, basis_rt, mu_r};

/// `U_ξ: φ(x1, x2) -> φ(tξ²/x1, tξ²/x2)`.
pub fn involution_u(p: &Laurent2, ctx: &QContext) -> Laurent2 {
    p.invert_vars(&(ctx.t() * ctx.xi() * ctx.xi()))
}

/// `V: φ(y1, y2) -> φ(t²/y1, t²/y2)`.
pub fn involution_v(p: &Laurent2, ctx: &QContext) -> Laurent2 {
    p.invert_vars(&(ctx.t() * ctx.t()))
}

/// Index of a commuting pair member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    One,
    Two,
}

/// `[-A(x1, x2) T_1^{±1} + A(x2, x1) T_2^{±1}] p / (x1 - x2)` where
/// `A = x2 (a - x1) / a` for index one and `A = a - x1` for index two.
fn first_order(p: &Laurent2, a: &Q, j: Index, inverse: bool, ctx: &QContext) -> Result<Laurent2> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let shift = if inverse { ctx.q().recip() } else { ctx.q().clone() };
    let one = Q::one();
    let coeff = match j {
        Index::One => {
            let inv = a.recip();
            Laurent2::from_terms([((0, 1), -Q::one()), ((1, 1), inv)])
        }
        Index::Two => Laurent2::from_terms([((0, 0), -a.clone()), ((1, 0), Q::one())]),
    };
    let num = &(&coeff * &p.scale_vars(&shift, &one)) - &(&coeff.swap() * &p.scale_vars(&one, &shift));
    num.divide_exact(&(&Laurent2::x1() - &Laurent2::x2()))
}

/// `N_j`, diagonal on `p_ν` with eigenvalue `q^{ν_j}`.
pub fn apply_n(p: &Laurent2, j: Index, ctx: &QContext) -> Result<Laurent2> {
    first_order(p, ctx.xi(), j, false, ctx)
}

/// `Q_j`, diagonal on `r_ν` with eigenvalue `q^{-ν_j}`.
pub fn apply_q(p: &Laurent2, j: Index, ctx: &QContext) -> Result<Laurent2> {
    first_order(p, &(ctx.t() * ctx.xi()), j, true, ctx)
}

/// `Ñ_j`, diagonal on `p̃_ν` with eigenvalue `q^{ν_j}`.
pub fn apply_nt(p: &Laurent2, j: Index, ctx: &QContext) -> Result<Laurent2> {
    first_order(p, &Q::one(), j, false, ctx)
}

/// `Q̃_j`, diagonal on `r̃_ν` with eigenvalue `q^{-ν_j}`.
pub fn apply_qt(p: &Laurent2, j: Index, ctx: &QContext) -> Result<Laurent2> {
    first_order(p, &(ctx.t() * ctx.t()), j, true, ctx)
}

/// `φ(y1, y2) -> φ(x1/ξ, x2/ξ)`, identifying the y-space with the x-space.
pub fn identify_y_with_x(p: &Laurent2, ctx: &QContext) -> Laurent2 {
    let inv = ctx.xi().recip();
    p.scale_vars(&inv, &inv)
}

/// Coefficients of `H_j r_ν = a r_ν + b r_{ν1+1,ν2} + c r_{ν1,ν2-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jacobian {
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

pub fn jacobian(nu: Pair, j: Index, ctx: &QContext) -> Jacobian {
    let (st, xi2) = (ctx.sqrt_t(), ctx.xi() * ctx.xi());
    let gap = Q::one() - ctx.q_pow(nu.width());
    match j {
        Index::One => Jacobian {
            a: ctx.q_pow(nu.l1) / st + st * ctx.q_pow(nu.l2),
            b: -(ctx.q_pow(nu.l1) / st) * &gap,
            c: ctx.t_pow(2) * st * xi2 * ctx.q_pow(-nu.l1 + 2 * nu.l2 - 2) * gap,
        },
        Index::Two => Jacobian {
            a: ctx.q_pow(nu.size()),
            b: -ctx.q_pow(nu.size()) * &gap,
            c: ctx.t_pow(2) * xi2 * ctx.q_pow(2 * nu.l2 - 2) * gap,
        },
    }
}

/// Neighbours `(ν1+1, ν2)` and `(ν1, ν2-1)`, present only when `ν21 > 0`.
fn neighbours(nu: Pair) -> Option<(Pair, Pair)> {
    (nu.width() > 0).then(|| (Pair { l1: nu.l1 + 1, l2: nu.l2 }, Pair { l1: nu.l1, l2: nu.l2 - 1 }))
}

/// `H_j r_ν` assembled from the Jacobian coefficients.
pub fn h_on_r(nu: Pair, j: Index, ctx: &QContext) -> Laurent2 {
    let jac = jacobian(nu, j, ctx);
    let mut out = basis_r(nu, ctx).scale(&jac.a);
    if let Some((up, down)) = neighbours(nu) {
        out.add_scaled(&basis_r(up, ctx), &jac.b, (0, 0));
        out.add_scaled(&basis_r(down, ctx), &jac.c, (0, 0));
    }
    out
}

/// Checks the Jacobian action against direct application of `H1`, `H2` to `r_ν`.
pub fn check_jacobian_action(nu: Pair, ctx: &QContext) -> Result<bool> {
    let r = basis_r(nu, ctx);
    let direct = [macdonald::apply_h1(&r, ctx)?, macdonald::apply_h2(&r, ctx)?];
    for (j, d) in [Index::One, Index::Two].into_iter().zip(direct) {
        if h_on_r(nu, j, ctx) != d {
            return Err(Error::IdentityViolation(format!("H_{j:?} r_{nu} differs from its Jacobian form")));
        }
    }
    Ok(true)
}

/// `M_ξ H_j r_ν` from the Jacobian form and `M_ξ r_κ = μ^{(r)}_κ r̃_κ`.
fn m_h_on_r(nu: Pair, j: Index, ctx: &QContext) -> Laurent2 {
    let jac = jacobian(nu, j, ctx);
    let mut out = basis_rt(nu, ctx).scale(&(jac.a * mu_r(nu, ctx)));
    if let Some((up, down)) = neighbours(nu) {
        out.add_scaled(&basis_rt(up, ctx), &(jac.b * mu_r(up, ctx)), (0, 0));
        out.add_scaled(&basis_rt(down, ctx), &(jac.c * mu_r(down, ctx)), (0, 0));
    }
    out
}

/// Left-hand side of the quantum characteristic equation applied to `r_ν`:
/// `(1 - q y_j) T_{q²,y_j} M r_ν - t^{1/2} (1 - q y_j/t) T_{q,y_j} M H1 r_ν + t (1 - q y_j/t²) M H2 r_ν`.
pub fn quantum_char_residual(nu: Pair, j: Index, ctx: &QContext) -> Laurent2 {
    let (q, t) = (ctx.q(), ctx.t());
    let one = Q::one();
    let var = match j {
        Index::One => 1,
        Index::Two => 2,
    };
    let shift = |p: &Laurent2, c: &Q| match j {
        Index::One => p.scale_vars(c, &one),
        Index::Two => p.scale_vars(&one, c),
    };
    let m_r = basis_rt(nu, ctx).scale(&mu_r(nu, ctx));
    let first = &Laurent2::linear(var, one.clone(), -q.clone()) * &shift(&m_r, &(q * q));
    let second = &Laurent2::linear(var, one.clone(), -(q / t)) * &shift(&m_h_on_r(nu, Index::One, ctx), q);
    let third = &Laurent2::linear(var, one.clone(), -(q / (t * t))) * &m_h_on_r(nu, Index::Two, ctx);
    &(&first - &second.scale(ctx.sqrt_t())) + &third.scale(t)
}

pub fn check_quantum_char_eq(nu: Pair, j: Index, ctx: &QContext) -> Result<bool> {
    let r = quantum_char_residual(nu, j, ctx);
    if r.is_zero() {
        Ok(true)
    } else {
        Err(Error::IdentityViolation(format!("quantum characteristic equation on r_{nu}, j={j:?}: {r:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pow;
    use crate::sov::{basis_p, basis_pt};

    fn ctx(sn: i64, sd: i64, g: u32) -> QContext {
        QContext::from_parts(sn, sd, g, 3, 2).unwrap()
    }

    #[test]
    fn involution_examples() {
        let c = ctx(1, 2, 1);
        assert_eq!(involution_u(&Laurent2::one(), &c), Laurent2::one());
        let nu = Pair::new(-1, 2).unwrap();
        let txi2 = c.t() * c.xi() * c.xi();
        assert_eq!(
            involution_u(&basis_p(nu, &c), &c),
            basis_r(nu.bar(), &c).scale(&pow(&(&txi2 * &txi2), nu.l1))
        );
        assert_eq!(
            involution_v(&basis_pt(nu, &c), &c),
            basis_rt(nu.bar(), &c).scale(&c.t_pow(4 * nu.l1))
        );
    }

    #[test]
    fn eigen_operators() {
        let c = ctx(1, 3, 2);
        let p00 = basis_p(Pair::new(0, 0).unwrap(), &c);
        assert_eq!(apply_n(&p00, Index::One, &c).unwrap(), p00);
        let p03 = basis_p(Pair::new(0, 3).unwrap(), &c);
        assert_eq!(apply_n(&p03, Index::Two, &c).unwrap(), p03.scale(&c.q_pow(3)));
        let r = basis_r(Pair::new(-1, 2).unwrap(), &c);
        assert_eq!(apply_q(&r, Index::One, &c).unwrap(), r.scale(c.q()));
        let rt = basis_rt(Pair::new(-1, 2).unwrap(), &c);
        assert_eq!(apply_qt(&rt, Index::Two, &c).unwrap(), rt.scale(&c.q_pow(-2)));
        let pt = basis_pt(Pair::new(1, 4).unwrap(), &c);
        assert_eq!(apply_nt(&pt, Index::One, &c).unwrap(), pt.scale(c.q()));
    }

    #[test]
    fn jacobian_matches_direct_action() {
        let c = ctx(1, 2, 1);
        for nu in [(0, 0), (0, 1), (-1, 2), (2, 5)] {
            assert!(check_jacobian_action(Pair::new(nu.0, nu.1).unwrap(), &c).unwrap());
        }
    }

    #[test]
    fn quantum_char_examples() {
        let c = ctx(1, 2, 1);
        assert!(check_quantum_char_eq(Pair::new(0, 0).unwrap(), Index::One, &c).unwrap());
        assert!(check_quantum_char_eq(Pair::new(0, 3).unwrap(), Index::One, &c).unwrap());
        let c = ctx(1, 3, 2);
        assert!(check_quantum_char_eq(Pair::new(-1, 2).unwrap(), Index::Two, &c).unwrap());
    }
}
