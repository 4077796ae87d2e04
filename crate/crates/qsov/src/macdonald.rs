//! A1 Macdonald polynomials, the commuting Hamiltonians `H1`, `H2`, and the
//! separated polynomials `f_λ(y)` with their three-term q-difference equation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Laurent1, Laurent2};
use crate::linalg;
use crate::pair::Pair;
use crate::qpoly;
use crate::scalar::{pow, qpoch, QContext, Q};

/// `P_λ` together with its label.
#[derive(Clone, Debug, PartialEq)]
pub struct MacdonaldPoly {
    pub label: Pair,
    pub poly: Laurent2,
}

/// `f_λ(y) = sum_{k=λ1}^{λ2} χ_k y^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedPoly {
    pub label: Pair,
    pub poly: Laurent1,
}

impl SeparatedPoly {
    pub fn chi(&self, k: i64) -> Q {
        self.poly.coeff(k)
    }
}

/// Joint eigenvalues `h1 = t^{-1/2} q^{λ1} + t^{1/2} q^{λ2}`, `h2 = q^{|λ|}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub h1: Q,
    pub h2: Q,
}

impl Spectrum {
    pub fn of(lam: Pair, ctx: &QContext) -> Self {
        let h1 = ctx.q_pow(lam.l1) / ctx.sqrt_t() + ctx.sqrt_t() * ctx.q_pow(lam.l2);
        let h2 = ctx.q_pow(lam.size());
        Spectrum { h1, h2 }
    }
}

/// Monomial symmetric function `m_λ`.
pub fn monomial(lam: Pair) -> Laurent2 {
    if lam.l1 == lam.l2 {
        Laurent2::monomial((lam.l1, lam.l1), Q::one())
    } else {
        Laurent2::from_terms([((lam.l1, lam.l2), Q::one()), ((lam.l2, lam.l1), Q::one())])
    }
}

/// Coefficient `u_{λν}` of `m_ν` in `P_λ` for `ν ≺ λ`, `|ν| = |λ|`.
pub fn expansion_coefficient(lam: Pair, nu: Pair, ctx: &QContext) -> Q {
    let (q, t) = (ctx.q(), ctx.t());
    let d = lam.width() as usize;
    let a = (nu.l1 - lam.l1) as usize;
    let b = (lam.l2 - nu.l1) as usize;
    qpoch(q, q, d) / qpoch(t, q, d) * qpoch(t, q, a) / qpoch(q, q, a) * qpoch(t, q, b)
        / qpoch(q, q, b)
}

/// `P_λ` from its triangular expansion in monomial symmetric functions.
pub fn macdonald_poly(lam: Pair, ctx: &QContext) -> MacdonaldPoly {
    let mut poly = Laurent2::zero();
    let total = lam.size();
    for n1 in lam.l1..=lam.l2 {
        let n2 = total - n1;
        if n1 > n2 {
            break;
        }
        let nu = Pair { l1: n1, l2: n2 };
        let u = expansion_coefficient(lam, nu, ctx);
        poly.add_scaled(&monomial(nu), &u, (0, 0));
    }
    MacdonaldPoly { label: lam, poly }
}

/// `P_λ = x_+^{|λ|} (q;q)_d/(t;q)_d C_d((x_- + 1/x_-)/2; t | q)` with `x_± = (x1 x2^{±1})^{1/2}`,
/// expanded directly: the term `w^{d-2k}` of `C_d` becomes `x1^{λ2-k} x2^{λ1+k}`.
pub fn macdonald_from_ultraspherical(lam: Pair, ctx: &QContext) -> Laurent2 {
    let d = lam.width();
    let c = qpoly::cq_sum(d as usize, ctx.t(), ctx.q());
    let norm = qpoch(ctx.q(), ctx.q(), d as usize) / qpoch(ctx.t(), ctx.q(), d as usize);
    Laurent2::from_terms((0..=d).map(|k| ((lam.l2 - k, lam.l1 + k), c.coeff(d - 2 * k) * &norm)))
}

fn require_symmetric(p: &Laurent2) -> Result<()> {
    if p.is_symmetric() {
        Ok(())
    } else {
        Err(Error::NotSymmetric)
    }
}

/// `H1 p = (v12 T_{q,x1} + v21 T_{q,x2}) p`, computed with one exact division by `x1 - x2`.
pub fn apply_h1(p: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    require_symmetric(p)?;
    let st = ctx.sqrt_t();
    let inv = st.recip();
    let one = Q::one();
    let left = Laurent2::from_terms([((1, 0), st.clone()), ((0, 1), -&inv)]);
    let right = Laurent2::from_terms([((0, 1), st.clone()), ((1, 0), -&inv)]);
    let num = &left * &p.scale_vars(ctx.q(), &one) - &right * &p.scale_vars(&one, ctx.q());
    let den = &Laurent2::x1() - &Laurent2::x2();
    num.divide_exact(&den)
}

/// `H2 p = p(q x1, q x2)`.
pub fn apply_h2(p: &Laurent2, ctx: &QContext) -> Result<Laurent2> {
    require_symmetric(p)?;
    Ok(p.scale_vars(ctx.q(), ctx.q()))
}

/// `χ_k` for `k = λ1 + j`: `(q/t²)^j (t, q^{-d}; q)_j / (q, q^{1-d}/t; q)_j`.
fn chi_coefficients(d: i64, ctx: &QContext) -> Result<Vec<Q>> {
    let (q, t) = (ctx.q(), ctx.t());
    let a = ctx.q_pow(-d);
    let c = ctx.q_pow(1 - d) / t;
    let z = q / (t * t);
    let mut out = Vec::with_capacity(d as usize + 1);
    let mut cur = Q::one();
    out.push(cur.clone());
    for j in 0..d {
        let den = (Q::one() - pow(q, j + 1)) * (Q::one() - &c * pow(q, j));
        if den.is_zero() {
            return Err(Error::Pole(format!("χ denominator vanishes at step {j}")));
        }
        cur = cur * &z * (Q::one() - t * pow(q, j)) * (Q::one() - &a * pow(q, j)) / den;
        out.push(cur.clone());
    }
    Ok(out)
}

/// `f_λ` from the closed-form coefficients `χ_k`.
pub fn separated_poly(lam: Pair, ctx: &QContext) -> Result<SeparatedPoly> {
    let chi = chi_coefficients(lam.width(), ctx)?;
    let poly = Laurent1::from_terms(chi.into_iter().enumerate().map(|(j, c)| (lam.l1 + j as i64, c)));
    Ok(SeparatedPoly { label: lam, poly })
}

/// `f_λ` read off `C_{λ21}( · ; t | q)` under `y = t e^{-2iθ}`:
/// the term `w^{d-2k}` contributes `(q;q)_d/(t;q)_d t^{-k} y^{λ1+k}`.
pub fn separated_from_ultraspherical(lam: Pair, ctx: &QContext) -> Laurent1 {
    let d = lam.width();
    let c = qpoly::cq_sum(d as usize, ctx.t(), ctx.q());
    let norm = qpoch(ctx.q(), ctx.q(), d as usize) / qpoch(ctx.t(), ctx.q(), d as usize);
    Laurent1::from_terms((0..=d).map(|k| (lam.l1 + k, c.coeff(d - 2 * k) * &norm * ctx.t_pow(-k))))
}

/// A factor `1 - q^e t^w` of a q-shifted factorial, evaluated at `t = q^{g+ε}`.
struct Factor {
    exponent: i64,
    weight: i64,
}

impl Factor {
    fn vanishes(&self, g: i64) -> bool {
        self.exponent + self.weight * g == 0
    }

    fn value(&self, ctx: &QContext) -> Q {
        Q::one() - ctx.q_pow(self.exponent) * ctx.t_pow(self.weight)
    }
}

/// Ratio `prod num / prod den` of factors `1 - q^e t^w` in the limit `t -> q^g`.
/// A vanishing factor behaves like `-w ε ln q`, so equal numbers of vanishing
/// factors above and below leave the ratio of their weights.
fn limit_ratio(num: &[Factor], den: &[Factor], ctx: &QContext) -> Result<Q> {
    let g = i64::from(ctx.g());
    let (mut zn, mut zd) = (0usize, 0usize);
    let mut value = Q::one();
    for f in num {
        if f.vanishes(g) {
            zn += 1;
            value *= Q::from_integer(f.weight.into());
        } else {
            value *= f.value(ctx);
        }
    }
    for f in den {
        if f.vanishes(g) {
            zd += 1;
            value /= Q::from_integer(f.weight.into());
        } else {
            value /= f.value(ctx);
        }
    }
    match zn.cmp(&zd) {
        std::cmp::Ordering::Greater => Ok(Q::zero()),
        std::cmp::Ordering::Less => Err(Error::Pole("term of the 2phi1 series diverges".into())),
        std::cmp::Ordering::Equal => Ok(value),
    }
}

/// `f_λ = y^{λ1} (y;q)_{1-2g} 2φ1[t^{-2} q^{1-d}, q/t; q^{1-d}/t; q, y]`.
///
/// With integer `g` the lower parameter meets a vanishing factor before the
/// series terminates; every term is taken as its limit `t -> q^g`. The series is
/// then a polynomial of degree at most `d + 2g - 1`, divided exactly by
/// `prod_{k=1}^{2g-1} (1 - y q^{-k})`.
pub fn separated_poly_alt(lam: Pair, ctx: &QContext) -> Result<SeparatedPoly> {
    let d = lam.width();
    let g = i64::from(ctx.g());
    let top = d + 2 * g - 1;
    let mut num: Vec<Factor> = Vec::new();
    let mut den: Vec<Factor> = Vec::new();
    let mut series = Laurent1::zero();
    for k in 0..=top {
        if k > 0 {
            let j = k - 1;
            num.push(Factor { exponent: 1 - d + j, weight: -2 });
            num.push(Factor { exponent: 1 + j, weight: -1 });
            den.push(Factor { exponent: 1 + j, weight: 0 });
            den.push(Factor { exponent: 1 - d + j, weight: -1 });
        }
        series.add_term(k, limit_ratio(&num, &den, ctx)?);
    }
    // Terms past `top` carry an extra vanishing numerator factor and drop out.
    let mut divisor = Laurent1::one();
    for k in 1..2 * g {
        divisor = &divisor * &Laurent1::from_terms([(0, Q::one()), (1, -ctx.q_pow(-k))]);
    }
    let poly = series
        .divide_exact(&divisor)
        .map_err(|e| Error::NotPolynomial(format!("(y;q)_(1-2g) factor does not cancel: {e}")))?
        .mul_monomial(lam.l1);
    Ok(SeparatedPoly { label: lam, poly })
}

/// `t(1 - qy) f(q²y) - t^{1/2}(t - qy) h1 f(qy) + (t² - qy) h2 f(y)`.
pub fn separation_residual(f: &Laurent1, spec: &Spectrum, ctx: &QContext) -> Laurent1 {
    let (q, t, st) = (ctx.q(), ctx.t(), ctx.sqrt_t());
    let qy = |c0: Q| Laurent1::from_terms([(0, c0), (1, -q.clone())]);
    let a = qy(Q::one()).scale(t);
    let b = qy(t.clone()).scale(&(st * &spec.h1));
    let c = qy(t * t).scale(&spec.h2);
    &(&a * &f.scale_var(&(q * q))) - &(&b * &f.scale_var(q)) + &c * f
}

/// Asserts that `f` solves the separation equation with the given spectrum.
pub fn check_separation_equation(f: &SeparatedPoly, spec: &Spectrum, ctx: &QContext) -> Result<bool> {
    let r = separation_residual(&f.poly, spec, ctx);
    if r.is_zero() {
        Ok(true)
    } else {
        Err(Error::IdentityViolation(format!("separation equation residual {r:?} for λ={}", f.label)))
    }
}

/// Dimension of the space of Laurent polynomials supported in `[λ1, λ2]`
/// that solve the separation equation for the spectrum of `λ`.
pub fn separation_solution_dimension(lam: Pair, ctx: &QContext) -> usize {
    let spec = Spectrum::of(lam, ctx);
    let cols: Vec<Laurent1> = (lam.l1..=lam.l2)
        .map(|k| separation_residual(&Laurent1::monomial(k, Q::one()), &spec, ctx))
        .collect();
    let rows: Vec<Vec<Q>> =
        (lam.l1..=lam.l2 + 1).map(|m| cols.iter().map(|c| c.coeff(m)).collect()).collect();
    linalg::nullity(&rows)
}
