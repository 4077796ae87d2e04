//! Exact rational scalars, q-Pochhammer symbols and the parameter context.
//!
//! The base is parametrized by its square root: `q = s^2` and `t = s^(2g)`,
//! so every half-integer power of `q` and `t` is itself rational.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"` or `"-n/d"`.
pub fn parse(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

/// `x^n` for any integer `n`; `x` must be nonzero when `n < 0`.
pub fn pow(x: &Q, n: i64) -> Q {
    let base = if n < 0 {
        assert!(!x.is_zero(), "zero raised to a negative power");
        x.recip()
    } else {
        x.clone()
    };
    num_traits::pow(base, n.unsigned_abs() as usize)
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)` for `n >= 0`.
pub fn qpoch(a: &Q, q: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= Q::one() - &term;
        term *= q;
    }
    acc
}

/// `(a; q)_n` for any integer `n`, with `(a; q)_{-m} = 1 / prod_{k=1}^{m} (1 - a q^{-k})`.
pub fn qpochhammer(a: &Q, q: &Q, n: i64) -> Result<Q> {
    if n >= 0 {
        return Ok(qpoch(a, q, n as usize));
    }
    let qinv = q.recip();
    let mut term = a * &qinv;
    let mut den = Q::one();
    for k in 1..=n.unsigned_abs() {
        let factor = Q::one() - &term;
        if factor.is_zero() {
            return Err(Error::Pole(format!("(a;q)_{n} has a vanishing factor at k={k}")));
        }
        den *= factor;
        term *= &qinv;
    }
    Ok(den.recip())
}

/// Gaussian binomial `[n, k]_q`; zero outside `0 <= k <= n`.
pub fn qbinomial(n: i64, k: i64, q: &Q) -> Q {
    if n < 0 || k < 0 || k > n {
        return Q::zero();
    }
    let (n, k) = (n as usize, k as usize);
    qpoch(q, q, n) / (qpoch(q, q, k) * qpoch(q, q, n - k))
}

/// Parameters of one exact run: `q = s^2`, `t = s^(2g)` and the free parameter `xi`.
#[derive(Clone, Debug, PartialEq)]
pub struct QContext {
    s: Q,
    g: u32,
    xi: Q,
    q: Q,
    t: Q,
    sqrt_t: Q,
}

impl QContext {
    pub fn new(s: Q, g: u32, xi: Q) -> Result<Self> {
        if !(s.is_positive() && s < Q::one()) {
            return Err(Error::InvalidParameter(format!("s must lie in (0,1), got {s}")));
        }
        if g == 0 {
            return Err(Error::InvalidParameter("g must be a positive integer".into()));
        }
        if xi.is_zero() {
            return Err(Error::InvalidParameter("xi must be nonzero".into()));
        }
        let q = &s * &s;
        let sqrt_t = pow(&s, i64::from(g));
        let t = &sqrt_t * &sqrt_t;
        Ok(QContext { s, g, xi, q, t, sqrt_t })
    }

    /// Convenience constructor from small integers: `s = sn/sd`, `xi = xn/xd`.
    pub fn from_parts(sn: i64, sd: i64, g: u32, xn: i64, xd: i64) -> Result<Self> {
        Self::new(frac(sn, sd), g, frac(xn, xd))
    }

    pub fn s(&self) -> &Q {
        &self.s
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn xi(&self) -> &Q {
        &self.xi
    }

    pub fn q(&self) -> &Q {
        &self.q
    }

    pub fn t(&self) -> &Q {
        &self.t
    }

    /// `t^(1/2) = s^g`.
    pub fn sqrt_t(&self) -> &Q {
        &self.sqrt_t
    }

    /// `q^(m/2) = s^m`.
    pub fn s_pow(&self, m: i64) -> Q {
        pow(&self.s, m)
    }

    /// `q^m`.
    pub fn q_pow(&self, m: i64) -> Q {
        pow(&self.q, m)
    }

    /// `t^m`.
    pub fn t_pow(&self, m: i64) -> Q {
        pow(&self.t, m)
    }

    /// Same `s` and `g` with a different `xi`.
    pub fn with_xi(&self, xi: Q) -> Result<Self> {
        Self::new(self.s.clone(), self.g, xi)
    }
}

impl fmt::Display for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} g={} xi={}", self.s, self.g, self.xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qpochhammer_small_cases() {
        let q = frac(1, 4);
        assert_eq!(qpochhammer(&frac(1, 2), &q, 0).unwrap(), int(1));
        assert_eq!(qpochhammer(&frac(1, 4), &q, 2).unwrap(), frac(45, 64));
        assert_eq!(qpochhammer(&frac(1, 2), &q, -1).unwrap(), int(-1));
    }

    #[test]
    fn qpochhammer_negative_pole() {
        // a q^{-1} = 1
        let q = frac(1, 4);
        assert!(matches!(qpochhammer(&q, &q, -1), Err(Error::Pole(_))));
    }

    #[test]
    fn qbinomial_cases() {
        let q = frac(2, 7);
        assert_eq!(qbinomial(2, 1, &q), int(1) + &q);
        assert_eq!(qbinomial(3, 0, &q), int(1));
        assert_eq!(qbinomial(1, 2, &q), int(0));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse("3/5").unwrap(), frac(3, 5));
        assert_eq!(parse("-2").unwrap(), int(-2));
        assert_eq!(parse(" 4/6 ").unwrap().to_string(), "2/3");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn context_half_powers() {
        let ctx = QContext::from_parts(1, 3, 2, 3, 2).unwrap();
        assert_eq!(ctx.q(), &frac(1, 9));
        assert_eq!(ctx.t(), &frac(1, 81));
        assert_eq!(ctx.sqrt_t(), &frac(1, 9));
        assert_eq!(ctx.s_pow(-3), int(27));
        assert!(QContext::from_parts(1, 1, 1, 1, 1).is_err());
        assert!(QContext::from_parts(1, 2, 0, 1, 1).is_err());
        assert!(QContext::from_parts(1, 2, 1, 0, 1).is_err());
    }
}
