//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! [`Laurent1`] is univariate, [`Laurent2`] bivariate. Zero coefficients are
//! never stored, so structural equality is polynomial equality.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{pow, Q};

/// Exponent of a monomial: an integer or a pair of integers.
pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Exponent for i64 {
    fn zero() -> Self {
        0
    }

    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for (i64, i64) {
    fn zero() -> Self {
        (0, 0)
    }

    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
}

/// Finite map from exponents to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, Q>,
}

pub type Laurent1 = Laurent<i64>;
pub type Laurent2 = Laurent<(i64, i64)>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(E::zero(), c)
    }

    pub fn monomial(e: E, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (E, Q)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &Q)> {
        self.terms.iter()
    }

    /// Adds `c * x^e`, deleting the entry if it cancels.
    pub fn add_term(&mut self, e: E, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c * x^shift * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q, shift: E) {
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            self.add_term(e.plus(shift), a * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn mul_monomial(&self, shift: E) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, a)| (e.plus(shift), a.clone())).collect() }
    }

    /// Exponent of the largest term in the natural (lexicographic) order.
    pub fn leading(&self) -> Option<(E, &Q)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn map_exponents<F: Fn(E, &Q) -> (E, Q)>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| f(*e, c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Laurent1 {
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `p(c y)`.
    pub fn scale_var(&self, c: &Q) -> Self {
        self.map_exponents(|e, a| (e, a * pow(c, e)))
    }

    /// `p(1/y)`.
    pub fn reflect(&self) -> Self {
        self.map_exponents(|e, a| (-e, a.clone()))
    }

    /// Invariance under `y -> 1/y`.
    pub fn is_reflexive(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn eval(&self, y: &Q) -> Q {
        self.terms.iter().map(|(e, c)| c * pow(y, *e)).fold(Q::zero(), |a, b| a + b)
    }

    /// Exact quotient in the Laurent ring; fails if the remainder is nonzero.
    pub fn divide_exact(&self, den: &Laurent1) -> Result<Laurent1> {
        let (dmin, dmax) = match (den.min_exp(), den.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotDivisible("division by the zero polynomial".into())),
        };
        let lead = den.coeff(dmax);
        let nmin = match self.min_exp() {
            Some(m) => m,
            None => return Ok(Laurent1::zero()),
        };
        let mut rem = self.clone();
        let mut quot = Laurent1::zero();
        while let Some(top) = rem.max_exp() {
            // Division of the polynomials y^{-nmin} self and y^{-dmin} den.
            if top - nmin < dmax - dmin {
                return Err(Error::NotDivisible(format!("nonzero remainder {rem:?}")));
            }
            let shift = top - dmax;
            let c = rem.coeff(top) / &lead;
            rem.add_scaled(den, &-&c, shift);
            quot.add_term(shift, c);
        }
        Ok(quot)
    }
}

impl Laurent2 {
    pub fn x1() -> Self {
        Self::monomial((1, 0), Q::one())
    }

    pub fn x2() -> Self {
        Self::monomial((0, 1), Q::one())
    }

    /// `c0 + c1 x_j` for `j` in {1, 2}.
    pub fn linear(j: usize, c0: Q, c1: Q) -> Self {
        let e = if j == 1 { (1, 0) } else { (0, 1) };
        Self::from_terms([((0, 0), c0), (e, c1)])
    }

    /// Embeds `f(x_j)` for `j` in {1, 2}.
    pub fn from_univariate(f: &Laurent1, j: usize) -> Self {
        Self::from_terms(f.terms().map(|(e, c)| (if j == 1 { (*e, 0) } else { (0, *e) }, c.clone())))
    }

    /// `f(x1) * g(x2)`.
    pub fn tensor(f: &Laurent1, g: &Laurent1) -> Self {
        let mut out = Self::zero();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                out.add_term((*a, *b), ca * cb);
            }
        }
        out
    }

    /// `p(x2, x1)`.
    pub fn swap(&self) -> Self {
        self.map_exponents(|(a, b), c| ((b, a), c.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|((a, b), c)| self.terms.get(&(*b, *a)) == Some(c))
    }

    /// `p(c1 x1, c2 x2)`.
    pub fn scale_vars(&self, c1: &Q, c2: &Q) -> Self {
        let mut cache1: BTreeMap<i64, Q> = BTreeMap::new();
        let mut cache2: BTreeMap<i64, Q> = BTreeMap::new();
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let p1 = cache1.entry(*a).or_insert_with(|| pow(c1, *a)).clone();
            let p2 = cache2.entry(*b).or_insert_with(|| pow(c2, *b)).clone();
            out.add_term((*a, *b), c * p1 * p2);
        }
        out
    }

    /// `p(k / x1, k / x2)`.
    pub fn invert_vars(&self, k: &Q) -> Self {
        self.map_exponents(|(a, b), c| ((-a, -b), c * pow(k, a + b)))
    }

    /// Smallest exponents of `x1` and `x2` over the support.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        let a = self.terms.keys().map(|e| e.0).min()?;
        let b = self.terms.keys().map(|e| e.1).min()?;
        Some((a, b))
    }

    /// Largest exponents of `x1` and `x2` over the support.
    pub fn max_exps(&self) -> Option<(i64, i64)> {
        let a = self.terms.keys().map(|e| e.0).max()?;
        let b = self.terms.keys().map(|e| e.1).max()?;
        Some((a, b))
    }

    pub fn eval(&self, x1: &Q, x2: &Q) -> Q {
        self.terms
            .iter()
            .map(|((a, b), c)| c * pow(x1, *a) * pow(x2, *b))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn eval_complex(
        &self,
        x1: num_complex::Complex64,
        x2: num_complex::Complex64,
    ) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|((a, b), c)| x1.powi(*a as i32) * x2.powi(*b as i32) * crate::scalar::to_f64(c))
            .sum()
    }

    /// Exact quotient in the Laurent ring. Both operands are shifted to genuine
    /// polynomials and divided in lexicographic order; a leading term that the
    /// divisor's leading term does not divide proves a nonzero remainder.
    pub fn divide_exact(&self, den: &Laurent2) -> Result<Laurent2> {
        let (m1, m2) = den
            .min_exps()
            .ok_or_else(|| Error::NotDivisible("division by the zero polynomial".into()))?;
        let num_min = match self.min_exps() {
            Some(m) => m,
            None => return Ok(Laurent2::zero()),
        };
        let d = den.mul_monomial((-m1, -m2));
        let mut rem = self.mul_monomial((-num_min.0, -num_min.1));
        let (dlead, dcoef) = {
            let (e, c) = d.leading().unwrap();
            (e, c.clone())
        };
        let mut quot = Laurent2::zero();
        while let Some(((a, b), c)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if a < dlead.0 || b < dlead.1 {
                return Err(Error::NotDivisible(format!(
                    "leading term x1^{a} x2^{b} of the remainder is not divisible"
                )));
            }
            let shift = (a - dlead.0, b - dlead.1);
            let c = c / &dcoef;
            rem.add_scaled(&d, &-&c, shift);
            quot.add_term(shift, c);
        }
        Ok(quot.mul_monomial((num_min.0 - m1, num_min.1 - m2)))
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<E: Exponent> SubAssign<&Laurent<E>> for Laurent<E> {
    fn sub_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<E: Exponent> Add<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;

    fn add(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> Sub<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;

    fn sub(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<E: Exponent> Mul<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;

    fn mul(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            out.add_scaled(rhs, c, *e);
        }
        out
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;

    fn neg(self) -> Laurent<E> {
        self.scale(&-Q::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<E: Exponent> $tr<Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;

            fn $method(self, rhs: Laurent<E>) -> Laurent<E> {
                (&self).$method(&rhs)
            }
        }

        impl<E: Exponent> $tr<&Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;

            fn $method(self, rhs: &Laurent<E>) -> Laurent<E> {
                (&self).$method(rhs)
            }
        }

        impl<E: Exponent> $tr<Laurent<E>> for &Laurent<E> {
            type Output = Laurent<E>;

            fn $method(self, rhs: Laurent<E>) -> Laurent<E> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;

    fn neg(self) -> Laurent<E> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn x1() -> Laurent2 {
        Laurent2::x1()
    }

    fn x2() -> Laurent2 {
        Laurent2::x2()
    }

    #[test]
    fn difference_of_squares() {
        let num = &(&x1() * &x1()) - &(&x2() * &x2());
        let den = &x1() - &x2();
        assert_eq!(num.divide_exact(&den).unwrap(), &x1() + &x2());
    }

    #[test]
    fn monomial_division() {
        let num = &x1() * &x2();
        assert_eq!(num.divide_exact(&x1()).unwrap(), x2());
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        let p = Laurent2::from_terms([((-2, 1), int(3)), ((0, -1), frac(1, 2)), ((1, 1), int(-1))]);
        let d = Laurent2::from_terms([((1, 0), int(1)), ((0, 1), frac(-2, 3)), ((-1, -1), int(5))]);
        assert_eq!((&p * &d).divide_exact(&d).unwrap(), p);
    }

    #[test]
    fn non_divisible_is_reported() {
        let num = &x1() + &Laurent2::one();
        assert!(matches!(num.divide_exact(&(&x1() - &x2())), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn scaling_and_symmetry() {
        let q = frac(1, 4);
        let p = &x1() + &x2();
        assert_eq!(p.scale_vars(&q, &int(1)), &x1().scale(&q) + &x2());
        let inv = Laurent2::monomial((-1, -1), int(1));
        assert_eq!(inv.scale_vars(&q, &q), inv.scale(&int(16)));
        assert!(p.is_symmetric());
        assert!(!x1().is_symmetric());
    }

    #[test]
    fn univariate_division() {
        let f = Laurent1::from_terms([(-1, int(2)), (0, int(1)), (3, frac(1, 3))]);
        let d = Laurent1::from_terms([(0, int(1)), (1, frac(-1, 2))]);
        assert_eq!((&f * &d).divide_exact(&d).unwrap(), f);
        let g = Laurent1::from_terms([(0, int(1)), (1, int(1))]);
        assert!(g.divide_exact(&d).is_err());
    }
}
