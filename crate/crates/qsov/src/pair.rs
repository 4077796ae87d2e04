use std::fmt;

use crate::error::{Error, Result};

/// An ordered integer pair `l1 <= l2` indexing polynomials, bases and matrix rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub l1: i64,
    pub l2: i64,
}

impl Pair {
    pub fn new(l1: i64, l2: i64) -> Result<Self> {
        if l1 > l2 {
            return Err(Error::InvalidParameter(format!("pair ({l1},{l2}) needs l1 <= l2")));
        }
        Ok(Pair { l1, l2 })
    }

    /// Builds the pair from two exponents in either order.
    pub fn sorted(a: i64, b: i64) -> Self {
        Pair { l1: a.min(b), l2: a.max(b) }
    }

    /// `|lambda| = l1 + l2`.
    pub fn size(&self) -> i64 {
        self.l1 + self.l2
    }

    /// `lambda_21 = l2 - l1`.
    pub fn width(&self) -> i64 {
        self.l2 - self.l1
    }

    /// `(-l2, -l1)`.
    pub fn bar(&self) -> Self {
        Pair { l1: -self.l2, l2: -self.l1 }
    }

    /// `self ≺ other`: `other.l1 <= self.l1 <= self.l2 <= other.l2`.
    pub fn precedes(&self, other: &Pair) -> bool {
        other.l1 <= self.l1 && self.l2 <= other.l2
    }

    /// All `nu ≺ self`, ordered by `(l1, l2)`.
    pub fn below(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        for a in self.l1..=self.l2 {
            for b in a..=self.l2 {
                out.push(Pair { l1: a, l2: b });
            }
        }
        out
    }

    /// All pairs with `width <= max_width` and both parts in `[-bound, bound]`.
    pub fn grid(max_width: i64, bound: i64) -> Vec<Pair> {
        let mut out = Vec::new();
        for l1 in -bound..=bound {
            for l2 in l1..=(l1 + max_width).min(bound) {
                out.push(Pair { l1, l2 });
            }
        }
        out
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l1, self.l2)
    }
}

impl std::str::FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("expected a pair like \"0,2\", got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Pair::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_grid() {
        let lam = Pair::new(-1, 2).unwrap();
        assert!(Pair::new(0, 1).unwrap().precedes(&lam));
        assert!(!Pair::new(-2, 1).unwrap().precedes(&lam));
        assert_eq!(lam.below().len(), 10);
        assert_eq!(Pair::grid(6, 6).len(), 70);
        assert_eq!(lam.bar(), Pair::new(-2, 1).unwrap());
        assert!(Pair::new(2, 1).is_err());
        assert_eq!("-2, 3".parse::<Pair>().unwrap(), Pair::new(-2, 3).unwrap());
    }
}
