use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_traits::{One, Zero};

use crate::scalar::{to_f64, Q};

const TERMS: usize = 40;

/// `B_n / (n+1)!` for `n < TERMS`, from exact Bernoulli numbers.
fn bernoulli_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut b: Vec<Q> = vec![Q::one()];
        let mut row = vec![BigInt::one(); 2];
        for m in 1..TERMS {
            // row m+1 of Pascal's triangle; Σ_{k<=m} C(m+1,k) B_k = 0
            let mut next = vec![BigInt::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            let s = (0..m).fold(Q::zero(), |acc, k| acc + Q::from_integer(row[k].clone()) * &b[k]);
            b.push(-s / Q::from_integer(row[m].clone()));
        }
        let mut fact = BigInt::one();
        b.iter()
            .enumerate()
            .map(|(n, bn)| {
                fact *= BigInt::from(n + 1);
                to_f64(&(bn / Q::from_integer(fact.clone())))
            })
            .collect()
    })
}

fn series_in_log(z: C64) -> C64 {
    let w = -(C64::new(1.0, 0.0) - z).ln();
    let mut pw = w;
    let mut sum = C64::new(0.0, 0.0);
    for c in bernoulli_coefficients() {
        sum += pw * c;
        pw *= w;
    }
    sum
}

/// Euler's dilogarithm `Li_2(z) = Σ z^k / k²` on its principal branch, cut
/// along `(1, ∞)`.
pub fn dilog(z: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    let zeta2 = PI * PI / 6.0;
    if z == C64::new(0.0, 0.0) {
        return z;
    }
    if z == one {
        return zeta2.into();
    }
    if z.norm() > 1.0 {
        let l = (-z).ln();
        return -l * l / 2.0 - zeta2 - dilog(z.inv());
    }
    if z.re > 0.5 {
        return -z.ln() * (one - z).ln() + zeta2 - dilog(one - z);
    }
    series_in_log(z)
}
