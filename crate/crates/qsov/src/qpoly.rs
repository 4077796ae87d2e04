//! Continuous q-ultraspherical polynomials `C_n(cos θ; β | q)` as reflexive
//! Laurent polynomials in `w = e^{iθ}`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::Laurent1;
use crate::scalar::{pow, qpoch, Q};

/// `C_n` from the terminating sum
/// `sum_k (β;q)_k (β;q)_{n-k} / ((q;q)_k (q;q)_{n-k}) w^{n-2k}`.
pub fn cq_sum(n: usize, beta: &Q, q: &Q) -> Laurent1 {
    let ratio: Vec<Q> = (0..=n).map(|k| qpoch(beta, q, k) / qpoch(q, q, k)).collect();
    Laurent1::from_terms((0..=n).map(|k| (n as i64 - 2 * k as i64, &ratio[k] * &ratio[n - k])))
}

/// `C_n` from the three-term recurrence
/// `2(1 - β q^m) ξ C_m = (1 - q^{m+1}) C_{m+1} + (1 - β² q^{m-1}) C_{m-1}`
/// with `C_0 = 1`, `C_1 = (1-β)/(1-q) (w + 1/w)`.
pub fn cq_recurrence(n: usize, beta: &Q, q: &Q) -> Laurent1 {
    let two_xi = Laurent1::from_terms([(1, Q::one()), (-1, Q::one())]);
    let mut prev = Laurent1::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_xi.scale(&((Q::one() - beta) / (Q::one() - q)));
    for m in 1..n as i64 {
        let a = Q::one() - beta * pow(q, m);
        let c = Q::one() - beta * beta * pow(q, m - 1);
        let lead = Q::one() - pow(q, m + 1);
        let next = (&(&two_xi * &cur).scale(&a) - &prev.scale(&c)).scale(&lead.recip());
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients `c_n` of `(βu; q)_∞ / (u; q)_∞ = sum_n c_n u^n` for `n <= order`,
/// from the functional equation `F(u) (1 - u) = F(qu) (1 - βu)`, which gives
/// `c_n (1 - q^n) = c_{n-1} (1 - β q^{n-1})`.
pub fn q_binomial_series(order: usize, beta: &Q, q: &Q) -> Vec<Q> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(Q::one());
    for n in 1..=order {
        let prev = &out[n - 1];
        let c = prev * (Q::one() - beta * pow(q, n as i64 - 1)) / (Q::one() - pow(q, n as i64));
        out.push(c);
    }
    out
}

/// Multiplies the series of `(βwz;q)_∞/(wz;q)_∞` and `(βz/w;q)_∞/(z/w;q)_∞` in `z`
/// and checks that the coefficient of `z^n` is `C_n(w)` for every `n <= order`.
pub fn generating_function_check(order: usize, beta: &Q, q: &Q) -> Result<bool> {
    let c = q_binomial_series(order, beta, q);
    for n in 0..=order {
        let mut coeff = Laurent1::zero();
        for k in 0..=n {
            // (w z)^k from the first factor, (z / w)^{n-k} from the second.
            coeff.add_term(2 * k as i64 - n as i64, &c[k] * &c[n - k]);
        }
        let expected = cq_sum(n, beta, q);
        if coeff != expected {
            return Err(Error::IdentityViolation(format!(
                "generating function coefficient of z^{n}: {coeff:?} != {expected:?}"
            )));
        }
    }
    Ok(true)
}

/// Leading coefficient `(β;q)_n / (q;q)_n` of `C_n` at `w^n`.
pub fn leading_coefficient(n: usize, beta: &Q, q: &Q) -> Q {
    qpoch(beta, q, n) / qpoch(q, q, n)
}

/// Evaluates a reflexive polynomial in `w` at `ξ = (w + 1/w)/2` given as a rational
/// by expanding in powers of `2ξ`; used only to cross-check small cases.
pub fn eval_at_cos(p: &Laurent1, w_plus_inv: &Q) -> Q {
    // w^k + w^{-k} = T_k where T_0 = 2, T_1 = s, T_{k+1} = s T_k - T_{k-1}.
    let max = p.max_exp().unwrap_or(0).max(0) as usize;
    let mut tk = vec![Q::from_integer(2.into()), w_plus_inv.clone()];
    for k in 2..=max {
        let next = w_plus_inv * &tk[k - 1] - &tk[k - 2];
        tk.push(next);
    }
    let mut total = p.coeff(0);
    for k in 1..=max {
        total += p.coeff(k as i64) * &tk[k];
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn low_degree_values() {
        let q = frac(1, 4);
        let beta = frac(1, 3);
        assert_eq!(cq_sum(0, &beta, &q), Laurent1::one());
        let c1 = (int(1) - &beta) / (int(1) - &q);
        assert_eq!(cq_sum(1, &beta, &q), Laurent1::from_terms([(1, c1.clone()), (-1, c1)]));
    }

    #[test]
    fn beta_equal_q_collapses() {
        let q = frac(2, 5);
        for n in 0..=8 {
            let c = cq_sum(n, &q, &q);
            assert_eq!(c.len(), n + 1);
            assert!(c.terms().all(|(_, v)| *v == int(1)));
        }
    }

    #[test]
    fn sum_matches_recurrence() {
        let q = frac(1, 9);
        let t = frac(1, 81);
        for n in 0..=8 {
            assert_eq!(cq_sum(n, &t, &q), cq_recurrence(n, &t, &q));
        }
    }

    #[test]
    fn generating_function_small_orders() {
        assert!(generating_function_check(0, &frac(1, 4), &frac(1, 4)).unwrap());
        assert!(generating_function_check(6, &frac(1, 4), &frac(1, 4)).unwrap());
        assert!(generating_function_check(6, &frac(1, 81), &frac(1, 9)).unwrap());
    }

    #[test]
    fn chebyshev_evaluation() {
        // C_2(ξ; q | q) = U_2(ξ) = 4ξ² - 1; at ξ = 1/2 (w + 1/w = 1) this is 0.
        let q = frac(1, 3);
        assert_eq!(eval_at_cos(&cq_sum(2, &q, &q), &int(1)), int(0));
    }
}
