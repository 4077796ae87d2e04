//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::scalar::Q;

/// Rank of a dense matrix given as rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..ncols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the kernel of the matrix (number of columns minus rank).
pub fn nullity(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    ncols - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&m), 1);
        assert_eq!(nullity(&m), 1);
        let id = vec![vec![int(1), int(0)], vec![int(0), int(3)], vec![int(1), int(1)]];
        assert_eq!(rank(&id), 2);
    }
}
