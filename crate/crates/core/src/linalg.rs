//! Exact integer linear algebra used for adjoint ranks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                for j in c + 1..cols {
                    m[i][j] = &m[i][j] * &m[r][c] / &prev;
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(mat(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(mat(&[&[0, 0, 3], &[0, 2, 6], &[1, 0, 0]])), 3);
        assert_eq!(rank(mat(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]])), 2);
    }

    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut r = 0;
        for c in 0..m.first().map_or(0, |x| x.len()) {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..m[i].len() {
                        let v = &f * &m[r][j];
                        m[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..300 {
            let (h, w) = (1 + (next() + 3) as usize, 1 + (next() + 3) as usize);
            let mut rows: Vec<Vec<i64>> = (0..h).map(|_| (0..w).map(|_| next()).collect()).collect();
            // Planted dependency and a zero column keep the rank deficient.
            if h > 2 {
                let (a, b) = (next(), next());
                rows[h - 1] = (0..w).map(|j| a * rows[0][j] + b * rows[1][j]).collect();
            }
            if w > 1 {
                for row in rows.iter_mut() {
                    row[0] = 0;
                }
            }
            let m = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            assert_eq!(rank(m), rational_rank(&rows), "{rows:?}");
        }
    }
}
