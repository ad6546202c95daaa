//! Exact linear algebra over the rationals: rank, determinant, nullspace.

use crate::poly::Rational;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Rectangular matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl ExactMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> ExactMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows, cols }
    }

    pub fn zeros(n: usize, m: usize) -> ExactMatrix {
        ExactMatrix {
            rows: vec![vec![Rational::zero(); m]; n],
            cols: m,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    /// Row echelon reduction in place; returns pivot column indices.
    fn echelonize(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows.len() {
                break;
            }
            let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(row, p);
            let inv = rows[row][col].recip();
            for j in col..cols {
                let v = &rows[row][j] * &inv;
                rows[row][j] = v;
            }
            for r in 0..rows.len() {
                if r != row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for j in col..cols {
                        let v = &rows[r][j] - &factor * &rows[row][j];
                        rows[r][j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        Self::echelonize(&mut rows, self.cols).len()
    }

    /// Determinant; panics unless square.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows.len(), self.cols, "determinant of non-square matrix");
        let n = self.cols;
        let mut rows = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                rows.swap(col, p);
                det = -det;
            }
            det *= &rows[col][col];
            let inv = rows[col][col].recip();
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] * &inv;
                for j in col..n {
                    let v = &rows[r][j] - &factor * &rows[col][j];
                    rows[r][j] = v;
                }
            }
        }
        det
    }

    /// Basis of the right nullspace {x : Mx = 0}, each vector normalized to
    /// primitive integer form with positive leading entry.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut rows = self.rows.clone();
        let pivots = Self::echelonize(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fcol in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[fcol] = Rational::one();
            for (r, &pcol) in pivots.iter().enumerate() {
                x[pcol] = -rows[r][fcol].clone();
            }
            basis.push(normalize_primitive(x));
        }
        basis
    }
}

/// Scale a rational vector to integer entries with content 1 and positive
/// first nonzero entry.
pub fn normalize_primitive(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in &v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if !gcd.is_zero() {
        for n in ints.iter_mut() {
            *n = &*n / &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|n| !n.is_zero()) {
        if first.is_negative() {
            for n in ints.iter_mut() {
                *n = -n.clone();
            }
        }
    }
    ints.into_iter().map(Rational::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rank(), 3);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]).rank(), 2);
    }

    #[test]
    fn rank_matches_minor_oracle_on_random_matrices() {
        // Brute-force oracle: rank = size of the largest minor with
        // nonvanishing determinant.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let mm = rng.gen_range(1..=5);
            let a = ExactMatrix::new(
                (0..n)
                    .map(|_| (0..mm).map(|_| rat(rng.gen_range(-3..=3), 1)).collect())
                    .collect(),
            );
            assert_eq!(a.rank(), minor_rank(&a));
        }
    }

    fn minor_rank(a: &ExactMatrix) -> usize {
        let n = a.num_rows();
        let m = a.num_cols();
        for k in (1..=n.min(m)).rev() {
            for rows in combinations(n, k) {
                for cols in combinations(m, k) {
                    let sub = ExactMatrix::new(
                        rows.iter()
                            .map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect())
                            .collect(),
                    );
                    if !sub.det().is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn nullspace_is_primitive() {
        let a = m(&[&[1, 2, 3]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let dot: Rational = x
                .iter()
                .zip([1, 2, 3])
                .map(|(v, c)| v * rat_int(c))
                .sum();
            assert!(dot.is_zero());
        }
    }
}
