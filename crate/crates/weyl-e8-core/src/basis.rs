//! The weight/index basis construction: a general ansatz in the a-alphabet,
//! the negative-c0-power constraint system, and the generator counts of the
//! omega = 0 subring.

use crate::jacobi_ring::{ab_to_cd, is_jacobi_form, Frame, JacobiPolynomial};
use crate::linalg::ExactMatrix;
use crate::poly::{var, Poly, Rational, Var};
use num::{One, Zero};
use std::collections::BTreeMap;

/// The a-alphabet with (weight, index) grades.
fn graded_vars() -> Vec<(Var, i64, i64)> {
    let mut v = Vec::new();
    for i in [0i64, 2, 3, 4] {
        v.push((var(&format!("a{i}")), 4 - 6 * i, i));
    }
    for j in 0..=6i64 {
        v.push((var(&format!("b{j}")), 6 - 6 * j, j));
    }
    v
}

/// All a-alphabet monomials of weight `k` and index `m`, in a deterministic
/// order.
pub fn enumerate_monomials(k: i64, m: i64) -> Vec<Poly> {
    if m < 0 {
        return Vec::new();
    }
    let vars = graded_vars();
    // positive-index variables first; a0 and b0 are fixed afterwards by the
    // remaining weight r = 4 x + 6 y
    let positive: Vec<(Var, i64, i64)> = vars
        .iter()
        .filter(|&&(_, _, idx)| idx > 0)
        .copied()
        .collect();
    let mut out = Vec::new();
    let mut exps: Vec<i32> = vec![0; positive.len()];
    fn rec(
        positive: &[(Var, i64, i64)],
        pos: usize,
        m_left: i64,
        k_used: i64,
        exps: &mut Vec<i32>,
        k: i64,
        out: &mut Vec<Poly>,
    ) {
        if pos == positive.len() {
            if m_left != 0 {
                return;
            }
            let r = k - k_used;
            if r < 0 {
                return;
            }
            for y in 0..=r / 6 {
                let rem = r - 6 * y;
                if rem % 4 != 0 {
                    continue;
                }
                let x = rem / 4;
                let mut p = Poly::one();
                for (&(v, _, _), &e) in positive.iter().zip(exps.iter()) {
                    if e > 0 {
                        p = p.mul(&Poly::monomial(v, e, Rational::one()));
                    }
                }
                if x > 0 {
                    p = p.mul(&Poly::monomial(var("a0"), x as i32, Rational::one()));
                }
                if y > 0 {
                    p = p.mul(&Poly::monomial(var("b0"), y as i32, Rational::one()));
                }
                out.push(p);
            }
            return;
        }
        let (_, w, idx) = positive[pos];
        let mut e = 0i64;
        while e * idx <= m_left {
            exps[pos] = e as i32;
            rec(positive, pos + 1, m_left - e * idx, k_used + e * w, exps, k, out);
            e += 1;
        }
        exps[pos] = 0;
    }
    rec(&positive, 0, m, 0, &mut exps, k, &mut out);
    out
}

/// A basis of the space of weak Jacobi forms of weight `k` and index `m`,
/// as a-frame polynomials with primitive integer coefficients.
pub struct BasisResult {
    pub basis: Vec<JacobiPolynomial>,
    pub dimension: usize,
}

/// Coefficient row of `p` over the fixed column keying of `columns`,
/// extending `columns` with unseen monomials.
fn coefficient_row(
    p: &Poly,
    columns: &mut BTreeMap<Vec<(Var, i32)>, usize>,
    rows: &mut Vec<Vec<(usize, Rational)>>,
    filter: impl Fn(&[(Var, i32)]) -> bool,
) {
    let alphabet: Vec<Var> = p.alphabet().to_vec();
    let mut entries = Vec::new();
    for (mono, coeff) in p.terms() {
        let key: Vec<(Var, i32)> = alphabet
            .iter()
            .zip(mono.0.iter())
            .filter(|&(_, &e)| e != 0)
            .map(|(&v, &e)| (v, e))
            .collect();
        if !filter(&key) {
            continue;
        }
        let next = columns.len();
        let col = *columns.entry(key).or_insert(next);
        entries.push((col, coeff.clone()));
    }
    rows.push(entries);
}

fn sparse_to_matrix(rows: &[Vec<(usize, Rational)>], cols: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row {
            m.set(i, *j, c.clone());
        }
    }
    m
}

/// Steps (1)-(3) of the construction: general ansatz, kill all negative
/// powers of c0 after translation, return the solution space.
pub fn jacobi_basis(k: i64, m: i64) -> BasisResult {
    let monomials = enumerate_monomials(k, m);
    if monomials.is_empty() {
        return BasisResult {
            basis: Vec::new(),
            dimension: 0,
        };
    }
    let c0 = var("c0");
    // constraint matrix: one row per c-alphabet monomial with a negative c0
    // exponent, one column per ansatz monomial
    let mut constraint_cols: BTreeMap<Vec<(Var, i32)>, usize> = BTreeMap::new();
    let mut per_monomial: Vec<Vec<(usize, Rational)>> = Vec::new();
    for mono in &monomials {
        coefficient_row(
            &ab_to_cd(mono),
            &mut constraint_cols,
            &mut per_monomial,
            |key| key.iter().any(|&(v, e)| v == c0 && e < 0),
        );
    }
    // transpose: constraints are rows, ansatz coefficients are unknowns
    let mut matrix = ExactMatrix::zeros(constraint_cols.len(), monomials.len());
    for (j, row) in per_monomial.iter().enumerate() {
        for (i, c) in row {
            matrix.set(*i, j, c.clone());
        }
    }
    let nullspace = matrix.nullspace();
    let basis = nullspace
        .into_iter()
        .map(|x| {
            let mut p = Poly::zero();
            for (coeff, mono) in x.iter().zip(monomials.iter()) {
                if !coeff.is_zero() {
                    p = p.add(&mono.scale(coeff));
                }
            }
            JacobiPolynomial::from_poly(p, Frame::AB).expect("basis element is homogeneous")
        })
        .collect::<Vec<_>>();
    for b in &basis {
        debug_assert!(is_jacobi_form(b).unwrap());
    }
    BasisResult {
        dimension: basis.len(),
        basis,
    }
}

/// Rank of the span of a family of polynomials, by exact elimination on
/// their coefficient vectors.
pub fn span_rank(polys: &[Poly]) -> usize {
    let mut columns: BTreeMap<Vec<(Var, i32)>, usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for p in polys {
        coefficient_row(p, &mut columns, &mut rows, |_| true);
    }
    sparse_to_matrix(&rows, columns.len()).rank()
}

/// Number of new generators of the omega = 0 subring at each index
/// m = 0..=max_m: dim J_{-4m,m} minus the rank of products of lower-index
/// basis elements. The unit (m = 0) is not counted as a generator.
pub fn lb_generator_counts(max_m: i64) -> Vec<usize> {
    let mut bases: Vec<Vec<JacobiPolynomial>> = Vec::new();
    let mut counts = Vec::new();
    for m in 0..=max_m {
        let result = jacobi_basis(-4 * m, m);
        if m == 0 {
            counts.push(0);
            bases.push(result.basis);
            continue;
        }
        // span of pairwise products of full lower-index bases; products of
        // more factors are themselves products of a basis element at the
        // combined index, so pairs suffice
        let mut products = Vec::new();
        for m2 in 1..m {
            let m3 = m - m2;
            if m3 < m2 {
                break;
            }
            for p in &bases[m2 as usize] {
                for q in &bases[m3 as usize] {
                    products.push(p.poly.mul(&q.poly));
                }
            }
        }
        counts.push(result.dimension - span_rank(&products));
        bases.push(result.basis);
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn enumeration_examples() {
        let single = enumerate_monomials(4, 1);
        assert_eq!(single, vec![parse_poly("a0*b1").unwrap()]);
        assert_eq!(enumerate_monomials(0, 0), vec![Poly::one()]);
        assert_eq!(enumerate_monomials(4, 0), vec![parse_poly("a0").unwrap()]);
        assert!(enumerate_monomials(-2, 1).is_empty());
    }

    #[test]
    fn basis_examples() {
        let b = jacobi_basis(4, 1);
        assert_eq!(b.dimension, 1);
        assert_eq!(b.basis[0].poly, parse_poly("a0*b1").unwrap());
        assert_eq!(jacobi_basis(-2, 1).dimension, 0);
        assert_eq!(jacobi_basis(-8, 2).dimension, 0);
    }

    #[test]
    fn basis_elements_are_members_with_right_grades() {
        for (k, m) in [(0i64, 2i64), (4, 2), (-16, 4), (-24, 6)] {
            let b = jacobi_basis(k, m);
            for e in &b.basis {
                assert!(is_jacobi_form(e).unwrap());
                let g = e.grade().unwrap();
                assert_eq!((g.k, g.m), (k, m));
            }
        }
    }

    #[test]
    fn negative_order_cells_are_empty() {
        for (k, m) in [(-6, 1), (-10, 2), (-14, 3), (-20, 4)] {
            assert_eq!(jacobi_basis(k, m).dimension, 0, "k={k} m={m}");
        }
    }

    #[test]
    fn lb_counts_low_indices() {
        assert_eq!(lb_generator_counts(6), vec![0, 0, 0, 0, 1, 0, 2]);
    }
}
