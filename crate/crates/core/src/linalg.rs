//! Exact linear algebra over `Q` by fraction-free (Bareiss) elimination.
//!
//! Rows are first scaled to integers; elimination then stays in `Z` with
//! exact divisions by the previous pivot, and only back-substitution goes
//! back to rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Integer row echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = row
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    (ints, lcm)
}

/// Fraction-free forward elimination over the first `ncols` columns.
fn bareiss(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let pivot = rows[r][c].clone();
        for i in r + 1..nrows {
            let factor = rows[i][c].clone();
            for j in 0..rows[i].len() {
                let v = &pivot * &rows[i][j] - &factor * &rows[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                rows[i][j] = q;
            }
        }
        pivots.push((r, c));
        prev = pivot;
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let ncols = a[0].len();
    let rows = a.iter().map(|r| integer_row(r).0).collect();
    bareiss(rows, ncols).pivots.len()
}

pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    let rows = a
        .iter()
        .map(|r| {
            let (ints, l) = integer_row(r);
            scale *= l;
            ints
        })
        .collect();
    let e = bareiss(rows, n);
    if e.pivots.len() < n {
        return Rational::zero();
    }
    let last = e.rows[n - 1][n - 1].clone();
    let sign = if e.swaps.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Rational::new(sign * last, scale)
}

/// One solution of `A x = b`, with free variables set to zero; `None` when
/// the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, Vec::len);
    let rows = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut full = r.clone();
            full.push(bi.clone());
            integer_row(&full).0
        })
        .collect();
    let e = bareiss(rows, ncols);
    let rank = e.pivots.len();
    if e.rows[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for &(r, c) in e.pivots.iter().rev() {
        let row = &e.rows[r];
        let mut acc = Rational::from_integer(row[ncols].clone());
        for j in c + 1..ncols {
            if !row[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from_integer(row[c].clone());
    }
    Some(x)
}

/// A basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let rows = a.iter().map(|r| integer_row(r).0).collect();
    let e = bareiss(rows, ncols);
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for &(r, c) in e.pivots.iter().rev() {
            let row = &e.rows[r];
            let mut acc = Rational::zero();
            for j in c + 1..ncols {
                if !row[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = acc / Rational::from_integer(row[c].clone());
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
            .collect()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        let a = vec![vec![ratio(1, 2), int(1)], vec![int(1), ratio(1, 3)]];
        assert_eq!(determinant(&a), ratio(1, 6) - int(1));
        assert_eq!(determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])), int(4));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let sing = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&sing, &[int(1), int(3)]), None);
        let x = solve(&sing, &[int(1), int(2)]).unwrap();
        assert_eq!(mat_vec(&sing, &x), vec![int(1), int(2)]);
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        let a = m(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 0, 0, 5]]);
        assert_eq!(rank(&a), 2);
        let b = vec![int(1), int(3), int(5)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
    }

    #[test]
    fn nullspace_basis() {
        let a = m(&[&[1, 1, 0]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(mat_vec(&a, v), vec![int(0)]);
        }
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert_eq!(nullspace(&[], 2).len(), 2);
    }
}
