//! Dense matrices over the rationals with fraction-free elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, rat, Rational};
use crate::error::{Error, Result};

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns over {}",
                self.cols, below.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_rows(rows.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        bareiss(integer_rows(self), false).rank
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let e = &self.entries;
        Ok(match self.rows {
            0 => Rational::one(),
            1 => e[0].clone(),
            2 => &e[0] * &e[3] - &e[1] * &e[2],
            n => {
                let mut scale = BigInt::one();
                let rows: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        let row = self.row(i);
                        let l = denominator_lcm(row);
                        let ints = row
                            .iter()
                            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                            .collect();
                        scale *= l;
                        ints
                    })
                    .collect();
                let out = bareiss(rows, true);
                if out.rank < n {
                    Rational::zero()
                } else {
                    let mut d = out.last_pivot;
                    if out.swaps % 2 == 1 {
                        d = -d;
                    }
                    Rational::new(d, scale)
                }
            }
        })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column of the
    /// reduced row echelon form.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = a[(row, col)].recip();
            for j in 0..self.cols {
                a[(row, j)] = &a[(row, j)] * &inv;
            }
            for r in 0..self.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..self.cols {
                    let t = &f * &a[(row, j)];
                    a[(r, j)] -= t;
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a[(r, free)].clone();
                }
                x
            })
            .collect()
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Adjugate of a 2x2 matrix; equals the inverse when the determinant is 1.
    pub fn adjugate_2x2(&self) -> Self {
        assert!(self.rows == 2 && self.cols == 2);
        let e = &self.entries;
        Self {
            rows: 2,
            cols: 2,
            entries: vec![e[3].clone(), -e[1].clone(), -e[2].clone(), e[0].clone()],
        }
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &RMatrix {
    type Output = RMatrix;

    fn mul(self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = RMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

fn integer_rows(m: &RMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = Rational::from_integer(denominator_lcm(row));
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect()
}

struct Elimination {
    rank: usize,
    swaps: usize,
    last_pivot: BigInt,
}

/// Fraction-free (Bareiss) row echelon reduction over the integers.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact. With `square_only` set, the reduction stops as
/// soon as a column has no pivot (the determinant is then zero).
fn bareiss(mut m: Vec<Vec<BigInt>>, square_only: bool) -> Elimination {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            if square_only {
                break;
            }
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let num = &pivot_row[col] * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                row[j] = num / &prev;
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    Elimination {
        rank,
        swaps,
        last_pivot: prev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;
    use proptest::prelude::*;

    /// Plain rational Gaussian elimination, kept independent of `bareiss`.
    fn oracle_rank(m: &RMatrix) -> usize {
        let mut a = m.row_vecs();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..a.len() {
                let f = &a[r][col] / &a[rank][col];
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
            }
            rank += 1;
        }
        rank
    }

    fn oracle_det(m: &RMatrix) -> Rational {
        // Leibniz expansion over permutations.
        let n = m.rows();
        let mut total = Rational::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(k: usize, perm: &mut Vec<usize>, sign: i64, m: &RMatrix, total: &mut Rational) {
            let n = perm.len();
            if k == n {
                let mut p = rat(sign);
                for (i, &j) in perm.iter().enumerate() {
                    p *= &m[(i, j)];
                }
                *total += p;
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, if i == k { sign } else { -sign }, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, 1, m, &mut total);
        total
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RMatrix::identity(2).rank(), 2);
        assert_eq!(RMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn det_examples() {
        assert_eq!(
            RMatrix::from_i64(&[&[1, 2], &[3, 4]]).det().unwrap(),
            rat(-2)
        );
        assert_eq!(RMatrix::identity(5).det().unwrap(), rat(1));
        assert_eq!(
            RMatrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(),
            rat(-1)
        );
        let p = RMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert_eq!(p.det().unwrap(), rat(1));
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(
            RMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn fractional_entries() {
        let m = RMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3), rat(0)],
            vec![frac(2, 5), rat(1), frac(-1, 7)],
            vec![rat(3), frac(1, 4), rat(2)],
        ]);
        assert_eq!(m.det().unwrap(), oracle_det(&m));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RMatrix::identity(3));
    }

    #[test]
    fn inverse_of_singular_fails() {
        assert_eq!(
            RMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        );
    }

    fn small_matrix(max_dim: usize) -> impl Strategy<Value = RMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| RMatrix::new(r, c, v.into_iter().map(rat).collect()).unwrap())
        })
    }

    fn low_rank_matrix() -> impl Strategy<Value = RMatrix> {
        (1usize..6, 1usize..6, 1usize..4).prop_flat_map(|(r, c, k)| {
            (
                proptest::collection::vec(-4i64..=4, r * k),
                proptest::collection::vec(-4i64..=4, k * c),
            )
                .prop_map(move |(p, q)| {
                    let p = RMatrix::new(r, k, p.into_iter().map(rat).collect()).unwrap();
                    let q = RMatrix::new(k, c, q.into_iter().map(rat).collect()).unwrap();
                    &p * &q
                })
        })
    }

    fn square_pair() -> impl Strategy<Value = (RMatrix, RMatrix)> {
        (1usize..5).prop_flat_map(|n| {
            (
                proptest::collection::vec(-9i64..=9, n * n),
                proptest::collection::vec(-9i64..=9, n * n),
            )
                .prop_map(move |(a, b)| {
                    (
                        RMatrix::new(n, n, a.into_iter().map(rat).collect()).unwrap(),
                        RMatrix::new(n, n, b.into_iter().map(rat).collect()).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rank_equals_rank_of_transpose(m in small_matrix(6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_matches_oracle(m in small_matrix(6)) {
            prop_assert_eq!(m.rank(), oracle_rank(&m));
        }
    }

    proptest! {
        #[test]
        fn rank_of_products_matches_oracle(m in low_rank_matrix()) {
            prop_assert_eq!(m.rank(), oracle_rank(&m));
        }

        #[test]
        fn det_is_multiplicative((a, b) in square_pair()) {
            let ab = &a * &b;
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
            prop_assert_eq!(a.det().unwrap(), oracle_det(&a));
        }

        #[test]
        fn null_space_is_annihilated(m in small_matrix(5)) {
            let basis = m.null_space();
            prop_assert_eq!(basis.len(), m.cols() - m.rank());
            for x in basis {
                let col = RMatrix::new(x.len(), 1, x).unwrap();
                prop_assert!((&m * &col).is_zero());
            }
        }
    }
}
