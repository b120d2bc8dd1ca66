//! Generating invariants and the counting formulas for both actions.
//!
//! For `SL2 x SL2` on n-tuples of 2x2 matrices the generators are, in this
//! frozen canonical order:
//!
//! 1. `det(A_i)` for each `i`,
//! 2. `<A_i|A_j> = Tr(A_i) Tr(A_j) - Tr(A_i A_j)` for `i < j` (lexicographic),
//! 3. `xi(A_i, A_j, A_k, A_l)` for `i < j < k < l` (lexicographic), the
//!    coefficient of `e_i e_j e_k e_l` in `det [[e_i A_i, e_j A_j], [e_k A_k, e_l A_l]]`.
//!
//! For `SL_l` on `l x n` matrices the generators are the maximal minors,
//! column sets in lexicographic order.

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};

/// A point of the space of n-tuples of 2x2 matrices. Component `i` is
/// `[[a_i, b_i], [c_i, d_i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixTupleLR {
    matrices: Vec<RMatrix>,
}

impl MatrixTupleLR {
    pub fn new(matrices: Vec<RMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::ShapeMismatch("a tuple needs n >= 1 matrices".into()));
        }
        if let Some(i) = matrices.iter().position(|m| m.rows() != 2 || m.cols() != 2) {
            return Err(Error::ShapeMismatch(format!("component {i} is not 2x2")));
        }
        Ok(Self { matrices })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            matrices: vec![RMatrix::zeros(2, 2); n.max(1)],
        }
    }

    /// Builds a tuple from its four coordinate vectors.
    pub fn from_vectors(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> Self {
        let n = a.len();
        assert!(n >= 1 && b.len() == n && c.len() == n && d.len() == n);
        let matrices = (0..n)
            .map(|i| {
                RMatrix::from_rows(vec![
                    vec![a[i].clone(), b[i].clone()],
                    vec![c[i].clone(), d[i].clone()],
                ])
            })
            .collect();
        Self { matrices }
    }

    pub fn from_i64(ms: &[[[i64; 2]; 2]]) -> Self {
        Self::new(
            ms.iter()
                .map(|m| RMatrix::from_i64(&[&m[0], &m[1]]))
                .collect(),
        )
        .expect("non-empty tuple of 2x2 matrices")
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[RMatrix] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &RMatrix {
        &self.matrices[i]
    }

    /// Entry `(r, c)` of every component, as an n-vector.
    pub fn entry_vector(&self, r: usize, c: usize) -> Vec<Rational> {
        self.matrices.iter().map(|m| m[(r, c)].clone()).collect()
    }

    pub fn a(&self) -> Vec<Rational> {
        self.entry_vector(0, 0)
    }

    pub fn b(&self) -> Vec<Rational> {
        self.entry_vector(0, 1)
    }

    pub fn c(&self) -> Vec<Rational> {
        self.entry_vector(1, 0)
    }

    pub fn d(&self) -> Vec<Rational> {
        self.entry_vector(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(RMatrix::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.matrices.iter().all(|m| m[(1, 0)].is_zero())
    }
}

/// A point of the space of `l x n` matrices under left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftMatrix {
    matrix: RMatrix,
}

impl LeftMatrix {
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if matrix.rows() < 2 || matrix.cols() < 1 {
            return Err(Error::ShapeMismatch(format!(
                "left matrices need l >= 2 and n >= 1, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(RMatrix::from_i64(rows)).expect("valid left matrix")
    }

    pub fn l(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RMatrix {
        self.matrix
    }
}

/// Identifier of one generating invariant. Indices are 0-based; `Display`
/// prints them 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    Det(usize),
    Bracket(usize, usize),
    Xi(usize, usize, usize, usize),
    Minor(Vec<usize>),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::Det(i) => write!(f, "det({})", i + 1),
            GeneratorId::Bracket(i, j) => write!(f, "bracket({},{})", i + 1, j + 1),
            GeneratorId::Xi(i, j, k, l) => {
                write!(f, "xi({},{},{},{})", i + 1, j + 1, k + 1, l + 1)
            }
            GeneratorId::Minor(cols) => {
                let cols = cols.iter().map(|c| (c + 1).to_string()).join(",");
                write!(f, "minor({cols})")
            }
        }
    }
}

/// Values of the generating invariants of one tuple, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorVector {
    pub n: usize,
    pub dets: Vec<Rational>,
    pub brackets: Vec<Rational>,
    pub xis: Vec<Rational>,
}

impl GeneratorVector {
    pub fn len(&self) -> usize {
        self.dets.len() + self.brackets.len() + self.xis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Identifiers in canonical order.
    pub fn ids(&self) -> impl Iterator<Item = GeneratorId> {
        let n = self.n;
        (0..n)
            .map(GeneratorId::Det)
            .chain(
                (0..n)
                    .tuple_combinations()
                    .map(|(i, j)| GeneratorId::Bracket(i, j)),
            )
            .chain(
                (0..n)
                    .tuple_combinations()
                    .map(|(i, j, k, l)| GeneratorId::Xi(i, j, k, l)),
            )
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.dets.iter().chain(&self.brackets).chain(&self.xis)
    }

    pub fn entries(&self) -> impl Iterator<Item = (GeneratorId, &Rational)> {
        self.ids().zip(self.values())
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        Err(Error::IndexOutOfRange { index: i, size: n })
    } else {
        Ok(())
    }
}

fn check_increasing(idx: &[usize], n: usize) -> Result<()> {
    for &i in idx {
        check_index(i, n)?;
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::IndicesNotIncreasing(idx.to_vec()));
    }
    Ok(())
}

/// `det(A_i)`.
pub fn det_inv(a: &MatrixTupleLR, i: usize) -> Result<Rational> {
    check_index(i, a.n())?;
    a.get(i).det()
}

/// `Tr(A_i) Tr(A_j) - Tr(A_i A_j)` for `i < j`.
pub fn bracket(a: &MatrixTupleLR, i: usize, j: usize) -> Result<Rational> {
    check_increasing(&[i, j], a.n())?;
    Ok(bracket_unchecked(a.get(i), a.get(j)))
}

pub(crate) fn bracket_unchecked(x: &RMatrix, y: &RMatrix) -> Rational {
    x.trace() * y.trace() - (x * y).trace()
}

/// Multilinear coefficient `xi(A_i, A_j, A_k, A_l)` for `i < j < k < l`,
/// extracted by inclusion-exclusion over the 16 specialisations
/// `e_m ∈ {0, 1}` of the 4x4 block determinant.
pub fn xi(a: &MatrixTupleLR, i: usize, j: usize, k: usize, l: usize) -> Result<Rational> {
    check_increasing(&[i, j, k, l], a.n())?;
    Ok(xi_unchecked([a.get(i), a.get(j), a.get(k), a.get(l)]))
}

pub(crate) fn xi_unchecked(blocks: [&RMatrix; 4]) -> Rational {
    let mut total = Rational::zero();
    for mask in 0u32..16 {
        let mut m = RMatrix::zeros(4, 4);
        for (slot, block) in blocks.iter().enumerate() {
            if mask & (1 << slot) == 0 {
                continue;
            }
            let (r0, c0) = (2 * (slot / 2), 2 * (slot % 2));
            for r in 0..2 {
                for c in 0..2 {
                    m[(r0 + r, c0 + c)] = block[(r, c)].clone();
                }
            }
        }
        let det = m.det().expect("square");
        if (4 - mask.count_ones()) % 2 == 0 {
            total += det;
        } else {
            total -= det;
        }
    }
    total
}

/// All generator values in canonical order.
pub fn generators_lr(a: &MatrixTupleLR) -> GeneratorVector {
    let n = a.n();
    let m = a.matrices();
    GeneratorVector {
        n,
        dets: m.iter().map(|x| x.det().expect("2x2")).collect(),
        brackets: (0..n)
            .tuple_combinations()
            .map(|(i, j)| bracket_unchecked(&m[i], &m[j]))
            .collect(),
        xis: (0..n)
            .tuple_combinations()
            .map(|(i, j, k, l)| xi_unchecked([&m[i], &m[j], &m[k], &m[l]]))
            .collect(),
    }
}

/// Column sets of size `l` in lexicographic order.
pub fn minor_column_sets(l: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(l).collect()
}

/// All maximal minors; empty when `n < l` (the invariant ring is trivial).
pub fn minors_left(a: &LeftMatrix) -> Vec<Rational> {
    minor_column_sets(a.l(), a.n())
        .iter()
        .map(|cols| a.matrix().select_columns(cols).det().expect("square"))
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `(n⁴ - 6n³ + 23n² + 6n) / 24`.
pub fn generator_count_lr(n: u64) -> u64 {
    let n = n as i128;
    let num = n.pow(4) - 6 * n.pow(3) + 23 * n.pow(2) + 6 * n;
    debug_assert_eq!(num % 24, 0);
    (num / 24) as u64
}

/// Number of maximal minors, `C(n, l)`.
pub fn generator_count_left(l: u64, n: u64) -> u64 {
    binomial(n, l)
}

/// Krull dimension of the invariant ring of n-tuples of 2x2 matrices.
pub fn invariant_dim_lr(n: u64) -> u64 {
    match n {
        0 => 0,
        1 => 1,
        2 => 3,
        _ => 4 * n - 6,
    }
}

/// `ln - l² + 1` for `n >= l`, else 0.
pub fn invariant_dim_left(l: u64, n: u64) -> u64 {
    if n < l {
        0
    } else {
        l * n - l * l + 1
    }
}

/// `max(dim, 5n - 9)`.
pub fn lower_bound_lr(n: u64) -> u64 {
    let closed = 5 * n as i64 - 9;
    invariant_dim_lr(n).max(closed.max(0) as u64)
}

/// `max(dim, (2l - 2)n - 2(l² - l))`, defined for `n >= l`.
pub fn lower_bound_left(l: u64, n: u64) -> Result<u64> {
    if l < 2 {
        return Err(Error::OutOfRange(format!("l = {l} < 2")));
    }
    if n < l {
        return Err(Error::OutOfRange(format!("n = {n} < l = {l}")));
    }
    let closed = (2 * l as i64 - 2) * n as i64 - 2 * (l * l - l) as i64;
    Ok(invariant_dim_left(l, n).max(closed.max(0) as u64))
}

pub fn binomial_coefficient(n: u64, k: u64) -> u64 {
    binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn tuple(ms: &[[[i64; 2]; 2]]) -> MatrixTupleLR {
        MatrixTupleLR::from_i64(ms)
    }

    #[test]
    fn det_examples() {
        let a = tuple(&[[[1, 2], [3, 4]], [[0, 0], [0, 0]], [[1, 0], [0, 1]]]);
        assert_eq!(det_inv(&a, 0).unwrap(), rat(-2));
        assert_eq!(det_inv(&a, 1).unwrap(), rat(0));
        assert_eq!(det_inv(&a, 2).unwrap(), rat(1));
        assert_eq!(
            det_inv(&a, 3),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        );
    }

    #[test]
    fn bracket_examples() {
        let a = tuple(&[[[1, 2], [3, 4]], [[0, 1], [1, 0]], [[0, 0], [0, 0]]]);
        assert_eq!(bracket(&a, 0, 1).unwrap(), rat(-5));
        assert_eq!(bracket(&a, 0, 2).unwrap(), rat(0));
        let id = tuple(&[[[1, 0], [0, 1]], [[1, 0], [0, 1]]]);
        assert_eq!(bracket(&id, 0, 1).unwrap(), rat(2));
        assert!(matches!(
            bracket(&a, 1, 1),
            Err(Error::IndicesNotIncreasing(_))
        ));
        assert!(matches!(
            bracket(&a, 2, 1),
            Err(Error::IndicesNotIncreasing(_))
        ));
    }

    #[test]
    fn xi_examples() {
        let mut a = tuple(&[
            [[0, 0], [0, 0]],
            [[1, 2], [3, 4]],
            [[5, 6], [7, 8]],
            [[2, 1], [1, 3]],
        ]);
        assert_eq!(xi(&a, 0, 1, 2, 3).unwrap(), rat(0));
        a = tuple(&[
            [[1, 3], [0, 1]],
            [[1, -2], [0, 1]],
            [[1, 5], [0, 1]],
            [[1, 0], [0, 1]],
        ]);
        assert_eq!(xi(&a, 0, 1, 2, 3).unwrap(), rat(-2));
        assert!(matches!(
            xi(&a, 0, 2, 1, 3),
            Err(Error::IndicesNotIncreasing(_))
        ));
    }

    #[test]
    fn generator_lengths() {
        assert_eq!(generators_lr(&MatrixTupleLR::zeros(1)).len(), 1);
        assert_eq!(generators_lr(&MatrixTupleLR::zeros(4)).len(), 11);
        assert_eq!(generators_lr(&MatrixTupleLR::zeros(5)).len(), 20);
        let ids: Vec<String> = generators_lr(&MatrixTupleLR::zeros(4))
            .ids()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(ids[0], "det(1)");
        assert_eq!(ids[4], "bracket(1,2)");
        assert_eq!(ids[10], "xi(1,2,3,4)");
    }

    #[test]
    fn minors_examples() {
        let a = LeftMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(minors_left(&a), vec![rat(1), rat(1), rat(-1)]);
        let low = LeftMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert!(minors_left(&low).iter().all(Zero::is_zero));
        let sq = LeftMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        assert_eq!(minors_left(&sq), vec![rat(5)]);
        let wide = LeftMatrix::from_i64(&[&[1], &[2], &[3]]);
        assert!(minors_left(&wide).is_empty());
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(generator_count_lr(4), 11);
        assert_eq!(generator_count_lr(6), 36);
        assert_eq!(generator_count_lr(2), 3);
        for n in 1..=50 {
            assert_eq!(
                generator_count_lr(n),
                n + binomial(n, 2) + binomial(n, 4),
                "n = {n}"
            );
        }
        assert_eq!(invariant_dim_lr(1), 1);
        assert_eq!(invariant_dim_lr(2), 3);
        assert_eq!(invariant_dim_lr(5), 14);
        assert_eq!(invariant_dim_left(3, 5), 7);
        assert_eq!(invariant_dim_left(3, 2), 0);
        assert_eq!(invariant_dim_left(2, 2), 1);
        assert_eq!(lower_bound_lr(4), 11);
        assert_eq!(lower_bound_lr(6), 21);
        assert_eq!(lower_bound_lr(2), 3);
        assert_eq!(lower_bound_left(3, 7).unwrap(), 16);
        assert_eq!(lower_bound_left(2, 5).unwrap(), 7);
        assert_eq!(lower_bound_left(4, 6).unwrap(), 12);
        assert!(lower_bound_left(4, 3).is_err());
    }

    #[test]
    fn scaling_homogeneity() {
        let a = tuple(&[
            [[1, 2], [3, 4]],
            [[0, 1], [5, 2]],
            [[2, -1], [1, 1]],
            [[3, 0], [2, 7]],
        ]);
        let t = frac(3, 2);
        let mut scaled = a.matrices().to_vec();
        scaled[1] = scaled[1].scale(&t);
        let b = MatrixTupleLR::new(scaled).unwrap();
        let (ga, gb) = (generators_lr(&a), generators_lr(&b));
        assert_eq!(gb.dets[1], &ga.dets[1] * &t * &t);
        for ((id, x), y) in ga.entries().zip(gb.values()) {
            let involves = match id {
                GeneratorId::Det(i) => i == 1,
                GeneratorId::Bracket(i, j) => i == 1 || j == 1,
                GeneratorId::Xi(i, j, k, l) => [i, j, k, l].contains(&1),
                GeneratorId::Minor(_) => unreachable!(),
            };
            if matches!(id, GeneratorId::Det(_)) {
                continue;
            }
            let expect = if involves { x * &t } else { x.clone() };
            assert_eq!(y, &expect, "{id}");
        }
    }
}
