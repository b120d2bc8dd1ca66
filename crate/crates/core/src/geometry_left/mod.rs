//! Geometry of `SL_l` acting on `l x n` matrices by left multiplication.
//!
//! A matrix is non-stable iff it has rank `< l`, and then it lies in the
//! nullcone. A nullcone pair can lie in the graph closure only if the
//! stacked `2l x n` matrix has rank `<= l`; for `l <= 3` this is also
//! sufficient, witnessed by explicit curves (see [`curve`]).

pub mod curve;
pub mod laurent;

pub use curve::{witness_curve, witness_curve_left, CurveCheck, CurveWitness};
pub use laurent::{Laurent, LaurentMatrix};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};
use crate::invariants::LeftMatrix;
use crate::separation::GroupElementL;

pub fn is_stable_left(a: &LeftMatrix) -> bool {
    a.matrix().rank() == a.l()
}

pub fn nullcone_member_left(a: &LeftMatrix) -> bool {
    !is_stable_left(a)
}

/// `A` stacked over `A'`.
pub fn stack(a: &LeftMatrix, a2: &LeftMatrix) -> Result<RMatrix> {
    if a.l() != a2.l() || a.n() != a2.n() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.l(),
            a.n(),
            a2.l(),
            a2.n()
        )));
    }
    a.matrix().stack(a2.matrix())
}

fn check_nullcone_pair(a: &LeftMatrix, a2: &LeftMatrix) -> Result<RMatrix> {
    let s = stack(a, a2)?;
    if !nullcone_member_left(a) || !nullcone_member_left(a2) {
        return Err(Error::NotNullconePair);
    }
    Ok(s)
}

/// Necessary condition for graph-closure membership of a nullcone pair:
/// `rank(A | A') <= l`.
pub fn graph_necessary(a: &LeftMatrix, a2: &LeftMatrix) -> Result<bool> {
    Ok(check_nullcone_pair(a, a2)?.rank() <= a.l())
}

/// Graph-closure membership of a nullcone pair for `l ∈ {2, 3}`, where the
/// rank condition is both necessary and sufficient.
pub fn graph_member_l23(a: &LeftMatrix, a2: &LeftMatrix) -> Result<bool> {
    if !(2..=3).contains(&a.l()) {
        return Err(Error::UnsupportedRank(a.l()));
    }
    graph_necessary(a, a2)
}

/// Row-echelon test: leading positions strictly increase and zero rows
/// come last.
pub fn is_row_echelon(m: &RMatrix) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..m.rows() {
        match m.row(i).iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last.is_some_and(|q| p <= q) {
                    return false;
                }
                last = Some(p);
            }
        }
    }
    true
}

/// Reduces `A` to row-echelon form using row additions and swaps. Every
/// swap is paired with negating one of the two rows, so `det(g) = 1`. An
/// input already in echelon form gives `g = I`.
pub fn echelon_sl(a: &LeftMatrix) -> (GroupElementL, LeftMatrix) {
    let l = a.l();
    let mut m = a.matrix().clone();
    let mut g = RMatrix::identity(l);
    let mut row = 0;
    for col in 0..m.cols() {
        if row == l {
            break;
        }
        let Some(p) = (row..l).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap_rows(row, p);
            g.swap_rows(row, p);
            negate_row(&mut m, p);
            negate_row(&mut g, p);
        }
        for r in row + 1..l {
            if m[(r, col)].is_zero() {
                continue;
            }
            let f = &m[(r, col)] / &m[(row, col)];
            add_multiple(&mut m, r, row, &f);
            add_multiple(&mut g, r, row, &f);
        }
        row += 1;
    }
    (
        GroupElementL::new(g).expect("determinant 1 by construction"),
        LeftMatrix::new(m).expect("shape preserved"),
    )
}

fn negate_row(m: &mut RMatrix, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

/// `row r -= f · row s`.
fn add_multiple(m: &mut RMatrix, r: usize, s: usize, f: &Rational) {
    for j in 0..m.cols() {
        let t = f * &m[(s, j)];
        m[(r, j)] -= t;
    }
}

/// Canonical data of a single `l x m` matrix under `SL_l x SL_m`: its rank,
/// and its determinant when it is square of full rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub rank: usize,
    pub det: Option<Rational>,
}

pub fn reduced_form_single(a: &RMatrix) -> ReducedForm {
    let rank = a.rank();
    let det = (a.is_square() && rank == a.rows()).then(|| a.det().expect("square"));
    ReducedForm { rank, det }
}

/// Determinant-1 scalings `diag(t, 1/t)` used in the reduced-form example.
pub fn diagonal_scaling(t: &Rational) -> RMatrix {
    let mut m = RMatrix::identity(2);
    m[(0, 0)] = t.clone();
    m[(1, 1)] = Rational::one() / t;
    m
}
