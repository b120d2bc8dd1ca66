//! Stability of n-tuples of 2x2 matrices and simultaneous triangularization.
//!
//! A tuple is non-stable iff some `v ≠ 0` has `dim span{A_i v} <= 1`, i.e. iff
//! the binary quadratic forms `q_ij(v) = det[A_i v | A_j v]` share a
//! projective root. A rational root `v` gives a triangularizer: `g2⁻¹` sends
//! `e1` to `v`, and the second row of `g1` annihilates the line of the `A_i v`.

use num_traits::{One, Zero};

use crate::exact::{binary_form_gcd, BinaryForm, ProjectivePoint, RMatrix, Rational};
use crate::invariants::MatrixTupleLR;
use crate::separation::{act_lr, GroupElementLR};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    /// Present when non-stable with a rational common direction.
    pub triangularizer: Option<GroupElementLR>,
    pub common_direction: Option<ProjectivePoint>,
}

/// Common directions of a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonDirections {
    /// The forms have no common root: the tuple is stable.
    None,
    /// Every direction works (all forms vanish identically, e.g. `n = 1`).
    All,
    /// Distinct rational roots of the gcd; empty when its roots are irrational.
    Rational(Vec<ProjectivePoint>),
}

/// `q_ij(v) = det[A_i v | A_j v]` for `i < j`, in lexicographic order.
pub fn pair_forms(a: &MatrixTupleLR) -> Vec<BinaryForm> {
    let m = a.matrices();
    let mut forms = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let (x, y) = (&m[i], &m[j]);
            let (ai, bi, ci, di) = (&x[(0, 0)], &x[(0, 1)], &x[(1, 0)], &x[(1, 1)]);
            let (aj, bj, cj, dj) = (&y[(0, 0)], &y[(0, 1)], &y[(1, 0)], &y[(1, 1)]);
            let v2v2 = bi * dj - di * bj;
            let v1v2 = ai * dj + bi * cj - ci * bj - di * aj;
            let v1v1 = ai * cj - ci * aj;
            forms.push(BinaryForm::new(vec![v2v2, v1v2, v1v1]));
        }
    }
    forms
}

pub fn common_directions(a: &MatrixTupleLR) -> CommonDirections {
    let forms = pair_forms(a);
    let g = binary_form_gcd(&forms);
    if g.is_zero() {
        return CommonDirections::All;
    }
    if g.degree() == 0 {
        return CommonDirections::None;
    }
    let roots = g.rational_roots().expect("nonzero form of degree <= 2");
    CommonDirections::Rational(roots.into_iter().map(normalize).collect())
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(v: ProjectivePoint) -> ProjectivePoint {
    let [v1, v2] = v;
    if !v1.is_zero() {
        [Rational::one(), v2 / &v1]
    } else {
        [Rational::zero(), Rational::one()]
    }
}

fn apply(m: &RMatrix, v: &ProjectivePoint) -> [Rational; 2] {
    [
        &m[(0, 0)] * &v[0] + &m[(0, 1)] * &v[1],
        &m[(1, 0)] * &v[0] + &m[(1, 1)] * &v[1],
    ]
}

/// Determinant-1 pair with `g · A` upper-triangular, given a rational
/// common direction `v`. Returns `(I, I)` for an upper-triangular tuple
/// with `v = [1:0]`.
pub fn triangularizer(a: &MatrixTupleLR, v: &ProjectivePoint) -> GroupElementLR {
    let v = normalize(v.clone());
    let w = if !v[0].is_zero() {
        [Rational::zero(), v[0].recip()]
    } else {
        [-v[1].recip(), Rational::zero()]
    };
    let g2_inv = RMatrix::from_rows(vec![
        vec![v[0].clone(), w[0].clone()],
        vec![v[1].clone(), w[1].clone()],
    ]);
    let u = a
        .matrices()
        .iter()
        .map(|m| apply(m, &v))
        .find(|x| !(x[0].is_zero() && x[1].is_zero()))
        .map(normalize)
        .unwrap_or([Rational::one(), Rational::zero()]);
    let first = if !u[0].is_zero() {
        vec![u[0].recip(), Rational::zero()]
    } else {
        vec![Rational::zero(), u[1].recip()]
    };
    let g1 = RMatrix::from_rows(vec![first, vec![-&u[1], u[0].clone()]]);
    GroupElementLR::new(g1, g2_inv.adjugate_2x2()).expect("determinant 1 by construction")
}

pub fn is_stable_lr(a: &MatrixTupleLR) -> StabilityReport {
    let direction = match common_directions(a) {
        CommonDirections::None => {
            return StabilityReport {
                stable: true,
                triangularizer: None,
                common_direction: None,
            }
        }
        CommonDirections::All => Some([Rational::one(), Rational::zero()]),
        CommonDirections::Rational(roots) => roots.into_iter().next(),
    };
    StabilityReport {
        stable: false,
        triangularizer: direction.as_ref().map(|v| triangularizer(a, v)),
        common_direction: direction,
    }
}

/// All triangularizations reachable from the rational common directions.
/// When every direction is common, a fixed finite set of directions is used.
pub fn triangularizations(a: &MatrixTupleLR) -> Vec<(GroupElementLR, MatrixTupleLR)> {
    let dirs = match common_directions(a) {
        CommonDirections::None => return Vec::new(),
        CommonDirections::All => vec![
            [Rational::one(), Rational::zero()],
            [Rational::zero(), Rational::one()],
            [Rational::one(), Rational::one()],
        ],
        CommonDirections::Rational(roots) => roots,
    };
    dirs.iter()
        .map(|v| {
            let g = triangularizer(a, v);
            let t = act_lr(&g, a);
            (g, t)
        })
        .collect()
}
