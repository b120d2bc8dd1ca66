//! Explicit curves `g(t) A(t) = A'(t)` showing that a nullcone pair with
//! `rank(A | A') <= l` lies in the graph closure, for `l = 2, 3`.
//!
//! Inputs to [`witness_curve_left`] must be in row-echelon form (so the last
//! row is zero). Each side is first moved by a determinant-1 matrix `K` into
//! the normal form the construction needs; the curve for the original pair
//! is then `K⁻¹ Ã(t)`, `K'⁻¹ Ã'(t)` with `G(t) = K'⁻¹ g(t) K`.

use num_traits::{One, Zero};

use super::laurent::{Laurent, LaurentMatrix};
use super::{echelon_sl, is_row_echelon, nullcone_member_left, stack};
use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};
use crate::invariants::{minors_left, LeftMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWitness {
    pub g: LaurentMatrix,
    pub a: LaurentMatrix,
    pub a2: LaurentMatrix,
}

/// Outcome of checking a curve against the pair it should reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveCheck {
    pub det_one: bool,
    pub identity: bool,
    pub limits_exist: bool,
    pub limits_match: bool,
}

impl CurveCheck {
    pub fn all(&self) -> bool {
        self.det_one && self.identity && self.limits_exist && self.limits_match
    }
}

impl CurveWitness {
    pub fn verify(&self, a: &LeftMatrix, a2: &LeftMatrix) -> CurveCheck {
        let limits_exist = self.a.has_limit() && self.a2.has_limit();
        CurveCheck {
            det_one: self.g.det().is_one(),
            identity: self.g.mul(&self.a) == self.a2,
            limits_exist,
            limits_match: limits_exist
                && self.a.limit().as_ref() == Some(a.matrix())
                && self.a2.limit().as_ref() == Some(a2.matrix()),
        }
    }

    /// `(g(t), A(t), A'(t))` at a nonzero rational `t`.
    pub fn evaluate(&self, t: &Rational) -> Result<(RMatrix, RMatrix, RMatrix)> {
        Ok((self.g.eval(t)?, self.a.eval(t)?, self.a2.eval(t)?))
    }

    /// True when `A(t)` and `A'(t)` have equal maximal minors at every `t`.
    pub fn minors_agree_at(&self, ts: &[Rational]) -> Result<bool> {
        for t in ts {
            let (_, x, y) = self.evaluate(t)?;
            if minors_left(&LeftMatrix::new(x)?) != minors_left(&LeftMatrix::new(y)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn constant_row(v: &[Rational]) -> Vec<Laurent> {
    v.iter().cloned().map(Laurent::constant).collect()
}

fn scaled_row(v: &[Rational], e: i32) -> Vec<Laurent> {
    v.iter().map(|x| Laurent::monomial(x.clone(), e)).collect()
}

fn diff(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| p - q).collect()
}

fn lc(e: &[(usize, usize, Laurent)], size: usize) -> LaurentMatrix {
    let mut rows = vec![vec![Laurent::zero(); size]; size];
    for (i, j, x) in e {
        rows[*i][*j] = x.clone();
    }
    LaurentMatrix::from_rows(rows)
}

/// `[[0, 1, 0], [1, 0, 0], [0, 0, -1]]`.
fn swap_p() -> RMatrix {
    RMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])
}

/// `[[1, 0, 0], [λ1, λ2, 0], [0, 0, 1/λ2]]`.
fn combine(l1: &Rational, l2: &Rational) -> RMatrix {
    let mut m = RMatrix::identity(3);
    m[(1, 0)] = l1.clone();
    m[(1, 1)] = l2.clone();
    m[(2, 2)] = l2.recip();
    m
}

/// Coefficients `(λ1, λ2) ≠ 0` with `λ1 r1 + λ2 r2 = 0`, preferring `λ2 ≠ 0`.
fn dependency(r1: &[Rational], r2: &[Rational]) -> (Rational, Rational) {
    let cols = RMatrix::from_rows(vec![r1.to_vec(), r2.to_vec()]).transpose();
    let basis = cols.null_space();
    let pick = basis
        .iter()
        .find(|x| !x[1].is_zero())
        .or_else(|| basis.first())
        .expect("rows are dependent");
    (pick[0].clone(), pick[1].clone())
}

/// Determinant-1 `K` with `K·[r1; r2; 0] = [c; 0; 0]` for dependent rows.
fn reduce_to_single(m: &RMatrix) -> RMatrix {
    let (l1, l2) = dependency(m.row(0), m.row(1));
    if l2.is_zero() {
        // only r1 = 0 forces λ2 = 0; swap the rows first
        let p = swap_p();
        let swapped = &p * m;
        let (l1, l2) = dependency(swapped.row(0), swapped.row(1));
        return &combine(&l1, &l2) * &p;
    }
    combine(&l1, &l2)
}

/// Determinant-1 `K` with `K·[r1; r2; 0] = [r; b; 0]` where
/// `b = λ1 r1 + λ2 r2` (possibly after swapping the two rows).
fn reduce_to_shared(l1: &Rational, l2: &Rational) -> RMatrix {
    if l2.is_zero() {
        &combine(l2, l1) * &swap_p()
    } else {
        combine(l1, l2)
    }
}

fn check_inputs(a: &LeftMatrix, a2: &LeftMatrix) -> Result<()> {
    if !(2..=3).contains(&a.l()) {
        return Err(Error::UnsupportedRank(a.l()));
    }
    let s = stack(a, a2)?;
    if !nullcone_member_left(a) || !nullcone_member_left(a2) {
        return Err(Error::NotNullconePair);
    }
    if s.rank() > a.l() {
        return Err(Error::Precondition(format!(
            "rank of the stacked matrix is {} > l = {}",
            s.rank(),
            a.l()
        )));
    }
    Ok(())
}

/// Curve for a nullcone pair already in row-echelon form.
pub fn witness_curve_left(a: &LeftMatrix, a2: &LeftMatrix) -> Result<CurveWitness> {
    check_inputs(a, a2)?;
    if !is_row_echelon(a.matrix()) || !is_row_echelon(a2.matrix()) {
        return Err(Error::NotReduced);
    }
    let l = a.l();
    if a == a2 {
        let c = LaurentMatrix::constant(a.matrix());
        return Ok(CurveWitness {
            g: LaurentMatrix::identity(l),
            a: c.clone(),
            a2: c,
        });
    }
    if l == 2 {
        Ok(curve_l2(a.matrix(), a2.matrix()))
    } else {
        Ok(curve_l3(a.matrix(), a2.matrix()))
    }
}

/// `A(t) = [a; t(a' - a)]`, `g(t) = [[1, 1/t], [0, 1]]`.
fn curve_l2(m: &RMatrix, m2: &RMatrix) -> CurveWitness {
    let (a, a2) = (m.row(0), m2.row(0));
    let d = diff(a2, a);
    let one = || Laurent::constant(Rational::one());
    CurveWitness {
        g: lc(
            &[(0, 0, one()), (0, 1, Laurent::t_pow(-1)), (1, 1, one())],
            2,
        ),
        a: LaurentMatrix::from_rows(vec![constant_row(a), scaled_row(&d, 1)]),
        a2: LaurentMatrix::from_rows(vec![constant_row(a2), scaled_row(&d, 1)]),
    }
}

fn rank2(m: &RMatrix) -> bool {
    m.select_rows(&[0, 1]).rank() == 2
}

fn curve_l3(m: &RMatrix, m2: &RMatrix) -> CurveWitness {
    let one = || Laurent::constant(Rational::one());
    // [[1, 0, t^-2], [0, t, 0], [0, 0, t^-1]]
    let h = lc(
        &[
            (0, 0, one()),
            (0, 2, Laurent::t_pow(-2)),
            (1, 1, Laurent::t_pow(1)),
            (2, 2, Laurent::t_pow(-1)),
        ],
        3,
    );
    if !rank2(m2) {
        // A' reduces to [c; 0; 0]; curve from A towards it.
        let k2 = reduce_to_single(m2);
        let c = (&k2 * m2).row(0).to_vec();
        let (a1, a2) = (m.row(0), m.row(1));
        let d = diff(&c, a1);
        let at =
            LaurentMatrix::from_rows(vec![constant_row(a1), constant_row(a2), scaled_row(&d, 2)]);
        let a2t =
            LaurentMatrix::from_rows(vec![constant_row(&c), scaled_row(a2, 1), scaled_row(&d, 1)]);
        let k2_inv = LaurentMatrix::constant(&k2.inverse().expect("det 1"));
        return CurveWitness {
            g: k2_inv.mul(&h),
            a: at,
            a2: k2_inv.mul(&a2t),
        };
    }
    if !rank2(m) {
        // Same construction with the roles exchanged; g(t) is the inverse.
        let k = reduce_to_single(m);
        let c = (&k * m).row(0).to_vec();
        let (p1, p2) = (m2.row(0), m2.row(1));
        let d = diff(&c, p1);
        let a2t =
            LaurentMatrix::from_rows(vec![constant_row(p1), constant_row(p2), scaled_row(&d, 2)]);
        let at =
            LaurentMatrix::from_rows(vec![constant_row(&c), scaled_row(p2, 1), scaled_row(&d, 1)]);
        let k_inv = LaurentMatrix::constant(&k.inverse().expect("det 1"));
        let k = LaurentMatrix::constant(&k);
        return CurveWitness {
            g: h.adjugate().mul(&k),
            a: k_inv.mul(&at),
            a2: a2t,
        };
    }
    // Both row spaces are planes meeting in the line of b.
    let four = RMatrix::from_rows(vec![
        m.row(0).to_vec(),
        m.row(1).to_vec(),
        m2.row(0).to_vec(),
        m2.row(1).to_vec(),
    ]);
    let x = four
        .transpose()
        .null_space()
        .into_iter()
        .next()
        .expect("rank(A | A') <= 3");
    let (l1, l2) = (x[0].clone(), x[1].clone());
    let (p1, p2) = (-x[2].clone(), -x[3].clone());
    let k = reduce_to_shared(&l1, &l2);
    let k2 = reduce_to_shared(&p1, &p2);
    let (na, na2) = (&k * m, &k2 * m2);
    debug_assert_eq!(na.row(1), na2.row(1));
    let (c1, b, c2) = (na.row(0), na.row(1), na2.row(0));
    let d = diff(c2, c1);
    let g = lc(
        &[
            (0, 0, one()),
            (0, 2, Laurent::t_pow(-1)),
            (1, 1, one()),
            (2, 2, one()),
        ],
        3,
    );
    let at = LaurentMatrix::from_rows(vec![constant_row(c1), constant_row(b), scaled_row(&d, 1)]);
    let a2t = LaurentMatrix::from_rows(vec![constant_row(c2), constant_row(b), scaled_row(&d, 1)]);
    let k_inv = LaurentMatrix::constant(&k.inverse().expect("det 1"));
    let k2_inv = LaurentMatrix::constant(&k2.inverse().expect("det 1"));
    CurveWitness {
        g: k2_inv.mul(&g).mul(&LaurentMatrix::constant(&k)),
        a: k_inv.mul(&at),
        a2: k2_inv.mul(&a2t),
    }
}

/// Curve for an arbitrary admissible nullcone pair: both sides are first
/// brought to row-echelon form by determinant-1 matrices.
pub fn witness_curve(a: &LeftMatrix, a2: &LeftMatrix) -> Result<CurveWitness> {
    check_inputs(a, a2)?;
    let (e, ea) = echelon_sl(a);
    let (e2, ea2) = echelon_sl(a2);
    let w = witness_curve_left(&ea, &ea2)?;
    let e_inv = LaurentMatrix::constant(e.inverse().matrix());
    let e2_inv = LaurentMatrix::constant(e2.inverse().matrix());
    Ok(CurveWitness {
        g: e2_inv.mul(&w.g).mul(&LaurentMatrix::constant(e.matrix())),
        a: e_inv.mul(&w.a),
        a2: e2_inv.mul(&w.a2),
    })
}
