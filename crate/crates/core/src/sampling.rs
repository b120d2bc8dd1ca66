//! Random points for property tests, acceptance runs and certification.
//!
//! All samplers draw small integers so exact elimination stays cheap. Group
//! elements are products of elementary matrices (plus an occasional rational
//! diagonal scaling), so their determinant is exactly 1 by construction.

use num_traits::Zero;
use rand::Rng;

use crate::exact::{frac, rat, RMatrix, Rational};
use crate::geometry_lr::UpperPair;
use crate::invariants::{LeftMatrix, MatrixTupleLR};
use crate::separation::{GroupElementL, GroupElementLR};

pub fn random_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    rat(random_int(rng, bound))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng, bound)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i64,
) -> RMatrix {
    RMatrix::new(rows, cols, random_vector(rng, rows * cols, bound)).expect("sized")
}

pub fn random_tuple<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> MatrixTupleLR {
    MatrixTupleLR::new((0..n).map(|_| random_matrix(rng, 2, 2, bound)).collect()).expect("n >= 1")
}

/// Tuple with every lower-left entry zero.
pub fn random_upper_tuple<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> MatrixTupleLR {
    let zero = vec![Rational::zero(); n];
    MatrixTupleLR::from_vectors(
        &random_vector(rng, n, bound),
        &random_vector(rng, n, bound),
        &zero,
        &random_vector(rng, n, bound),
    )
}

pub fn random_upper_pair<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> UpperPair {
    UpperPair::new(
        random_upper_tuple(rng, n, bound),
        random_upper_tuple(rng, n, bound),
    )
    .expect("upper by construction")
}

pub fn random_left<R: Rng + ?Sized>(rng: &mut R, l: usize, n: usize, bound: i64) -> LeftMatrix {
    LeftMatrix::new(random_matrix(rng, l, n, bound)).expect("l >= 2")
}

/// `l x n` matrix of rank at most `rank`, as a product of random factors.
pub fn random_low_rank<R: Rng + ?Sized>(
    rng: &mut R,
    l: usize,
    n: usize,
    rank: usize,
    bound: i64,
) -> LeftMatrix {
    let p = random_matrix(rng, l, rank, bound);
    let q = random_matrix(rng, rank, n, bound);
    LeftMatrix::new(&p * &q).expect("l >= 2")
}

fn nonzero_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let k = random_int(rng, bound);
        if k != 0 {
            return k;
        }
    }
}

/// Product of elementary determinant-1 matrices of size `size`.
pub fn random_sl<R: Rng + ?Sized>(rng: &mut R, size: usize, bound: i64) -> RMatrix {
    let mut g = RMatrix::identity(size);
    for _ in 0..(2 * size).max(3) {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size - 1);
        if j >= i {
            j += 1;
        }
        let mut e = RMatrix::identity(size);
        if rng.gen_bool(0.2) {
            // diag(k, 1/k) on coordinates i, j
            let k = nonzero_int(rng, 3);
            e[(i, i)] = rat(k);
            e[(j, j)] = frac(1, k);
        } else {
            e[(i, j)] = random_rational(rng, bound);
        }
        g = &g * &e;
    }
    g
}

pub fn random_group_lr<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GroupElementLR {
    GroupElementLR::new(random_sl(rng, 2, bound), random_sl(rng, 2, bound)).expect("det 1")
}

pub fn random_group_left<R: Rng + ?Sized>(rng: &mut R, l: usize, bound: i64) -> GroupElementL {
    GroupElementL::new(random_sl(rng, l, bound)).expect("det 1")
}

/// Invertible `n x n` matrix (for the commuting action).
pub fn random_gl<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> RMatrix {
    loop {
        let h = random_matrix(rng, n, n, bound);
        if h.rank() == n {
            return h;
        }
    }
}

/// Random nullcone point of the 2x2 action, drawn from three families:
/// projectively row-proportional tuples, column-proportional tuples, and
/// translates of tuples whose diagonal vanishes on one side.
pub fn random_nullcone_lr<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> MatrixTupleLR {
    let (s, t) = loop {
        let s = random_rational(rng, 3);
        let t = random_rational(rng, 3);
        if !(s.is_zero() && t.is_zero()) {
            break (s, t);
        }
    };
    let scale =
        |v: &[Rational], k: &Rational| -> Vec<Rational> { v.iter().map(|x| x * k).collect() };
    match rng.gen_range(0..3) {
        0 => {
            let (a, b) = (random_vector(rng, n, bound), random_vector(rng, n, bound));
            MatrixTupleLR::from_vectors(
                &scale(&a, &s),
                &scale(&b, &s),
                &scale(&a, &t),
                &scale(&b, &t),
            )
        }
        1 => {
            let (a, c) = (random_vector(rng, n, bound), random_vector(rng, n, bound));
            MatrixTupleLR::from_vectors(
                &scale(&a, &s),
                &scale(&a, &t),
                &scale(&c, &s),
                &scale(&c, &t),
            )
        }
        _ => {
            let zero = vec![Rational::zero(); n];
            let v = random_vector(rng, n, bound);
            let b = random_vector(rng, n, bound);
            let upper = if rng.gen_bool(0.5) {
                MatrixTupleLR::from_vectors(&v, &b, &zero, &zero)
            } else {
                MatrixTupleLR::from_vectors(&zero, &b, &zero, &v)
            };
            crate::separation::act_lr(&random_group_lr(rng, bound), &upper)
        }
    }
}

/// Upper pair that is not separated: the Φ-preimage of a nullcone point
/// with random upper-right vectors.
pub fn random_unseparated_upper_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    bound: i64,
) -> UpperPair {
    let b = random_nullcone_lr(rng, n, bound);
    let upper = crate::geometry_lr::PhiImage::new(
        b,
        random_vector(rng, n, bound),
        random_vector(rng, n, bound),
    )
    .expect("matching lengths");
    crate::geometry_lr::phi_inverse(&upper)
}
