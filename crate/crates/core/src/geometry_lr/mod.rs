//! Geometry of `SL2 x SL2` acting on n-tuples of 2x2 matrices.
//!
//! Pairs of upper-triangular tuples that no invariant separates correspond,
//! through the map Φ, to nullcone points together with two free vectors. The
//! nullcone has two components (projectively row-proportional and
//! column-proportional tuples), and their preimages give the components
//! `C_r`, `C_c` of the separating variety next to the graph closure.
//!
//! Label convention: `in_cr` tests the explicit pattern
//! `A = (a, b; 0, λd')`, `A' = (λa, b'; 0, d')`, whose Φ-image is
//! column-proportional, and `in_cc` the pattern `A = (a, b; 0, λa')`,
//! `A' = (a', b'; 0, λa)`, whose Φ-image is row-proportional.

mod stability;

pub use stability::{
    common_directions, is_stable_lr, pair_forms, triangularizations, triangularizer,
    CommonDirections, StabilityReport,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};
use crate::invariants::{bracket_unchecked, MatrixTupleLR};
use crate::separation::{separated_lr, GroupElementLR};

/// A pair of upper-triangular tuples of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperPair {
    a: MatrixTupleLR,
    a2: MatrixTupleLR,
}

impl UpperPair {
    pub fn new(a: MatrixTupleLR, a2: MatrixTupleLR) -> Result<Self> {
        if a.n() != a2.n() {
            return Err(Error::ShapeMismatch(format!(
                "tuples of length {} and {}",
                a.n(),
                a2.n()
            )));
        }
        for t in [&a, &a2] {
            if let Some(i) = t.matrices().iter().position(|m| !m[(1, 0)].is_zero()) {
                return Err(Error::NotUpperTriangular(i));
            }
        }
        Ok(Self { a, a2 })
    }

    pub fn first(&self) -> &MatrixTupleLR {
        &self.a
    }

    pub fn second(&self) -> &MatrixTupleLR {
        &self.a2
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn is_separated(&self) -> bool {
        separated_lr(&self.a, &self.a2).expect("same n").separated
    }
}

/// `Φ(A, A') = (B, b, b')` with `B_i = [[-a_i, a'_i], [-d'_i, d_i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub b: MatrixTupleLR,
    pub upper: Vec<Rational>,
    pub upper2: Vec<Rational>,
}

impl PhiImage {
    pub fn new(b: MatrixTupleLR, upper: Vec<Rational>, upper2: Vec<Rational>) -> Result<Self> {
        if upper.len() != b.n() || upper2.len() != b.n() {
            return Err(Error::ShapeMismatch(
                "upper-right vectors must have length n".into(),
            ));
        }
        Ok(Self { b, upper, upper2 })
    }
}

pub fn phi(p: &UpperPair) -> PhiImage {
    let neg = |v: Vec<Rational>| -> Vec<Rational> { v.into_iter().map(|x| -x).collect() };
    let b = MatrixTupleLR::from_vectors(&neg(p.a.a()), &p.a2.a(), &neg(p.a2.d()), &p.a.d());
    PhiImage {
        b,
        upper: p.a.b(),
        upper2: p.a2.b(),
    }
}

pub fn phi_inverse(img: &PhiImage) -> UpperPair {
    let b = &img.b;
    let neg = |v: Vec<Rational>| -> Vec<Rational> { v.into_iter().map(|x| -x).collect() };
    let zero = vec![Rational::zero(); b.n()];
    let a = MatrixTupleLR::from_vectors(&neg(b.a()), &img.upper, &zero, &b.d());
    let a2 = MatrixTupleLR::from_vectors(&b.b(), &img.upper2, &zero, &neg(b.c()));
    UpperPair { a, a2 }
}

/// Zero locus of the degree-2 generators (dets and brackets).
pub fn nullcone_member_lr(a: &MatrixTupleLR) -> bool {
    let m = a.matrices();
    if m.iter().any(|x| !x.det().expect("2x2").is_zero()) {
        return false;
    }
    (0..m.len()).all(|i| (i + 1..m.len()).all(|j| bracket_unchecked(&m[i], &m[j]).is_zero()))
}

/// Rank of the 2-row array with the given rows, each a concatenation.
fn two_row_rank(top: [Vec<Rational>; 2], bottom: [Vec<Rational>; 2]) -> usize {
    let cat = |[x, y]: [Vec<Rational>; 2]| -> Vec<Rational> { x.into_iter().chain(y).collect() };
    RMatrix::from_rows(vec![cat(top), cat(bottom)]).rank()
}

/// Nullcone point with `(a | b)` and `(c | d)` projectively proportional.
pub fn in_dr(b: &MatrixTupleLR) -> bool {
    two_row_rank([b.a(), b.b()], [b.c(), b.d()]) <= 1 && nullcone_member_lr(b)
}

/// Nullcone point with `(a | c)` and `(b | d)` projectively proportional.
pub fn in_dc(b: &MatrixTupleLR) -> bool {
    two_row_rank([b.a(), b.c()], [b.b(), b.d()]) <= 1 && nullcone_member_lr(b)
}

/// Pattern `d = λd'`, `a' = λa` (projective closure), not separated.
pub fn in_cr(p: &UpperPair) -> bool {
    two_row_rank([p.a.a(), p.a2.d()], [p.a2.a(), p.a.d()]) <= 1 && !p.is_separated()
}

/// Pattern `d = λa'`, `d' = λa` (projective closure), not separated.
pub fn in_cc(p: &UpperPair) -> bool {
    two_row_rank([p.a2.a(), p.a.a()], [p.a.d(), p.a2.d()]) <= 1 && !p.is_separated()
}

fn stack_rows(rows: Vec<Vec<Rational>>) -> RMatrix {
    RMatrix::from_rows(rows)
}

/// Rows `a, b, d, a', b', d'`.
pub fn m_matrix(p: &UpperPair) -> RMatrix {
    stack_rows(vec![
        p.a.a(),
        p.a.b(),
        p.a.d(),
        p.a2.a(),
        p.a2.b(),
        p.a2.d(),
    ])
}

/// Rows `a, b, b', d'`.
pub fn m_r(p: &UpperPair) -> RMatrix {
    stack_rows(vec![p.a.a(), p.a.b(), p.a2.b(), p.a2.d()])
}

/// Rows `a, b, b', a'`.
pub fn m_c(p: &UpperPair) -> RMatrix {
    stack_rows(vec![p.a.a(), p.a.b(), p.a2.b(), p.a2.a()])
}

/// Graph-closure membership of a non-separated upper pair: `rank(m) <= 3`.
pub fn graph_member_upper(p: &UpperPair) -> Result<bool> {
    if p.is_separated() {
        return Err(Error::NotInSeparatingVariety);
    }
    Ok(m_matrix(p).rank() <= 3)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComponentFlags {
    pub gamma: bool,
    pub cr: bool,
    pub cc: bool,
}

impl ComponentFlags {
    pub fn any(&self) -> bool {
        self.gamma || self.cr || self.cc
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            gamma: self.gamma || other.gamma,
            cr: self.cr || other.cr,
            cc: self.cc || other.cc,
        }
    }

    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.gamma {
            out.push("GAMMA");
        }
        if self.cr {
            out.push("CR");
        }
        if self.cc {
            out.push("CC");
        }
        out
    }
}

pub fn classify_pair(p: &UpperPair) -> Result<ComponentFlags> {
    if p.is_separated() {
        return Err(Error::NotInSeparatingVariety);
    }
    let flags = ComponentFlags {
        gamma: m_matrix(p).rank() <= 3,
        cr: in_cr(p),
        cc: in_cc(p),
    };
    debug_assert!(flags.any());
    Ok(flags)
}

/// One triangularization of an arbitrary pair and its upper-pair flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedWitness {
    pub g: GroupElementLR,
    pub g2: GroupElementLR,
    pub pair: UpperPair,
    pub flags: ComponentFlags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedClassification {
    /// Union of the flags over every tested triangularization.
    pub flags: ComponentFlags,
    pub witnesses: Vec<SaturatedWitness>,
}

/// Membership of an arbitrary non-separated pair in the graph closure and in
/// the saturations `G²·C_r`, `G²·C_c`. If either side is stable its orbit is
/// closed and the pair lies in the graph closure. Otherwise both sides are
/// triangularized along every rational common direction and each resulting
/// upper pair is classified.
pub fn classify_saturated(
    a: &MatrixTupleLR,
    a2: &MatrixTupleLR,
) -> Result<SaturatedClassification> {
    if separated_lr(a, a2)?.separated {
        return Err(Error::NotInSeparatingVariety);
    }
    let (left, right) = (triangularizations(a), triangularizations(a2));
    let stable = matches!(common_directions(a), CommonDirections::None)
        || matches!(common_directions(a2), CommonDirections::None);
    if stable {
        return Ok(SaturatedClassification {
            flags: ComponentFlags {
                gamma: true,
                ..Default::default()
            },
            witnesses: Vec::new(),
        });
    }
    if left.is_empty() || right.is_empty() {
        return Err(Error::Unsupported(
            "common direction is irrational; no rational triangularizer".into(),
        ));
    }
    let mut flags = ComponentFlags::default();
    let mut witnesses = Vec::new();
    for (g, t) in &left {
        for (g2, t2) in &right {
            let pair = UpperPair::new(t.clone(), t2.clone())?;
            let f = classify_pair(&pair)?;
            flags = flags.union(f);
            witnesses.push(SaturatedWitness {
                g: g.clone(),
                g2: g2.clone(),
                pair,
                flags: f,
            });
        }
    }
    Ok(SaturatedClassification { flags, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::sampling::{
        random_group_lr, random_nullcone_lr, random_unseparated_upper_pair, random_upper_pair,
        random_upper_tuple, random_vector,
    };
    use crate::separation::act_lr;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(a: &[[[i64; 2]; 2]], b: &[[[i64; 2]; 2]]) -> UpperPair {
        UpperPair::new(MatrixTupleLR::from_i64(a), MatrixTupleLR::from_i64(b)).unwrap()
    }

    fn scale(v: &[Rational], k: &Rational) -> Vec<Rational> {
        v.iter().map(|x| x * k).collect()
    }

    /// `A = (a, b; 0, λd')`, `A' = (λa, b'; 0, d')`.
    fn cr_pair(
        a: &[Rational],
        b: &[Rational],
        b2: &[Rational],
        d2: &[Rational],
        l: &Rational,
    ) -> UpperPair {
        let z = vec![Rational::zero(); a.len()];
        UpperPair::new(
            MatrixTupleLR::from_vectors(a, b, &z, &scale(d2, l)),
            MatrixTupleLR::from_vectors(&scale(a, l), b2, &z, d2),
        )
        .unwrap()
    }

    /// `A = (a, b; 0, λa')`, `A' = (a', b'; 0, λa)`.
    fn cc_pair(
        a: &[Rational],
        b: &[Rational],
        b2: &[Rational],
        a2: &[Rational],
        l: &Rational,
    ) -> UpperPair {
        let z = vec![Rational::zero(); a.len()];
        UpperPair::new(
            MatrixTupleLR::from_vectors(a, b, &z, &scale(a2, l)),
            MatrixTupleLR::from_vectors(a2, b2, &z, &scale(a, l)),
        )
        .unwrap()
    }

    #[test]
    fn upper_pair_validation() {
        let lower = MatrixTupleLR::from_i64(&[[[1, 0], [1, 1]]]);
        let upper = MatrixTupleLR::from_i64(&[[[1, 0], [0, 1]]]);
        assert_eq!(
            UpperPair::new(lower, upper.clone()),
            Err(Error::NotUpperTriangular(0))
        );
        assert!(UpperPair::new(upper, MatrixTupleLR::zeros(2)).is_err());
    }

    #[test]
    fn phi_example() {
        let p = pair(&[[[1, 5], [0, 2]]], &[[[3, 7], [0, 4]]]);
        let img = phi(&p);
        assert_eq!(img.b.get(0), &RMatrix::from_i64(&[&[-1, 3], &[-4, 2]]));
        assert_eq!(img.b.get(0).det().unwrap(), rat(10));
        assert_eq!(
            (img.upper[0].clone(), img.upper2[0].clone()),
            (rat(5), rat(7))
        );
        assert!(!nullcone_member_lr(&img.b));
        assert!(p.is_separated());
        assert_eq!(phi_inverse(&img), p);
    }

    #[test]
    fn diagonal_pair_maps_to_nullcone() {
        let p = pair(
            &[[[2, 1], [0, 3]], [[1, 0], [0, 5]]],
            &[[[2, 7], [0, 3]], [[1, 4], [0, 5]]],
        );
        let img = phi(&p);
        assert!(nullcone_member_lr(&img.b));
        assert_eq!(img.b.get(0), &RMatrix::from_i64(&[&[-2, 2], &[-3, 3]]));
        let zero = UpperPair::new(MatrixTupleLR::zeros(3), MatrixTupleLR::zeros(3)).unwrap();
        assert!(phi(&zero).b.is_zero());
        assert_eq!(phi_inverse(&phi(&zero)), zero);
    }

    #[test]
    fn nullcone_examples() {
        assert!(nullcone_member_lr(&MatrixTupleLR::zeros(3)));
        assert!(nullcone_member_lr(&MatrixTupleLR::from_i64(&[
            [[0, 1], [0, 0]],
            [[0, 4], [0, 0]]
        ])));
        assert!(!nullcone_member_lr(&MatrixTupleLR::from_i64(&[
            [[1, 0], [0, 1]],
            [[0, 0], [0, 0]]
        ])));
    }

    #[test]
    fn d_component_examples() {
        let z = MatrixTupleLR::zeros(2);
        assert!(in_dr(&z) && in_dc(&z));
        // rows (1, 0 | 0, 0) and 3·(1, 0 | 0, 0)
        let r = MatrixTupleLR::from_vectors(
            &[rat(1), rat(0)],
            &[rat(0), rat(0)],
            &[rat(3), rat(0)],
            &[rat(0), rat(0)],
        );
        assert!(in_dr(&r));
        let id = MatrixTupleLR::from_i64(&[[[1, 0], [0, 1]]]);
        assert!(!in_dr(&id) && !in_dc(&id));
    }

    #[test]
    fn labels_follow_phi() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = 4;
            let v = |rng: &mut ChaCha8Rng| random_vector(rng, n, 5);
            let (a, b, b2, x) = (v(&mut rng), v(&mut rng), v(&mut rng), v(&mut rng));
            let l = rat(rng.gen_range(-3..=3));
            let p = cr_pair(&a, &b, &b2, &x, &l);
            assert!(in_cr(&p));
            assert!(in_dc(&phi(&p).b));
            let q = cc_pair(&a, &b, &b2, &x, &l);
            assert!(in_cc(&q));
            assert!(in_dr(&phi(&q).b));
        }
    }

    #[test]
    fn independent_cr_pair_is_off_the_graph() {
        let e = |i: usize| -> Vec<Rational> { (0..4).map(|j| rat((i == j) as i64)).collect() };
        let p = cr_pair(&e(0), &e(1), &e(2), &e(3), &rat(2));
        assert_eq!(m_r(&p).rank(), 4);
        assert_eq!(graph_member_upper(&p), Ok(false));
        let f = classify_pair(&p).unwrap();
        assert!(f.cr && !f.gamma);
        let q = cc_pair(&e(0), &e(1), &e(2), &e(3), &rat(2));
        assert_eq!(m_c(&q).rank(), 4);
        let f = classify_pair(&q).unwrap();
        assert!(f.cc && !f.gamma);
    }

    #[test]
    fn separated_pair_rejected() {
        let p = pair(&[[[1, 5], [0, 2]]], &[[[3, 7], [0, 4]]]);
        assert_eq!(graph_member_upper(&p), Err(Error::NotInSeparatingVariety));
        assert_eq!(classify_pair(&p), Err(Error::NotInSeparatingVariety));
    }

    #[test]
    fn small_n_always_in_graph_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let p = random_unseparated_upper_pair(&mut rng, n, 4);
            assert_eq!(graph_member_upper(&p), Ok(true));
        }
    }

    #[test]
    fn cr_cc_intersection_in_graph_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(4..=6);
            let (a, b, b2) = (
                random_vector(&mut rng, n, 5),
                random_vector(&mut rng, n, 5),
                random_vector(&mut rng, n, 5),
            );
            let (l, mu) = (rat(rng.gen_range(-3..=3)), rat(rng.gen_range(-3..=3)));
            let z = vec![Rational::zero(); n];
            let p = UpperPair::new(
                MatrixTupleLR::from_vectors(&a, &b, &z, &scale(&a, &(&mu * &l))),
                MatrixTupleLR::from_vectors(&scale(&a, &l), &b2, &z, &scale(&a, &mu)),
            )
            .unwrap();
            let f = classify_pair(&p).unwrap();
            assert!(f.gamma && f.cr && f.cc, "{f:?}");
        }
    }

    #[test]
    fn translate_pairs_classify_gamma() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let w = random_upper_tuple(&mut rng, n, 5);
            let ga = act_lr(&random_group_lr(&mut rng, 4), &w);
            let r = is_stable_lr(&ga);
            let t = act_lr(&r.triangularizer.unwrap(), &ga);
            let p = UpperPair::new(w, t).unwrap();
            assert!(m_matrix(&p).rank() <= 3);
            assert!(classify_pair(&p).unwrap().gamma);
        }
    }

    #[test]
    fn saturated_classification() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let e = |i: usize| -> Vec<Rational> { (0..4).map(|j| rat((i == j) as i64)).collect() };
        let p = cr_pair(&e(0), &e(1), &e(2), &e(3), &rat(2));
        let g = random_group_lr(&mut rng, 3);
        let h = random_group_lr(&mut rng, 3);
        let (x, y) = (act_lr(&g, p.first()), act_lr(&h, p.second()));
        let c = classify_saturated(&x, &y).unwrap();
        assert!(c.flags.cr && !c.flags.gamma);
        let stable =
            MatrixTupleLR::from_i64(&[[[1, 0], [0, 1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]]);
        let moved = act_lr(&g, &stable);
        assert!(classify_saturated(&stable, &moved).unwrap().flags.gamma);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn phi_equivalence(seed in any::<u64>(), n in 1usize..=6, constructed in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = if constructed {
                random_unseparated_upper_pair(&mut rng, n, 4)
            } else {
                random_upper_pair(&mut rng, n, 4)
            };
            if constructed {
                prop_assert!(!p.is_separated());
            }
            prop_assert_eq!(nullcone_member_lr(&phi(&p).b), !p.is_separated());
            prop_assert_eq!(phi_inverse(&phi(&p)), p);
        }

        #[test]
        fn nullcone_cover(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = random_nullcone_lr(&mut rng, n, 5);
            prop_assert!(nullcone_member_lr(&b));
            prop_assert!(in_dr(&b) || in_dc(&b));
        }

        #[test]
        fn classification_covers(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_unseparated_upper_pair(&mut rng, n, 4);
            let f = classify_pair(&p).unwrap();
            prop_assert!(f.cr || f.cc);
        }
    }

    use rand::Rng;
}
