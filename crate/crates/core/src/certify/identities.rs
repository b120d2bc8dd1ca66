//! Symbolic checks of the polynomial identities behind the Φ correspondence
//! for upper-triangular tuples.

use std::sync::Arc;

use crate::exact::{poly_expand_det, variables, SparsePoly};

fn indexed(prefix: &str) -> Vec<String> {
    (1..=4).map(|k| format!("{prefix}{k}")).collect()
}

/// Symbols `e1..e4, a1..a4, b1..b4, d1..d4` of the generic upper block matrix.
fn xi_symbols() -> Arc<[String]> {
    let names: Vec<String> = ["e", "a", "b", "d"]
        .iter()
        .flat_map(|p| indexed(p))
        .collect();
    variables(&names)
}

/// Multilinear coefficient of `e1 e2 e3 e4` in the block determinant
/// `|e1 A1, e2 A2; e3 A3, e4 A4|` with `A_m = [[a_m, b_m], [0, d_m]]`.
pub fn xi_upper_symbolic() -> SparsePoly {
    let vars = xi_symbols();
    let v = |name: &str, m: usize| SparsePoly::named(&vars, &format!("{name}{}", m + 1));
    let zero = SparsePoly::zero(&vars);
    let block = |m: usize| {
        let e = v("e", m);
        [
            [e.mul(&v("a", m)), e.mul(&v("b", m))],
            [zero.clone(), e.mul(&v("d", m))],
        ]
    };
    let blocks: Vec<_> = (0..4).map(block).collect();
    let mut rows = vec![vec![zero.clone(); 4]; 4];
    for (slot, b) in blocks.iter().enumerate() {
        let (r0, c0) = (2 * (slot / 2), 2 * (slot % 2));
        for r in 0..2 {
            for c in 0..2 {
                rows[r0 + r][c0 + c] = b[r][c].clone();
            }
        }
    }
    let det = poly_expand_det(&rows);
    det.coefficient_of(&[0, 1, 2, 3], &[1, 1, 1, 1])
}

/// Checks that the coefficient equals `-(a1 a4 d2 d3 + a2 a3 d1 d4)`.
pub fn verify_xi_identity() -> bool {
    let xi = xi_upper_symbolic();
    let vars = Arc::clone(xi.variables());
    let v = |name: &str| SparsePoly::named(&vars, name);
    let expected = v("a1")
        .mul(&v("a4"))
        .mul(&v("d2"))
        .mul(&v("d3"))
        .add(&v("a2").mul(&v("a3")).mul(&v("d1")).mul(&v("d4")))
        .neg();
    xi == expected
}

/// The pieces of the bracket identity over symbols `a1..a4, d1..d4` and
/// their primed copies `p1..p4, q1..q4`.
struct BracketParts {
    /// `a1 a4 d2 d3 + a2 a3 d1 d4` minus the primed version.
    lhs: SparsePoly,
    /// The six-term combination of brackets times bracket differences.
    six_term: SparsePoly,
    /// `D12 D34 + D13 D24 - D14 D23`, with `D` the bracket differences.
    correction: SparsePoly,
}

fn bracket_parts() -> BracketParts {
    let names: Vec<String> = ["a", "d", "p", "q"]
        .iter()
        .flat_map(|p| indexed(p))
        .collect();
    let vars = variables(&names);
    let v = |name: &str, m: usize| SparsePoly::named(&vars, &format!("{name}{m}"));
    // <A_x|A_y> on upper-triangular blocks.
    let br = |x: usize, y: usize| v("a", x).mul(&v("d", y)).add(&v("a", y).mul(&v("d", x)));
    let br2 = |x: usize, y: usize| v("p", x).mul(&v("q", y)).add(&v("p", y).mul(&v("q", x)));
    let diff = |x: usize, y: usize| br(x, y).sub(&br2(x, y));
    let quartic = |a: &str, d: &str| {
        v(a, 1)
            .mul(&v(a, 4))
            .mul(&v(d, 2))
            .mul(&v(d, 3))
            .add(&v(a, 2).mul(&v(a, 3)).mul(&v(d, 1)).mul(&v(d, 4)))
    };
    let lhs = quartic("a", "d").sub(&quartic("p", "q"));
    let six_term = br(3, 4)
        .mul(&diff(1, 2))
        .add(&br(2, 4).mul(&diff(1, 3)))
        .sub(&br(1, 4).mul(&diff(2, 3)))
        .sub(&br(2, 3).mul(&diff(1, 4)))
        .add(&br(1, 3).mul(&diff(2, 4)))
        .add(&br(1, 2).mul(&diff(3, 4)));
    let correction = diff(1, 2)
        .mul(&diff(3, 4))
        .add(&diff(1, 3).mul(&diff(2, 4)))
        .sub(&diff(1, 4).mul(&diff(2, 3)));
    BracketParts {
        lhs,
        six_term,
        correction,
    }
}

/// Checks `2·LHS = SixTerm − (D12 D34 + D13 D24 − D14 D23)` as an identity in
/// 16 symbols. The quadratic correction vanishes whenever all brackets agree,
/// so equal brackets force the quartic difference to vanish.
pub fn verify_bracket_identity() -> bool {
    let p = bracket_parts();
    p.lhs.add(&p.lhs) == p.six_term.sub(&p.correction)
}

/// Whether `LHS = SixTerm` holds verbatim. It does not: the two sides differ
/// by terms of degree two in the bracket differences.
pub fn literal_six_term_holds() -> bool {
    let p = bracket_parts();
    p.lhs == p.six_term
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::invariants::{xi, MatrixTupleLR};
    use crate::sampling::random_upper_tuple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn xi_identity_holds() {
        assert!(verify_xi_identity());
    }

    #[test]
    fn xi_specializations() {
        let p = xi_upper_symbolic();
        // a = d = 1
        let mut s = p.clone();
        for k in 4..8 {
            s = s.substitute(k, &rat(1));
        }
        for k in 12..16 {
            s = s.substitute(k, &rat(1));
        }
        assert_eq!(s, SparsePoly::constant(p.variables(), rat(-2)));
        // a1 = 0 kills every term containing a1
        let s = p.substitute(4, &rat(0));
        assert!(s.terms().keys().all(|m| m.0[4] == 0));
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn xi_symbolic_matches_numeric() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let p = xi_upper_symbolic();
        for _ in 0..50 {
            let t: MatrixTupleLR = random_upper_tuple(&mut rng, 4, 9);
            let mut point = vec![rat(0); 16];
            for m in 0..4 {
                point[m] = rat(1);
                point[4 + m] = t.get(m)[(0, 0)].clone();
                point[8 + m] = t.get(m)[(0, 1)].clone();
                point[12 + m] = t.get(m)[(1, 1)].clone();
            }
            assert_eq!(p.eval(&point), xi(&t, 0, 1, 2, 3).unwrap());
        }
    }

    #[test]
    fn bracket_identity_holds() {
        assert!(verify_bracket_identity());
        assert!(!literal_six_term_holds());
    }

    #[test]
    fn bracket_identity_primed_equals_unprimed() {
        let p = bracket_parts();
        let mut lhs = p.lhs.clone();
        let mut rhs = p.six_term.sub(&p.correction);
        // Give each primed symbol the value of its unprimed partner.
        for k in 0..8 {
            let value = rat(k as i64 + 2);
            lhs = lhs.substitute(k + 8, &value).substitute(k, &value);
            rhs = rhs.substitute(k + 8, &value).substitute(k, &value);
        }
        assert!(lhs.is_zero());
        assert!(rhs.is_zero());
    }

    #[test]
    fn bracket_identity_numeric_spot_check() {
        use crate::sampling::random_vector;
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let p = bracket_parts();
        let two = rat(2);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 16, 12);
            let lhs = p.lhs.eval(&x) * &two;
            let rhs = p.six_term.eval(&x) - p.correction.eval(&x);
            assert_eq!(lhs, rhs);
        }
    }
}
