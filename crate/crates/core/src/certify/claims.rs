//! Builtin parameterizations of the separating-variety components and the
//! claim table that pairs each with its expected dimension.
//!
//! Pair spaces are flattened as follows. A 2x2 pair `(A, A')` with `n`
//! components becomes `8n` numbers: the entries `a, b, c, d` of `A_1, …,
//! A_n` and then those of `A'_1, …, A'_n`. A left pair of `l x n` matrices
//! becomes its `2l` rows read in order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{DualScalar, RMatrix, Rational};
use crate::invariants::{LeftMatrix, MatrixTupleLR};

use super::charts::{
    dual_adjugate_2x2, dual_mul, sl2_chart_dual, sl_chart_dual, sl_chart_len, DualMatrix,
};
use super::Parameterization;

#[derive(Clone, Debug)]
pub struct Claim {
    /// Short key such as `gamma` or `z-left`.
    pub key: &'static str,
    pub parameterization: Parameterization,
    pub claimed: usize,
    /// Human-readable description of the set and its dimension formula.
    pub anchor: String,
}

#[derive(Clone, Debug, Default)]
pub struct ClaimTable {
    pub claims: Vec<Claim>,
}

impl ClaimTable {
    pub fn keys(&self) -> Vec<&'static str> {
        self.claims.iter().map(|c| c.key).collect()
    }

    pub fn get(&self, key: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.key == key)
    }

    /// Keeps only the claims whose keys appear in `keys`.
    pub fn filter(&self, keys: &[&str]) -> Result<Self> {
        if let Some(bad) = keys.iter().find(|k| self.get(k).is_none()) {
            return Err(Error::OutOfRange(format!("unknown claim `{bad}`")));
        }
        Ok(Self {
            claims: self
                .claims
                .iter()
                .filter(|c| keys.contains(&c.key))
                .cloned()
                .collect(),
        })
    }
}

pub const LR_KEYS: [&str; 7] = [
    "gamma",
    "g2cr",
    "g2cc",
    "gamma-g2cr",
    "sat-cr-cc",
    "gamma-cr",
    "cr-cc",
];
pub const LEFT_KEYS: [&str; 4] = ["gamma-left", "nullcone-left", "nullcone2-left", "z-left"];

/// Splits a flattened 2x2 pair back into its two tuples.
pub fn lr_pair_from_output(n: usize, out: &[Rational]) -> Result<(MatrixTupleLR, MatrixTupleLR)> {
    if out.len() != 8 * n {
        return Err(Error::ShapeMismatch(format!(
            "expected {} values, got {}",
            8 * n,
            out.len()
        )));
    }
    let tuple = |chunk: &[Rational]| {
        MatrixTupleLR::new(
            chunk
                .chunks(4)
                .map(|e| RMatrix::new(2, 2, e.to_vec()))
                .collect::<Result<_>>()?,
        )
    };
    Ok((tuple(&out[..4 * n])?, tuple(&out[4 * n..])?))
}

/// Splits a flattened `2l x n` output into the top and bottom `l x n` blocks.
pub fn left_pair_from_output(
    l: usize,
    n: usize,
    out: &[Rational],
) -> Result<(LeftMatrix, LeftMatrix)> {
    if out.len() != 2 * l * n {
        return Err(Error::ShapeMismatch(format!(
            "expected {} values, got {}",
            2 * l * n,
            out.len()
        )));
    }
    let top = LeftMatrix::new(RMatrix::new(l, n, out[..l * n].to_vec())?)?;
    let bottom = LeftMatrix::new(RMatrix::new(l, n, out[l * n..].to_vec())?)?;
    Ok((top, bottom))
}

type Tuple = Vec<DualMatrix>;

/// Upper-triangular tuple from its three entry vectors.
fn upper(a: &[DualScalar], b: &[DualScalar], d: &[DualScalar]) -> Tuple {
    a.iter()
        .zip(b)
        .zip(d)
        .map(|((a, b), d)| vec![vec![a.clone(), b.clone()], vec![a.zero_like(), d.clone()]])
        .collect()
}

fn scaled(v: &[DualScalar], s: &DualScalar) -> Vec<DualScalar> {
    v.iter().map(|x| x * s).collect()
}

/// `g1 · A_i · g2⁻¹` for the chart parameters `p = (g1, g2)`.
fn act(p: &[DualScalar], t: &Tuple) -> Result<Tuple> {
    let g1 = sl2_chart_dual(&p[..3])?;
    let g2inv = dual_adjugate_2x2(&sl2_chart_dual(&p[3..6])?);
    Ok(t.iter()
        .map(|m| dual_mul(&dual_mul(&g1, m), &g2inv))
        .collect())
}

fn flatten(first: &Tuple, second: &Tuple) -> Vec<DualScalar> {
    first
        .iter()
        .chain(second)
        .flat_map(|m| m.iter().flatten().cloned())
        .collect()
}

/// Applies independent `G` charts to both sides; the first 12 parameters.
fn saturate(p: &[DualScalar], first: &Tuple, second: &Tuple) -> Result<Vec<DualScalar>> {
    Ok(flatten(&act(&p[..6], first)?, &act(&p[6..12], second)?))
}

/// Linear combinations `coeffs[r] · basis` of rows over dual numbers.
fn combos(basis: &[&[DualScalar]], coeffs: &[DualScalar]) -> Vec<DualScalar> {
    let n = basis[0].len();
    (0..n)
        .map(|j| {
            let mut s = coeffs[0].zero_like();
            for (row, c) in basis.iter().zip(coeffs) {
                s = &s + &(c * &row[j]);
            }
            s
        })
        .collect()
}

fn sl2_guards() -> Vec<String> {
    (1..=4).map(|k| format!("1 + alpha_{k}")).collect()
}

/// `C_r`: `A = [[a, b], [0, λd']]`, `A' = [[λa, b'], [0, d']]`.
fn cr_tuples(n: usize, p: &[DualScalar]) -> (Tuple, Tuple) {
    let (a, rest) = p.split_at(n);
    let (b, rest) = rest.split_at(n);
    let (b2, rest) = rest.split_at(n);
    let (d2, rest) = rest.split_at(n);
    let lambda = &rest[0];
    (
        upper(a, b, &scaled(d2, lambda)),
        upper(&scaled(a, lambda), b2, d2),
    )
}

/// `C_c`: `A = [[a, b], [0, λa']]`, `A' = [[a', b'], [0, λa]]`.
fn cc_tuples(n: usize, p: &[DualScalar]) -> (Tuple, Tuple) {
    let (a, rest) = p.split_at(n);
    let (a2, rest) = rest.split_at(n);
    let (b, rest) = rest.split_at(n);
    let (b2, rest) = rest.split_at(n);
    let lambda = &rest[0];
    (
        upper(a, b, &scaled(a2, lambda)),
        upper(a2, b2, &scaled(a, lambda)),
    )
}

/// `Γ ∩ C_r`: `a, b, b', d'` drawn from the span of three free vectors.
fn gamma_cr_tuples(n: usize, p: &[DualScalar]) -> (Tuple, Tuple) {
    let (basis, rest) = p.split_at(3 * n);
    let rows: Vec<&[DualScalar]> = basis.chunks(n).collect();
    let vecs: Vec<Vec<DualScalar>> = rest[..12].chunks(3).map(|c| combos(&rows, c)).collect();
    let lambda = &rest[12];
    let (a, b, b2, d2) = (&vecs[0], &vecs[1], &vecs[2], &vecs[3]);
    (
        upper(a, b, &scaled(d2, lambda)),
        upper(&scaled(a, lambda), b2, d2),
    )
}

/// `C_r ∩ C_c`: `A = [[a, b], [0, μλa]]`, `A' = [[λa, b'], [0, μa]]`.
fn cr_cc_tuples(n: usize, p: &[DualScalar]) -> (Tuple, Tuple) {
    let (a, rest) = p.split_at(n);
    let (b, rest) = rest.split_at(n);
    let (b2, rest) = rest.split_at(n);
    let (lambda, mu) = (&rest[0], &rest[1]);
    let mu_a = scaled(a, mu);
    (
        upper(a, b, &scaled(&mu_a, lambda)),
        upper(&scaled(a, lambda), b2, &mu_a),
    )
}

fn lr_claim(
    key: &'static str,
    n: usize,
    params: usize,
    claimed: usize,
    guards: Vec<String>,
    anchor: String,
    f: impl Fn(&[DualScalar]) -> Result<Vec<DualScalar>> + Send + Sync + 'static,
) -> Claim {
    Claim {
        key,
        parameterization: Parameterization::new(
            format!("{key}(n={n})"),
            params,
            8 * n,
            guards,
            Arc::new(f),
        ),
        claimed,
        anchor,
    }
}

/// Claims for the left-right action on `n`-tuples of 2x2 matrices.
pub fn claims_lr(n: usize) -> Result<ClaimTable> {
    if n < 4 {
        return Err(Error::OutOfRange(format!(
            "the 2x2 dimension claims need n >= 4, got {n}"
        )));
    }
    let mut claims = Vec::new();
    claims.push(lr_claim(
        "gamma",
        n,
        4 * n + 6,
        4 * n + 6,
        sl2_guards()[..2].to_vec(),
        "graph closure {(A, g.A)}: dim V + dim G = 4n+6".into(),
        move |p| {
            let a: Tuple = p[..4 * n]
                .chunks(4)
                .map(|e| {
                    vec![
                        vec![e[0].clone(), e[1].clone()],
                        vec![e[2].clone(), e[3].clone()],
                    ]
                })
                .collect();
            Ok(flatten(&a, &act(&p[4 * n..], &a)?))
        },
    ));
    claims.push(lr_claim(
        "g2cr",
        n,
        4 * n + 13,
        4 * n + 5,
        sl2_guards(),
        "saturation G^2.C_r: 12 + (4n+1) - 8 = 4n+5".into(),
        move |p| {
            let (x, y) = cr_tuples(n, &p[12..]);
            saturate(p, &x, &y)
        },
    ));
    claims.push(lr_claim(
        "g2cc",
        n,
        4 * n + 13,
        4 * n + 5,
        sl2_guards(),
        "saturation G^2.C_c: 12 + (4n+1) - 8 = 4n+5".into(),
        move |p| {
            let (x, y) = cc_tuples(n, &p[12..]);
            saturate(p, &x, &y)
        },
    ));
    claims.push(lr_claim(
        "gamma-g2cr",
        n,
        3 * n + 25,
        3 * n + 8,
        sl2_guards(),
        "graph closure meets G^2.C_r: 12 + (3n+4) - 8 = 3n+8".into(),
        move |p| {
            let (x, y) = gamma_cr_tuples(n, &p[12..]);
            saturate(p, &x, &y)
        },
    ));
    claims.push(lr_claim(
        "sat-cr-cc",
        n,
        3 * n + 14,
        3 * n + 6,
        sl2_guards(),
        "G^2.C_r meets G^2.C_c: 12 + (3n+2) - 8 = 3n+6".into(),
        move |p| {
            let (x, y) = cr_cc_tuples(n, &p[12..]);
            saturate(p, &x, &y)
        },
    ));
    claims.push(lr_claim(
        "gamma-cr",
        n,
        3 * n + 13,
        3 * n + 4,
        Vec::new(),
        "graph closure meets C_r (rank m_r <= 3): 3(n-3) + 12 + 1 = 3n+4".into(),
        move |p| {
            let (x, y) = gamma_cr_tuples(n, p);
            Ok(flatten(&x, &y))
        },
    ));
    claims.push(lr_claim(
        "cr-cc",
        n,
        3 * n + 2,
        3 * n + 2,
        Vec::new(),
        "C_r meets C_c: a, b, b' free plus two scalars = 3n+2".into(),
        move |p| {
            let (x, y) = cr_cc_tuples(n, p);
            Ok(flatten(&x, &y))
        },
    ));
    Ok(ClaimTable { claims })
}

fn to_rows(m: &DualMatrix) -> Vec<DualScalar> {
    m.iter().flatten().cloned().collect()
}

fn dense(rows: usize, cols: usize, p: &[DualScalar]) -> DualMatrix {
    p[..rows * cols]
        .chunks(cols)
        .map(<[DualScalar]>::to_vec)
        .collect()
}

/// `P · Q` with `P` of size `l x (l-1)`: a generic matrix of rank below `l`.
fn low_rank(l: usize, n: usize, p: &[DualScalar]) -> DualMatrix {
    let left = dense(l, l - 1, p);
    let right = dense(l - 1, n, &p[l * (l - 1)..]);
    dual_mul(&left, &right)
}

/// Parameter, output and claimed counts of one parameterization.
struct Counts {
    params: usize,
    outputs: usize,
    claimed: usize,
}

fn left_claim(
    key: &'static str,
    (l, n): (usize, usize),
    counts: Counts,
    guards: Vec<String>,
    anchor: String,
    f: impl Fn(&[DualScalar]) -> Result<Vec<DualScalar>> + Send + Sync + 'static,
) -> Claim {
    Claim {
        key,
        parameterization: Parameterization::new(
            format!("{key}(l={l},n={n})"),
            counts.params,
            counts.outputs,
            guards,
            Arc::new(f),
        ),
        claimed: counts.claimed,
        anchor,
    }
}

/// Claims for `SL_l` acting on `l x n` matrices by left multiplication.
pub fn claims_left(l: usize, n: usize) -> Result<ClaimTable> {
    if l < 2 || n < l {
        return Err(Error::OutOfRange(format!(
            "the left-action claims need 2 <= l <= n, got l = {l}, n = {n}"
        )));
    }
    let low = l * (l - 1) + (l - 1) * n;
    let chart = sl_chart_len(l);
    let mut claims = Vec::new();
    claims.push(left_claim(
        "gamma-left",
        (l, n),
        Counts {
            params: l * n + chart,
            outputs: 2 * l * n,
            claimed: l * n + l * l - 1,
        },
        (1..l).map(|k| format!("1 + alpha_{k}")).collect(),
        "graph closure {(A, gA)}: ln + l^2 - 1".into(),
        move |p| {
            let a = dense(l, n, p);
            let g = sl_chart_dual(l, &p[l * n..])?;
            let mut out = to_rows(&a);
            out.extend(to_rows(&dual_mul(&g, &a)));
            Ok(out)
        },
    ));
    claims.push(left_claim(
        "nullcone-left",
        (l, n),
        Counts {
            params: low,
            outputs: l * n,
            claimed: (l - 1) * (n + 1),
        },
        Vec::new(),
        "nullcone, matrices of rank < l: (l-1)(n+1)".into(),
        move |p| Ok(to_rows(&low_rank(l, n, p))),
    ));
    claims.push(left_claim(
        "nullcone2-left",
        (l, n),
        Counts {
            params: 2 * low,
            outputs: 2 * l * n,
            claimed: 2 * (l - 1) * (n + 1),
        },
        Vec::new(),
        "pairs of nullcone points: 2(l-1)(n+1)".into(),
        move |p| {
            let mut out = to_rows(&low_rank(l, n, p));
            out.extend(to_rows(&low_rank(l, n, &p[low..])));
            Ok(out)
        },
    ));
    let z_params = (l - 1) * n + (l - 1) + n + (l - 2) * l + (l - 1);
    claims.push(left_claim(
        "z-left",
        (l, n),
        Counts {
            params: z_params,
            outputs: 2 * l * n,
            claimed: l * n + l * l - 2,
        },
        Vec::new(),
        "rank-deficient halves spanning at most l dimensions together: ln + l^2 - 2".into(),
        move |p| Ok(z_rows(l, n, p)),
    ));
    Ok(ClaimTable { claims })
}

/// Rows `a_1..a_l, b_1..b_l` with `a_1..a_{l-1}` and `b_1` free,
/// `a_l ∈ ⟨a_1..a_{l-1}⟩`, `b_2..b_{l-1} ∈ ⟨a_1..a_{l-1}, b_1⟩` and
/// `b_l ∈ ⟨b_1..b_{l-1}⟩`.
fn z_rows(l: usize, n: usize, p: &[DualScalar]) -> Vec<DualScalar> {
    let mut rest = p;
    let mut take = |k: usize| {
        let (head, tail) = rest.split_at(k);
        rest = tail;
        head
    };
    let a_free: Vec<Vec<DualScalar>> = (0..l - 1).map(|_| take(n).to_vec()).collect();
    let a_refs: Vec<&[DualScalar]> = a_free.iter().map(Vec::as_slice).collect();
    let a_last = combos(&a_refs, take(l - 1));
    let b1 = take(n).to_vec();
    let mut span = a_refs.clone();
    span.push(&b1);
    let mut b_rows = vec![b1.clone()];
    for _ in 2..l {
        b_rows.push(combos(&span, take(l)));
    }
    let b_refs: Vec<&[DualScalar]> = b_rows.iter().map(Vec::as_slice).collect();
    let b_last = combos(&b_refs, take(l - 1));
    a_free
        .iter()
        .flatten()
        .chain(&a_last)
        .chain(b_rows.iter().flatten())
        .chain(&b_last)
        .cloned()
        .collect()
}

/// The 2x2 claims when `n >= 4`, followed by the left claims for `l` if
/// given. Fails when `l` is out of range or the table would be empty.
pub fn builtin_claims(n: usize, l: Option<usize>) -> Result<ClaimTable> {
    let mut table = match (claims_lr(n), l) {
        (Ok(t), _) => t,
        (Err(e), None) => return Err(e),
        (Err(_), Some(_)) => ClaimTable::default(),
    };
    if let Some(l) = l {
        table.claims.extend(claims_left(l, n)?.claims);
    }
    Ok(table)
}
