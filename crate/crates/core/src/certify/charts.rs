//! Local charts of `SL_l` and small matrix helpers over dual numbers.

use crate::error::{Error, Result};
use crate::exact::{DualScalar, RMatrix, Rational};

/// Dense matrix of dual numbers, row-major.
pub type DualMatrix = Vec<Vec<DualScalar>>;

pub fn dual_mul(x: &DualMatrix, y: &DualMatrix) -> DualMatrix {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "inner dimensions differ");
            (0..cols)
                .map(|j| {
                    let mut s = row[0].zero_like();
                    for (k, r) in row.iter().enumerate() {
                        s = &s + &(r * &y[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Inverse of a determinant-1 2x2 matrix.
pub fn dual_adjugate_2x2(m: &DualMatrix) -> DualMatrix {
    vec![
        vec![m[1][1].clone(), -&m[0][1]],
        vec![-&m[1][0], m[0][0].clone()],
    ]
}

pub fn dual_to_rmatrix(m: &DualMatrix) -> RMatrix {
    RMatrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|x| x.value.clone()).collect())
            .collect(),
    )
}

fn guard_inv(x: &DualScalar, what: &str) -> Result<DualScalar> {
    x.checked_inv()
        .ok_or_else(|| Error::ChartSingularity(format!("{what} vanishes")))
}

/// `[[1+α, β], [γ, (1+βγ)/(1+α)]]` over dual numbers.
pub fn sl2_chart_dual(p: &[DualScalar]) -> Result<DualMatrix> {
    let [alpha, beta, gamma] = p else {
        return Err(Error::ShapeMismatch(
            "an SL2 chart takes 3 parameters".into(),
        ));
    };
    let one = alpha.one_like();
    let top = &one + alpha;
    let inv = guard_inv(&top, "1 + alpha")?;
    let bottom = &(&one + &(beta * gamma)) * &inv;
    Ok(vec![vec![top, beta.clone()], vec![gamma.clone(), bottom]])
}

/// `[[1+α, β], [γ, (1+βγ)/(1+α)]]`; determinant exactly 1.
pub fn sl2_chart(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<RMatrix> {
    let p: Vec<DualScalar> = [alpha, beta, gamma]
        .into_iter()
        .map(|x| DualScalar::constant(x.clone(), 0))
        .collect();
    Ok(dual_to_rmatrix(&sl2_chart_dual(&p)?))
}

/// Number of parameters of [`sl_chart_dual`].
pub fn sl_chart_len(l: usize) -> usize {
    l * l - 1
}

/// `L · D · U` with `L` unit lower-triangular, `U` unit upper-triangular
/// and `D = diag(1+α_1, …, 1+α_{l-1}, 1/∏(1+α_i))`. Parameter order:
/// the `l(l-1)/2` entries of `L` row by row, then those of `U`, then the `α_i`.
pub fn sl_chart_dual(l: usize, p: &[DualScalar]) -> Result<DualMatrix> {
    if p.len() != sl_chart_len(l) {
        return Err(Error::ShapeMismatch(format!(
            "an SL{l} chart takes {} parameters",
            sl_chart_len(l)
        )));
    }
    let one = p[0].one_like();
    let zero = p[0].zero_like();
    let tri = l * (l - 1) / 2;
    let mut lower = vec![vec![zero.clone(); l]; l];
    let mut upper = vec![vec![zero.clone(); l]; l];
    let mut k = 0;
    for i in 0..l {
        lower[i][i] = one.clone();
        upper[i][i] = one.clone();
        for j in 0..i {
            lower[i][j] = p[k].clone();
            upper[j][i] = p[tri + k].clone();
            k += 1;
        }
    }
    let mut diag = vec![vec![zero.clone(); l]; l];
    let mut prod = one.clone();
    for i in 0..l - 1 {
        let d = &one + &p[2 * tri + i];
        guard_inv(&d, &format!("1 + alpha_{}", i + 1))?;
        prod = &prod * &d;
        diag[i][i] = d;
    }
    diag[l - 1][l - 1] = guard_inv(&prod, "product of diagonal factors")?;
    Ok(dual_mul(&dual_mul(&lower, &diag), &upper))
}

pub fn sl_chart(l: usize, p: &[Rational]) -> Result<RMatrix> {
    let p: Vec<DualScalar> = p
        .iter()
        .map(|x| DualScalar::constant(x.clone(), 0))
        .collect();
    Ok(dual_to_rmatrix(&sl_chart_dual(l, &p)?))
}
