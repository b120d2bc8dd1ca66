//! Group actions and separation by invariants.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};
use crate::invariants::{
    generators_lr, minor_column_sets, minors_left, GeneratorId, LeftMatrix, MatrixTupleLR,
};

/// A pair `(g1, g2)` of determinant-1 2x2 matrices acting by `A_i -> g1 A_i g2⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElementLR {
    g1: RMatrix,
    g2: RMatrix,
}

fn check_unimodular(g: &RMatrix, size: usize) -> Result<()> {
    if g.rows() != size || g.cols() != size {
        return Err(Error::ShapeMismatch(format!(
            "expected {size}x{size}, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let det = g.det()?;
    if !det.is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    Ok(())
}

impl GroupElementLR {
    pub fn new(g1: RMatrix, g2: RMatrix) -> Result<Self> {
        check_unimodular(&g1, 2)?;
        check_unimodular(&g2, 2)?;
        Ok(Self { g1, g2 })
    }

    pub fn identity() -> Self {
        Self {
            g1: RMatrix::identity(2),
            g2: RMatrix::identity(2),
        }
    }

    pub fn g1(&self) -> &RMatrix {
        &self.g1
    }

    pub fn g2(&self) -> &RMatrix {
        &self.g2
    }

    pub fn inverse(&self) -> Self {
        Self {
            g1: self.g1.adjugate_2x2(),
            g2: self.g2.adjugate_2x2(),
        }
    }

    /// `self ∘ other`: acting by the result equals acting by `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            g1: &self.g1 * &other.g1,
            g2: &self.g2 * &other.g2,
        }
    }
}

/// A determinant-1 `l x l` matrix acting by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElementL {
    g: RMatrix,
}

impl GroupElementL {
    pub fn new(g: RMatrix) -> Result<Self> {
        let size = g.rows();
        check_unimodular(&g, size)?;
        Ok(Self { g })
    }

    pub fn identity(l: usize) -> Self {
        Self {
            g: RMatrix::identity(l),
        }
    }

    pub fn l(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.g
    }

    pub fn inverse(&self) -> Self {
        Self {
            g: self.g.inverse().expect("determinant 1"),
        }
    }
}

/// Componentwise `g1 A_i g2⁻¹`.
pub fn act_lr(g: &GroupElementLR, a: &MatrixTupleLR) -> MatrixTupleLR {
    let g2_inv = g.g2.adjugate_2x2();
    let out = a
        .matrices()
        .iter()
        .map(|m| &(&g.g1 * m) * &g2_inv)
        .collect();
    MatrixTupleLR::new(out).expect("shape preserved")
}

/// `g A`.
pub fn act_left(g: &GroupElementL, a: &LeftMatrix) -> Result<LeftMatrix> {
    if g.l() != a.l() {
        return Err(Error::ShapeMismatch(format!(
            "group element is {0}x{0}, matrix has {1} rows",
            g.l(),
            a.l()
        )));
    }
    LeftMatrix::new(&g.g * a.matrix())
}

/// The commuting `GL_n` action: for each position `(r, c)` the n-vector of
/// entries across the tuple is replaced by `h` times it.
pub fn star(h: &RMatrix, a: &MatrixTupleLR) -> Result<MatrixTupleLR> {
    let n = a.n();
    if h.rows() != n || h.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "h must be {n}x{n}, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    if h.rank() < n {
        return Err(Error::Singular);
    }
    let mut out = vec![RMatrix::zeros(2, 2); n];
    for r in 0..2 {
        for c in 0..2 {
            let v = a.entry_vector(r, c);
            for (i, m) in out.iter_mut().enumerate() {
                let mut s = Rational::default();
                for (j, x) in v.iter().enumerate() {
                    s += &h[(i, j)] * x;
                }
                m[(r, c)] = s;
            }
        }
    }
    MatrixTupleLR::new(out)
}

/// Outcome of comparing all generating invariants at two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub separated: bool,
    pub witness: Option<Witness>,
}

/// First generator, in canonical order, taking different values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub id: GeneratorId,
    pub first: Rational,
    pub second: Rational,
}

impl SeparationReport {
    fn from_witness(witness: Option<Witness>) -> Self {
        Self {
            separated: witness.is_some(),
            witness,
        }
    }
}

pub fn separated_lr(a: &MatrixTupleLR, b: &MatrixTupleLR) -> Result<SeparationReport> {
    if a.n() != b.n() {
        return Err(Error::ShapeMismatch(format!(
            "tuples of length {} and {}",
            a.n(),
            b.n()
        )));
    }
    let (ga, gb) = (generators_lr(a), generators_lr(b));
    let witness = ga
        .entries()
        .zip(gb.values())
        .find(|((_, x), y)| x != y)
        .map(|((id, x), y)| Witness {
            id,
            first: x.clone(),
            second: y.clone(),
        });
    Ok(SeparationReport::from_witness(witness))
}

pub fn separated_left(a: &LeftMatrix, b: &LeftMatrix) -> Result<SeparationReport> {
    if a.l() != b.l() || a.n() != b.n() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.l(),
            a.n(),
            b.l(),
            b.n()
        )));
    }
    let sets = minor_column_sets(a.l(), a.n());
    let witness = sets
        .into_iter()
        .zip(minors_left(a).into_iter().zip(minors_left(b)))
        .find(|(_, (x, y))| x != y)
        .map(|(cols, (x, y))| Witness {
            id: GeneratorId::Minor(cols),
            first: x,
            second: y,
        });
    Ok(SeparationReport::from_witness(witness))
}
