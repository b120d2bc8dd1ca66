//! Laurent polynomials in one variable `t` and matrices over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};

/// `sum c_e t^e` with finitely many nonzero `c_e`, `e ∈ Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i32, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c t^e`.
    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// True when no term has a negative exponent.
    pub fn has_limit(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Value at `t = 0`, if defined.
    pub fn limit(&self) -> Option<Rational> {
        self.has_limit()
            .then(|| self.terms.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// Value at a nonzero rational `t`.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if t.is_zero() && !self.has_limit() {
            return Err(Error::Precondition("negative power of t at t = 0".into()));
        }
        let mut total = Rational::zero();
        for (&e, c) in &self.terms {
            let base = if e < 0 { t.recip() } else { t.clone() };
            let mut p = Rational::one();
            for _ in 0..e.unsigned_abs() {
                p *= &base;
            }
            total += c * p;
        }
        Ok(total)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn constant(m: &RMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(Laurent::constant).collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::constant(&RMatrix::identity(size))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Laurent] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Laurent::zero();
                for k in 0..self.cols {
                    s = s.add(&self.get(i, k).mul(other.get(k, j)));
                }
                entries.push(s);
            }
        }
        Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    /// Determinant by cofactor expansion (the curves are at most 3x3).
    pub fn det(&self) -> Laurent {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Laurent {
        match cols.len() {
            0 => Laurent::constant(Rational::one()),
            1 => self.get(row, cols[0]).clone(),
            _ => {
                let mut total = Laurent::zero();
                for (k, &c) in cols.iter().enumerate() {
                    if self.get(row, c).is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = self.get(row, c).mul(&self.minor_det(row + 1, &rest));
                    total = if k % 2 == 0 {
                        total.add(&term)
                    } else {
                        total.sub(&term)
                    };
                }
                total
            }
        }
    }

    /// Adjugate; equals the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut entries = vec![Laurent::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let sub = Self::from_rows(
                    rows.iter()
                        .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
                        .collect(),
                );
                let d = if n == 1 {
                    Laurent::constant(Rational::one())
                } else {
                    sub.det()
                };
                entries[i * n + j] = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn has_limit(&self) -> bool {
        self.entries.iter().all(Laurent::has_limit)
    }

    pub fn limit(&self) -> Option<RMatrix> {
        let entries: Option<Vec<Rational>> = self.entries.iter().map(Laurent::limit).collect();
        entries.map(|e| RMatrix::new(self.rows, self.cols, e).expect("sized"))
    }

    pub fn eval(&self, t: &Rational) -> Result<RMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.eval(t))
            .collect::<Result<Vec<_>>>()?;
        RMatrix::new(self.rows, self.cols, entries)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
