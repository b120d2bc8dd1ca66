//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms live in a map keyed by exponent vectors under graded lexicographic
//! order, with zero coefficients never stored, so two polynomials over the
//! same variables are equal exactly when their term maps are identical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::dual::DualScalar;
use super::rational::Rational;

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    variables: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(variables: &Arc<[String]>) -> Self {
        Self {
            variables: Arc::clone(variables),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: &Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(variables);
        p.add_term(Monomial(vec![0; variables.len()]), c);
        p
    }

    /// The variable at position `index`.
    pub fn var(variables: &Arc<[String]>, index: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[index] = 1;
        let mut p = Self::zero(variables);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// Looks a variable up by name. Panics if it is not in the list.
    pub fn named(variables: &Arc<[String]>, name: &str) -> Self {
        let index = variables
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(variables, index)
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.variables, &other.variables) || self.variables == other.variables,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            variables: Arc::clone(&self.variables),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.variables);
        }
        Self {
            variables: Arc::clone(&self.variables),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.variables);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(&self.variables, Rational::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.variables.len());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Evaluation at dual-number arguments (all of the same width).
    pub fn eval_dual(&self, point: &[DualScalar]) -> DualScalar {
        assert_eq!(point.len(), self.variables.len());
        let width = point.first().map_or(0, DualScalar::width);
        let mut total = DualScalar::constant(Rational::zero(), width);
        for (m, c) in &self.terms {
            let mut t = DualScalar::constant(c.clone(), width);
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Coefficient of `prod vars[i]^exps[i]`: the polynomial formed by the
    /// terms whose exponents in `vars` equal `exps` exactly, with those
    /// variables removed (set to exponent 0).
    pub fn coefficient_of(&self, vars: &[usize], exps: &[u32]) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            if vars.iter().zip(exps).all(|(&v, &e)| m.0[v] == e) {
                let mut e = m.0.clone();
                for &v in vars {
                    e[v] = 0;
                }
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Substitutes `value` for the variable at `index`.
    pub fn substitute(&self, index: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.variables);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.0[index] {
                t *= value;
            }
            let mut e = m.0.clone();
            e[index] = 0;
            out.add_term(Monomial(e), t);
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (name, &e) in self.variables.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Builds a shared variable list.
pub fn variables<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Symbolic determinant by cofactor expansion along the first row.
pub fn poly_expand_det(entries: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = entries.len();
    assert!(
        n > 0 && entries.iter().all(|r| r.len() == n),
        "square array required"
    );
    let vars = Arc::clone(entries[0][0].variables());
    let cols: Vec<usize> = (0..n).collect();
    expand(entries, 0, &cols, &vars)
}

fn expand(m: &[Vec<SparsePoly>], row: usize, cols: &[usize], vars: &Arc<[String]>) -> SparsePoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut total = SparsePoly::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = expand(m, row + 1, &rest, vars);
        let term = entry.mul(&minor);
        total = if k % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn diagonal_determinant() {
        let v = variables(&["p", "q"]);
        let p = SparsePoly::var(&v, 0);
        let q = SparsePoly::var(&v, 1);
        let z = SparsePoly::zero(&v);
        let d = poly_expand_det(&[vec![p.clone(), z.clone()], vec![z, q.clone()]]);
        assert_eq!(d, p.mul(&q));
    }

    #[test]
    fn difference_of_squares() {
        let v = variables(&["x", "y"]);
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        let d = poly_expand_det(&[vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]]);
        assert_eq!(d, x.pow(2).sub(&y.pow(2)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let v = variables(&["x"]);
        let x = SparsePoly::var(&v, 0);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x), SparsePoly::zero(&v));
    }

    #[test]
    fn graded_order() {
        assert!(Monomial(vec![0, 2]) > Monomial(vec![1, 0]));
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let v = variables(&["x", "y"]);
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        // f = x²y + 3y
        let f = x.pow(2).mul(&y).add(&y.scale(&rat(3)));
        assert_eq!(f.derivative(0), x.mul(&y).scale(&rat(2)));
        assert_eq!(f.eval(&[rat(2), rat(5)]), rat(35));
        assert_eq!(f.coefficient_of(&[0], &[2]), y);
        assert_eq!(
            f.substitute(1, &rat(1)),
            x.pow(2).add(&SparsePoly::constant(&v, rat(3)))
        );
    }
}
