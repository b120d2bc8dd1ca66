//! Binary forms over the rationals and their greatest common divisor.
//!
//! A form of degree `d` is stored by the coefficients of
//! `v1^k v2^(d-k)` for `k = 0..=d`. The gcd of a family of forms has positive
//! degree exactly when the forms share a projective root over the complex
//! numbers, which is what the stability test needs.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{rational_sqrt, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coefficients: Vec<Rational>,
}

/// A point `[v1 : v2]` of the projective line, scaled so that its first
/// nonzero coordinate is 1.
pub type ProjectivePoint = [Rational; 2];

impl BinaryForm {
    /// `coefficients[k]` multiplies `v1^k v2^(degree-k)`.
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a form needs at least one coefficient"
        );
        Self {
            degree: coefficients.len() - 1,
            coefficients,
        }
    }

    pub fn zero() -> Self {
        Self::new(vec![Rational::zero()])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, v1: &Rational, v2: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            total += c * pow(v1, k) * pow(v2, self.degree - k);
        }
        total
    }

    /// Polynomial in `x = v1 / v2`, ascending coefficients, trimmed.
    fn dehomogenize(&self) -> Vec<Rational> {
        let mut p = self.coefficients.clone();
        trim(&mut p);
        p
    }

    /// Multiplicity of the root `[1 : 0]`, i.e. the power of `v2` dividing the
    /// form. Only meaningful for nonzero forms.
    fn multiplicity_at_infinity(&self) -> usize {
        self.degree + 1 - self.dehomogenize().len()
    }

    /// `v2^m · homog(p)`: exponents of `v1` are unchanged and the top `m`
    /// coefficients are zero.
    fn homogenize(p: &[Rational], v2_power: usize) -> Self {
        let mut coefficients = p.to_vec();
        if coefficients.is_empty() {
            coefficients.push(Rational::zero());
        }
        let len = coefficients.len() + v2_power;
        coefficients.resize(len, Rational::zero());
        Self::new(coefficients)
    }

    /// Distinct rational projective roots of a nonzero form of degree <= 2.
    pub fn rational_roots(&self) -> Result<Vec<ProjectivePoint>> {
        if self.is_zero() {
            return Err(Error::Precondition(
                "the zero form vanishes everywhere".into(),
            ));
        }
        let p = self.dehomogenize();
        if p.len() > 3 {
            return Err(Error::Unsupported(format!(
                "rational roots of a degree {} polynomial",
                p.len() - 1
            )));
        }
        let mut roots = Vec::new();
        if self.multiplicity_at_infinity() > 0 {
            roots.push([Rational::one(), Rational::zero()]);
        }
        match p.len() {
            2 => roots.push([-&p[0] / &p[1], Rational::one()]),
            3 => {
                let (c, b, a) = (&p[0], &p[1], &p[2]);
                let disc = b * b - Rational::from_integer(4.into()) * a * c;
                if let Some(s) = rational_sqrt(&disc) {
                    let two_a = a + a;
                    let r1 = (-b + &s) / &two_a;
                    let r2 = (-b - &s) / &two_a;
                    roots.push([r1.clone(), Rational::one()]);
                    if r2 != r1 {
                        roots.push([r2, Rational::one()]);
                    }
                }
            }
            _ => {}
        }
        Ok(roots)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            let j = self.degree - k;
            if k > 0 {
                write!(f, "*x^{k}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Greatest common divisor of a family of binary forms.
///
/// Zero forms are ignored. The result is normalised so that its highest
/// nonzero coefficient is 1; an all-zero family returns the zero form, which
/// callers read as "every direction is a common root".
pub fn binary_form_gcd(forms: &[BinaryForm]) -> BinaryForm {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return BinaryForm::zero();
    }
    // The root [1:0] is shared iff every form has zero v1^deg coefficient;
    // its common multiplicity is the minimum over the family.
    let v2_power = nonzero
        .iter()
        .map(|f| f.multiplicity_at_infinity())
        .min()
        .unwrap_or(0);
    let mut g: Vec<Rational> = Vec::new();
    for f in &nonzero {
        g = poly_gcd(&g, &f.dehomogenize());
    }
    BinaryForm::homogenize(&g, v2_power)
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `a` modulo a nonzero `b`.
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            let t = &f * c;
            r[shift + i] -= t;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic gcd in Q[x]; `gcd(0, 0)` is the empty polynomial.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}
