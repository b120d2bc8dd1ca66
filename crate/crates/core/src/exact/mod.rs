//! Exact arithmetic substrate: rationals, matrices, dual numbers, binary
//! forms and sparse polynomials.

mod binary_form;
mod dual;
mod matrix;
mod poly;
mod rational;

pub use binary_form::{binary_form_gcd, BinaryForm, ProjectivePoint};
pub use dual::DualScalar;
pub use matrix::RMatrix;
pub use poly::{poly_expand_det, variables, Monomial, SparsePoly};
pub use rational::{denominator_lcm, frac, parse_rational, rat, rational_sqrt, Rational};
