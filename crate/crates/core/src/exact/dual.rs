//! Exact forward-mode differentiation with multi-component dual numbers.
//!
//! A `DualScalar` carries a rational value together with its partial
//! derivatives with respect to a fixed list of active parameters. Arithmetic
//! follows the sum, product and quotient rules exactly:
//!
//! - `(u + v)' = u' + v'`
//! - `(u v)' = u' v + u v'`
//! - `(1 / v)' = -v' / v²`
//!
//! A dual with an empty partials vector behaves as a plain rational, which is
//! how parameterizations are evaluated without differentiation.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualScalar {
    pub value: Rational,
    pub partials: Vec<Rational>,
}

impl DualScalar {
    pub fn constant(value: Rational, width: usize) -> Self {
        Self {
            value,
            partials: vec![Rational::zero(); width],
        }
    }

    /// The `index`-th active parameter, with unit partial in its own slot.
    pub fn variable(value: Rational, index: usize, width: usize) -> Self {
        let mut partials = vec![Rational::zero(); width];
        partials[index] = Rational::one();
        Self { value, partials }
    }

    pub fn width(&self) -> usize {
        self.partials.len()
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(Rational::zero(), self.width())
    }

    pub fn one_like(&self) -> Self {
        Self::constant(Rational::one(), self.width())
    }

    /// Same width as `self`, constant value `c`.
    pub fn lift(&self, c: Rational) -> Self {
        Self::constant(c, self.width())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Multiplicative inverse, `None` when the value is zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        let inv = self.value.recip();
        let factor = -(&inv * &inv);
        Some(Self {
            partials: self.partials.iter().map(|p| p * &factor).collect(),
            value: inv,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_inv().map(|inv| self * &inv)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            value: &self.value * c,
            partials: self.partials.iter().map(|p| p * c).collect(),
        }
    }
}

fn zip_partials(
    a: &[Rational],
    b: &[Rational],
    f: impl Fn(&Rational, &Rational) -> Rational,
) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "dual widths differ");
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl Add for &DualScalar {
    type Output = DualScalar;

    fn add(self, rhs: &DualScalar) -> DualScalar {
        DualScalar {
            value: &self.value + &rhs.value,
            partials: zip_partials(&self.partials, &rhs.partials, |x, y| x + y),
        }
    }
}

impl Sub for &DualScalar {
    type Output = DualScalar;

    fn sub(self, rhs: &DualScalar) -> DualScalar {
        DualScalar {
            value: &self.value - &rhs.value,
            partials: zip_partials(&self.partials, &rhs.partials, |x, y| x - y),
        }
    }
}

impl Mul for &DualScalar {
    type Output = DualScalar;

    // Product rule.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &DualScalar) -> DualScalar {
        DualScalar {
            value: &self.value * &rhs.value,
            partials: zip_partials(&self.partials, &rhs.partials, |du, dv| {
                du * &rhs.value + &self.value * dv
            }),
        }
    }
}

impl Neg for &DualScalar {
    type Output = DualScalar;

    fn neg(self) -> DualScalar {
        DualScalar {
            value: -&self.value,
            partials: self.partials.iter().map(|p| -p).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: DualScalar) -> DualScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DualScalar> for DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: &DualScalar) -> DualScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<DualScalar> for &DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: DualScalar) -> DualScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    #[test]
    fn product_rule() {
        let x = DualScalar::variable(rat(3), 0, 2);
        let y = DualScalar::variable(rat(4), 1, 2);
        let f = &(&x * &x) + &(&(&x * &y) * &x.lift(rat(2)));
        // f = x² + 2xy
        assert_eq!(f.value, rat(33));
        assert_eq!(f.partials, vec![rat(14), rat(6)]);
    }

    #[test]
    fn quotient_rule() {
        let x = DualScalar::variable(rat(2), 0, 1);
        let one = x.one_like();
        let f = one.checked_div(&x).unwrap();
        assert_eq!(f.value, frac(1, 2));
        assert_eq!(f.partials, vec![frac(-1, 4)]);
        assert!(x.zero_like().checked_inv().is_none());
    }

    #[test]
    fn zero_width_is_plain_arithmetic() {
        let a = DualScalar::constant(rat(5), 0);
        let b = DualScalar::constant(rat(7), 0);
        assert_eq!((&a * &b).value, rat(35));
        assert!((&a - &b).partials.is_empty());
    }
}
