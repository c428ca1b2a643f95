//! A scalar that is either an exact rational or a float.
//!
//! Formula parameters may be exact (`1/4`) or irrational (`sqrt(41)/2`); the
//! catalog builders compute derived constants in whichever domain the inputs
//! live in. Arithmetic between two exact values stays exact; any operation
//! touching a float collapses to floating point.

use super::{rat_i, rat_to_f64, rat_to_string, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact-or-float scalar.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// Exact rational value.
    Exact(Rat),
    /// Floating-point value (used when a parameter is irrational).
    Float(f64),
}

impl Scalar {
    /// Integer constant as an exact scalar.
    #[must_use]
    pub fn int(n: i64) -> Self {
        Scalar::Exact(rat_i(n))
    }

    /// Exact zero.
    #[must_use]
    pub fn zero() -> Self {
        Scalar::Exact(Rat::zero())
    }

    /// Exact one.
    #[must_use]
    pub fn one() -> Self {
        Scalar::Exact(Rat::one())
    }

    /// `true` if the value is exactly representable as a rational here.
    #[must_use]
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// The exact rational value, if this scalar is exact.
    #[must_use]
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Nearest floating-point value.
    #[must_use]
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rat_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    /// Exact zero test for exact scalars; `== 0.0` for floats.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    /// Strict positivity (exact where possible).
    #[must_use]
    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(f) => *f > 0.0,
        }
    }

    /// `self^k` for a small non-negative exponent.
    #[must_use]
    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", rat_to_string(r)),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(f: f64) -> Self {
        Scalar::Float(f)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for Scalar {
    type Output = Scalar;
    /// # Panics
    /// Panics on division by exact zero (float division follows IEEE).
    fn div(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "scalar division by zero");
                Scalar::Exact(a / b)
            }
            (a, b) => Scalar::Float(a.to_f64() / b.to_f64()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn exact_stays_exact_float_contaminates() {
        let a = Scalar::Exact(rat(1, 3));
        let b = Scalar::Exact(rat(1, 6));
        assert_eq!(a.clone() + b.clone(), Scalar::Exact(rat(1, 2)));
        assert_eq!(a.clone() * b.clone(), Scalar::Exact(rat(1, 18)));
        let f = Scalar::Float(0.5);
        match a + f {
            Scalar::Float(v) => assert!((v - (1.0 / 3.0 + 0.5)).abs() < 1e-15),
            Scalar::Exact(_) => panic!("float operand must collapse to float"),
        }
        assert_eq!(b.powi(2), Scalar::Exact(rat(1, 36)));
        assert!(!(-Scalar::int(4)).is_zero());
        assert!(Scalar::zero().is_zero());
    }
}
