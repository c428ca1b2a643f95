//! Rational functions in canonical reduced form.

use super::poly::Poly;
use super::{rat_i, rat_to_string, AlgebraError, Rat};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Decay rate of a rational function at infinity: `deg(den) - deg(num)`
/// after reduction, with the zero function assigned `Infinite`.
///
/// Positive rate means decay (`f(x) -> 0`), zero means a finite nonzero
/// limit, negative means growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rate {
    /// Rate of a nonzero function: `deg(den) - deg(num)`.
    Finite(i64),
    /// Rate of the zero function (decays faster than any power).
    Infinite,
}

impl Rate {
    /// The finite value, if any.
    #[must_use]
    pub fn finite(self) -> Option<i64> {
        match self {
            Rate::Finite(r) => Some(r),
            Rate::Infinite => None,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Finite(r) => write!(f, "{r}"),
            Rate::Infinite => write!(f, "inf"),
        }
    }
}

/// A quotient of two polynomials in canonical form.
///
/// Canonical form (maintained by every constructor and operation):
/// numerator and denominator are coprime, have integer coefficients with no
/// common integer factor across the pair, and the denominator's leading
/// coefficient is positive. The zero function is `0/1`. Under these rules
/// equal functions are structurally equal, e.g. `(2x+2)/(4x+4)` is stored
/// as `1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form; rejects a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, rn) = num.divrem(&g);
        let (den, rd) = den.divrem(&g);
        debug_assert!(rn.is_zero() && rd.is_zero());
        // Scale the pair to jointly-primitive integer coefficients.
        let mut l = BigInt::one();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            l = l.lcm(c.denom());
        }
        let ints = |p: &Poly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        };
        let ni = ints(&num);
        let di = ints(&den);
        let mut g = BigInt::zero();
        for c in ni.iter().chain(di.iter()) {
            g = g.gcd(c);
        }
        if di.last().expect("nonzero denominator").is_negative() {
            g = -g;
        }
        let back = |v: Vec<BigInt>| -> Poly {
            Poly::new(v.into_iter().map(|c| Rat::from_integer(c / &g)).collect())
        };
        RatFunc {
            num: back(ni),
            den: back(di),
        }
    }

    /// A polynomial as a rational function.
    #[must_use]
    pub fn from_poly(p: Poly) -> RatFunc {
        Self::normalized(p, Poly::one())
    }

    /// A constant as a rational function.
    #[must_use]
    pub fn from_rat(c: Rat) -> RatFunc {
        Self::from_poly(Poly::constant(c))
    }

    /// The zero function.
    #[must_use]
    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    /// The constant one.
    #[must_use]
    pub fn one() -> RatFunc {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// `x^k` for any integer `k` (negative gives `1/x^|k|`).
    #[must_use]
    pub fn x_pow(k: i64) -> RatFunc {
        if k >= 0 {
            RatFunc::from_poly(Poly::monomial(Rat::one(), k as usize))
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial(Rat::one(), (-k) as usize),
            }
        }
    }

    /// Numerator (canonical form).
    #[must_use]
    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Denominator (canonical form).
    #[must_use]
    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `true` for the zero function.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` if the denominator is constant.
    #[must_use]
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Decay rate at infinity (see [`Rate`]).
    #[must_use]
    pub fn rate(&self) -> Rate {
        match self.num.degree() {
            None => Rate::Infinite,
            Some(dn) => {
                let dd = self.den.degree().expect("nonzero denominator") as i64;
                Rate::Finite(dd - dn as i64)
            }
        }
    }

    /// Reciprocal.
    ///
    /// # Panics
    /// Panics on the zero function.
    #[must_use]
    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of the zero function");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    /// Checked division.
    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(self * &rhs.inv())
    }

    /// Argument translation: `f(x + k)` for integer `k`.
    #[must_use]
    pub fn shift_int(&self, k: i64) -> RatFunc {
        self.shift(&rat_i(k))
    }

    /// Argument translation: `f(x + c)`.
    #[must_use]
    pub fn shift(&self, c: &Rat) -> RatFunc {
        Self::normalized(self.num.shift(c), self.den.shift(c))
    }

    /// Exact evaluation; reports a pole when the denominator vanishes.
    pub fn eval(&self, x: &Rat) -> Result<Rat, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::EvalAtPole {
                at: rat_to_string(x),
            });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Floating-point evaluation (`NaN`/`inf` possible at or near poles).
    #[must_use]
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() && self.den.coeff(0).is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        // (2x+2)/(4x+4) reduces to the constant 1/2.
        let f = rf(&[2, 2], &[4, 4]);
        assert_eq!(f.num(), &Poly::from_ints(&[1]));
        assert_eq!(f.den(), &Poly::from_ints(&[2]));
        // Denominator leading coefficient is made positive.
        let g = rf(&[1], &[0, -2]);
        assert_eq!(g.den(), &Poly::from_ints(&[0, 2]));
        assert_eq!(g.num(), &Poly::from_ints(&[-1]));
        // Fractional inputs scale to integer pairs.
        let h = RatFunc::new(
            Poly::new(vec![rat(1, 2)]),
            Poly::new(vec![rat(1, 3), rat(1, 6)]),
        )
        .unwrap();
        assert_eq!(h.num(), &Poly::from_ints(&[3]));
        assert_eq!(h.den(), &Poly::from_ints(&[2, 1]));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic_and_rate() {
        let f = rf(&[1], &[0, 1]); // 1/x
        let g = rf(&[1], &[1, 1]); // 1/(x+1)
        let sum = &f + &g;
        assert_eq!(sum, rf(&[1, 2], &[0, 1, 1]));
        assert_eq!(sum.rate(), Rate::Finite(1));
        let d = &f - &g; // 1/(x(x+1))
        assert_eq!(d, rf(&[1], &[0, 1, 1]));
        assert_eq!(d.rate(), Rate::Finite(2));
        assert_eq!((&f - &f).rate(), Rate::Infinite);
        assert_eq!((&f * &g).rate(), Rate::Finite(2));
        assert_eq!(f.inv().rate(), Rate::Finite(-1));
        assert!(f.div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn shift_translates_argument() {
        let f = rf(&[1], &[0, 1]); // 1/x
        assert_eq!(f.shift_int(1), rf(&[1], &[1, 1]));
        let g = rf(&[0, 2], &[1, 0, 1]); // 2x/(x^2+1)
        let s = g.shift(&rat(-1, 2));
        for xi in 0..5 {
            let x = rat_i(xi);
            assert_eq!(
                s.eval(&x).unwrap(),
                g.eval(&(x - rat(1, 2))).unwrap()
            );
        }
    }

    #[test]
    fn eval_detects_poles() {
        let f = rf(&[1], &[-1, 1]); // 1/(x-1)
        assert!(f.eval(&rat_i(1)).is_err());
        assert_eq!(f.eval(&rat_i(3)).unwrap(), rat(1, 2));
    }
}
