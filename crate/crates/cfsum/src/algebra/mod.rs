//! Exact scalar, polynomial, rational-function, and series arithmetic.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals,
//! polynomials are dense with rational coefficients, rational functions are
//! kept in a canonical reduced form, and series at infinity are truncated
//! expansions in powers of `1/x` with exact coefficients.

mod poly;
mod ratfunc;
mod scalar;
mod series;

pub use poly::Poly;
pub use ratfunc::{RatFunc, Rate};
pub use scalar::Scalar;
pub use series::{series_at_infinity, SeriesInvX};

use num::bigint::{BigInt, Sign};
use num::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
///
/// Values are always fully reduced with a positive denominator; zero is
/// `0/1`. These invariants are maintained by the underlying implementation
/// on every operation.
pub type Rat = num::BigRational;

/// Errors from exact-arithmetic constructors and evaluators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A rational function was constructed with a zero denominator.
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    /// Evaluation of a rational function at a pole.
    #[error("evaluation at a pole: denominator vanishes at {at}")]
    EvalAtPole {
        /// The evaluation point, rendered as `p/q`.
        at: String,
    },
    /// A string did not parse as an integer or `p/q` fraction.
    #[error("cannot parse {input:?} as a rational (expected `p` or `p/q`)")]
    ParseRat {
        /// The rejected input.
        input: String,
    },
}

/// Builds a rational from an integer.
#[must_use]
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
#[must_use]
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rational with zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace
/// ignored) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let t = s.trim();
    let err = || AlgebraError::ParseRat {
        input: s.to_string(),
    };
    let (num_s, den_s) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| err())?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(num, den))
}

/// Converts a rational to the nearest `f64`, correctly handling operands
/// whose numerator and denominator separately overflow `f64`.
///
/// The quotient is first scaled by a power of two so that roughly 64
/// significant bits survive integer division; the result is then a single
/// rounding away from exact.
#[must_use]
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.numer().sign() == Sign::Minus;
    let num = r.numer().abs();
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Shift so the integer quotient carries ~64 bits.
    let shift = 64 - (nb - db);
    let (q, exp2) = if shift >= 0 {
        ((num << shift as u64) / den, -shift)
    } else {
        (num / (den << (-shift) as u64), -shift)
    };
    let q_f = num::ToPrimitive::to_f64(&q).unwrap_or(f64::INFINITY);
    let scaled = ldexp(q_f, exp2);
    if negative {
        -scaled
    } else {
        scaled
    }
}

/// `x * 2^e` with staged scaling so that a representable result is reached
/// even when `2^e` alone would overflow or underflow.
fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 600 {
        v *= (600.0f64).exp2();
        e -= 600;
        if !v.is_finite() {
            return v;
        }
    }
    while e < -600 {
        v *= (-600.0f64).exp2();
        e += 600;
        if v == 0.0 {
            return v;
        }
    }
    v * (e as f64).exp2()
}

/// Renders a rational as `"p"` or `"p/q"`.
#[must_use]
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        assert_eq!(parse_rat("3").unwrap(), rat_i(3));
        assert_eq!(parse_rat(" -5/7 ").unwrap(), rat(-5, 7));
        assert_eq!(parse_rat("10/4").unwrap(), rat(5, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
        assert_eq!(rat_to_string(&rat(-6, 4)), "-3/2");
        assert_eq!(rat_to_string(&rat_i(4)), "4");
    }

    #[test]
    fn f64_conversion_handles_huge_operands() {
        // 10^400 / (3 * 10^399) = 10/3, far beyond f64 range componentwise.
        let big = BigInt::from(10).pow(400u32);
        let den = BigInt::from(3) * BigInt::from(10).pow(399u32);
        let r = Rat::new(big, den);
        let v = rat_to_f64(&r);
        assert!((v - 10.0 / 3.0).abs() < 1e-14);

        // Subnormal magnitudes survive the staged scaling.
        let tiny = Rat::new(BigInt::one(), BigInt::from(10).pow(320u32));
        let tv = rat_to_f64(&tiny);
        assert!(tv > 0.0 && tv < 1e-319);
        // Below the smallest subnormal the correct rounding is zero.
        let below = Rat::new(BigInt::one(), BigInt::from(10).pow(330u32));
        assert_eq!(rat_to_f64(&below), 0.0);

        assert_eq!(rat_to_f64(&rat(-3, 4)), -0.75);
        assert_eq!(rat_to_f64(&Rat::zero()), 0.0);
    }
}
