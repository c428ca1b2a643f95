//! Internal unreduced polynomial fractions for the solver's hot path.
//!
//! Candidate assembly and residual probing would pay a polynomial-gcd on
//! every arithmetic step if they used the canonical rational-function type.
//! This module keeps numerator/denominator pairs unreduced — cross-multiply
//! only — and reads decay rates from series expansions, falling back to an
//! exact reduction only when a heavy cancellation hides the leading term.
//! Exactness is unaffected: a fraction is zero iff its numerator is zero,
//! reduced or not.

use crate::algebra::{AlgebraError, Poly, Rat, RatFunc, Rate, SeriesInvX};

/// Unreduced quotient of polynomials (`den` nonzero, no gcd maintained).
#[derive(Debug, Clone)]
pub(crate) struct Frac {
    pub num: Poly,
    pub den: Poly,
}

impl Frac {
    pub fn from_poly(p: Poly) -> Frac {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_ratfunc(f: &RatFunc) -> Frac {
        Frac {
            num: f.num().clone(),
            den: f.den().clone(),
        }
    }

    /// Exact zero test (valid without reduction).
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn sub(&self, rhs: &Frac) -> Frac {
        Frac {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn mul(&self, rhs: &Frac) -> Frac {
        Frac {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    /// `f(x + k)`.
    pub fn shift_int(&self, k: i64) -> Frac {
        let c = crate::algebra::rat_i(k);
        Frac {
            num: self.num.shift(&c),
            den: self.den.shift(&c),
        }
    }

    /// Expansion at infinity through exponent `order`.
    pub fn series(&self, order: i64) -> SeriesInvX {
        SeriesInvX::of_quotient(&self.num, &self.den, order)
    }

    /// Canonical reduced form.
    pub fn reduce(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone())
            .expect("denominator invariant")
    }

    /// Exact decay rate at infinity.
    ///
    /// Expands with a growing window first; the unreduced denominator
    /// degree bounds any nonzero fraction's rate, so a series that vanishes
    /// through that bound proves nothing is hidden and the fallback
    /// reduction is never wrong, only slower.
    pub fn rate(&self) -> Rate {
        if self.is_zero() {
            return Rate::Infinite;
        }
        let dn = self.num.degree().expect("nonzero") as i64;
        let dd = self.den.degree().expect("nonzero") as i64;
        let floor = dd - dn; // first possibly-nonzero exponent
        let cap = dd; // rate of a nonzero fraction cannot exceed deg(den)
        let mut window = floor + 16;
        loop {
            let order = window.min(cap);
            let s = self.series(order);
            if let Some(lead) = s.lead_exp() {
                return Rate::Finite(lead);
            }
            if order >= cap {
                // Zero through the definitive bound: the reduction must be
                // zero too, but `is_zero` said otherwise — unreachable; the
                // reduction settles it defensively.
                return self.reduce().rate();
            }
            window = window.saturating_mul(2).max(floor + 64);
        }
    }

    /// Evaluation at an exact point.
    #[allow(dead_code)]
    pub fn eval(&self, x: &Rat) -> Result<Rat, AlgebraError> {
        self.reduce().eval(x)
    }
}
