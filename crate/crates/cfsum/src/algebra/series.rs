//! Truncated series at infinity in powers of `1/x`, with exact coefficients.

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::Rat;
use num::Zero;

/// A truncated expansion `sum_j c_j x^(-j)` valid for all exponents
/// `j <= order` (j may be negative, i.e. the expansion can carry a
/// polynomial part).
///
/// Invariants: if any known coefficient is nonzero, `coeffs[0]` is the
/// first one (exponent `lead_exp`) and the vector runs contiguously through
/// exponent `order`. If all known coefficients vanish the vector is empty —
/// the series is zero *as far as it is known*, which is not a claim about
/// exponents beyond `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesInvX {
    lead_exp: i64,
    coeffs: Vec<Rat>,
    order: i64,
}

impl SeriesInvX {
    /// The series with no nonzero coefficient up to and including `order`.
    #[must_use]
    pub fn zero_through(order: i64) -> Self {
        SeriesInvX {
            lead_exp: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    fn from_parts(lead_exp: i64, mut coeffs: Vec<Rat>, order: i64) -> Self {
        // Trim leading zeros, keep the tail padded through `order`.
        let mut lead = lead_exp;
        while coeffs.first().is_some_and(Rat::is_zero) {
            coeffs.remove(0);
            lead += 1;
        }
        if coeffs.is_empty() {
            return SeriesInvX::zero_through(order);
        }
        debug_assert_eq!(lead + coeffs.len() as i64 - 1, order);
        SeriesInvX {
            lead_exp: lead,
            coeffs,
            order,
        }
    }

    /// Exponent of the first nonzero coefficient, or `None` if the series
    /// vanishes through its order.
    #[must_use]
    pub fn lead_exp(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead_exp)
        }
    }

    /// Highest exponent (of `1/x`) known to this truncation.
    #[must_use]
    pub fn order(&self) -> i64 {
        self.order
    }

    /// `true` if every known coefficient vanishes.
    #[must_use]
    pub fn is_zero_through(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^(-j)`; `None` when `j` is beyond the truncation
    /// order.
    #[must_use]
    pub fn coeff(&self, j: i64) -> Option<Rat> {
        if j > self.order {
            return None;
        }
        if j < self.lead_exp || self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        Some(self.coeffs[(j - self.lead_exp) as usize].clone())
    }

    /// Restricts the truncation to a smaller order.
    ///
    /// # Panics
    /// Panics if `new_order > self.order` (cannot invent coefficients).
    #[must_use]
    pub fn truncate(&self, new_order: i64) -> SeriesInvX {
        assert!(new_order <= self.order, "cannot extend a truncation");
        if self.coeffs.is_empty() || new_order < self.lead_exp {
            return SeriesInvX::zero_through(new_order);
        }
        let keep = (new_order - self.lead_exp + 1) as usize;
        SeriesInvX::from_parts(self.lead_exp, self.coeffs[..keep].to_vec(), new_order)
    }

    /// Pointwise combination over the common known range.
    fn zip_with(&self, rhs: &SeriesInvX, f: impl Fn(Rat, Rat) -> Rat) -> SeriesInvX {
        let order = self.order.min(rhs.order);
        let leads = [self.lead_exp(), rhs.lead_exp()];
        let lead = match (leads[0], leads[1]) {
            (None, None) => return SeriesInvX::zero_through(order),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if lead > order {
            return SeriesInvX::zero_through(order);
        }
        let coeffs = (lead..=order)
            .map(|j| {
                f(
                    self.coeff(j).expect("within order"),
                    rhs.coeff(j).expect("within order"),
                )
            })
            .collect();
        SeriesInvX::from_parts(lead, coeffs, order)
    }

    /// Sum of two truncations (valid through the smaller order).
    #[must_use]
    pub fn add(&self, rhs: &SeriesInvX) -> SeriesInvX {
        self.zip_with(rhs, |a, b| a + b)
    }

    /// Difference of two truncations (valid through the smaller order).
    #[must_use]
    pub fn sub(&self, rhs: &SeriesInvX) -> SeriesInvX {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Scalar multiple.
    #[must_use]
    pub fn scale(&self, c: &Rat) -> SeriesInvX {
        if c.is_zero() {
            return SeriesInvX::zero_through(self.order);
        }
        SeriesInvX {
            lead_exp: self.lead_exp,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
    }

    /// Product of two truncations.
    ///
    /// The result is valid through `min(a.order + b.lead, b.order + a.lead)`
    /// — the first unknown coefficient of either factor, damped by the decay
    /// of the other, caps what is knowable. A factor that vanishes through
    /// its order contributes `order + 1` as its effective lead.
    #[must_use]
    pub fn mul(&self, rhs: &SeriesInvX) -> SeriesInvX {
        let la = self.lead_exp().unwrap_or(self.order + 1);
        let lb = rhs.lead_exp().unwrap_or(rhs.order + 1);
        let order = (self.order + lb).min(rhs.order + la);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return SeriesInvX::zero_through(order);
        }
        let lead = la + lb;
        if lead > order {
            return SeriesInvX::zero_through(order);
        }
        let n = (order - lead + 1) as usize;
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        SeriesInvX::from_parts(lead, out, order)
    }

    /// Expansion of `num/den` at infinity through exponent `order`.
    ///
    /// Works on any polynomial pair with `den != 0` — no reduction required:
    /// writing `t = 1/x` and reversing coefficients turns the quotient into
    /// a power-series division whose divisor has nonzero constant term (the
    /// leading coefficient of `den`).
    ///
    /// # Panics
    /// Panics if `den` is zero.
    #[must_use]
    pub fn of_quotient(num: &Poly, den: &Poly, order: i64) -> SeriesInvX {
        assert!(!den.is_zero(), "series of a quotient by zero");
        if num.is_zero() {
            return SeriesInvX::zero_through(order);
        }
        let dn = num.degree().expect("nonzero") as i64;
        let dd = den.degree().expect("nonzero") as i64;
        // f(x) = x^(dn-dd) * num_rev(t)/den_rev(t), t = 1/x; the coefficient
        // of t^k in the power-series quotient lands on exponent k-(dn-dd).
        let shift = dn - dd;
        let terms = order + shift + 1;
        if terms <= 0 {
            return SeriesInvX::zero_through(order);
        }
        let a = |k: i64| -> Rat {
            // num_rev coefficient of t^k is num coefficient of x^(dn-k).
            if k <= dn {
                num.coeff((dn - k) as usize)
            } else {
                Rat::zero()
            }
        };
        let b = |k: i64| -> Rat {
            if k <= dd {
                den.coeff((dd - k) as usize)
            } else {
                Rat::zero()
            }
        };
        let b0 = b(0);
        debug_assert!(!b0.is_zero());
        let mut c: Vec<Rat> = Vec::with_capacity(terms as usize);
        for k in 0..terms {
            let mut acc = a(k);
            for i in 1..=k {
                let bi = b(i);
                if !bi.is_zero() {
                    acc -= bi * &c[(k - i) as usize];
                }
            }
            c.push(acc / &b0);
        }
        SeriesInvX::from_parts(-shift, c, order)
    }
}

/// Expansion of a rational function at infinity through exponent `order`.
#[must_use]
pub fn series_at_infinity(f: &RatFunc, order: i64) -> SeriesInvX {
    SeriesInvX::of_quotient(f.num(), f.den(), order)
}
