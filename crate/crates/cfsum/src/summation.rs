//! Telescoping closed-form sums, certified brute-force brackets, and
//! verification of claimed series values.
//!
//! Two independent routes to the value of `sum_{n >= n0} u(n)`:
//!
//! * [`telescope_sum`] — exact: when `y` solves `y(x) - y(x+1) = u(x)` and
//!   vanishes at infinity, the sum collapses to `y(n0)`.
//! * [`brute_force`] — numeric but certified: a compensated partial sum
//!   plus a rigorous two-sided tail bound, returning an interval that is
//!   guaranteed to contain the true value.
//!
//! [`verify`] compares a claimed value against the certified interval and
//! issues a [`Verdict`].

use crate::algebra::{
    rat_i, rat_to_f64, series_at_infinity, AlgebraError, Rat, RatFunc, Rate,
};
use num::{Signed, Zero};
use thiserror::Error;

/// Errors from series validation and summation.
#[derive(Debug, Error)]
pub enum SummationError {
    /// The term has a pole at an integer inside the summation range.
    #[error("series term has a pole at n = {at}")]
    PoleInRange {
        /// The offending integer.
        at: i64,
    },
    /// The term decays too slowly for the chosen sign pattern to converge.
    #[error("tail decays too slowly to converge (decay rate {rate}, need >= {need})")]
    DivergentTail {
        /// Decay rate of the term at infinity.
        rate: i64,
        /// Minimum rate the sign pattern requires.
        need: i64,
    },
    /// The candidate telescoping solution does not vanish at infinity.
    #[error("telescoping solution does not vanish at infinity")]
    NonVanishingAtInfinity,
    /// Exact evaluation failed (pole hit).
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sign structure of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    /// Terms are summed as given: `sum u(n)`. Requires decay rate >= 2.
    AllPositiveTail,
    /// Terms alternate starting positive: `sum (-1)^(n - n0) u(n)`.
    /// Requires decay rate >= 1.
    Alternating,
}

impl SignPattern {
    fn min_rate(self) -> i64 {
        match self {
            SignPattern::AllPositiveTail => 2,
            SignPattern::Alternating => 1,
        }
    }
}

/// A convergent rational series `sum_{n >= n0} (+/-) u(n)`.
///
/// Construction validates that `u` has no pole at any integer `>= n0` and
/// decays fast enough for the sign pattern, so evaluation can't fail.
#[derive(Debug, Clone)]
pub struct SeriesSpec {
    term: RatFunc,
    n0: i64,
    sign_pattern: SignPattern,
}

impl SeriesSpec {
    /// Validates and wraps a series description.
    pub fn new(
        term: RatFunc,
        n0: i64,
        sign_pattern: SignPattern,
    ) -> Result<SeriesSpec, SummationError> {
        if let Some(at) = term.den().first_integer_root_at_or_after(n0) {
            return Err(SummationError::PoleInRange { at });
        }
        if !term.is_zero() {
            let rate = term
                .rate()
                .finite()
                .expect("a nonzero rational function has finite decay rate");
            if rate < sign_pattern.min_rate() {
                return Err(SummationError::DivergentTail {
                    rate,
                    need: sign_pattern.min_rate(),
                });
            }
        }
        Ok(SeriesSpec {
            term,
            n0,
            sign_pattern,
        })
    }

    /// The term `u(n)`.
    #[must_use]
    pub fn term(&self) -> &RatFunc {
        &self.term
    }

    /// First summation index.
    #[must_use]
    pub fn n0(&self) -> i64 {
        self.n0
    }

    /// Sign structure.
    #[must_use]
    pub fn sign_pattern(&self) -> SignPattern {
        self.sign_pattern
    }
}

/// Outcome of comparing a claimed value against a certified bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Claim lies in the bracket and the bracket is tight enough to mean it.
    Pass,
    /// Claim lies outside the bracket (beyond tolerance).
    Fail,
    /// Claim is consistent but the bracket is too wide to certify at the
    /// requested tolerance.
    Inconclusive,
}

/// Result of [`verify`].
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// The value under test.
    pub claimed: f64,
    /// Certified lower end of the oracle bracket.
    pub oracle_low: f64,
    /// Certified upper end of the oracle bracket.
    pub oracle_high: f64,
    /// Number of terms the oracle summed directly.
    pub n_terms: usize,
    /// The comparison outcome.
    pub verdict: Verdict,
}

/// Exact sum by telescoping: if `y(x) - y(x+1) = u(x)` and `y` vanishes at
/// infinity, then `sum_{n >= n0} u(n) = y(n0)`.
///
/// The difference-equation premise is the caller's to check (the solver's
/// residual does exactly that); this routine enforces only the vanishing
/// condition and evaluates.
pub fn telescope_sum(y: &RatFunc, n0: i64) -> Result<Rat, SummationError> {
    if y.rate() < Rate::Finite(1) {
        return Err(SummationError::NonVanishingAtInfinity);
    }
    Ok(y.eval(&rat_i(n0))?)
}

/// Compensated (Neumaier) accumulator, tracking the absolute mass of what
/// was added so rounding can be bounded afterwards.
struct Accum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl Accum {
    fn new() -> Accum {
        Accum {
            sum: 0.0,
            comp: 0.0,
            abs: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Per-term relative slack granted to floating-point evaluation of the
/// term and to the compensated accumulation.
const ROUNDING_SLACK: f64 = 1e-14;

/// Certified bracket of `sum_{n >= s} n^(-j)` for `j >= 2` via the
/// two-term Euler–Maclaurin expansion; the remainder of the truncated
/// expansion is enveloped by twice the first omitted term.
fn power_tail_bracket(j: i64, s: f64) -> (f64, f64) {
    let jf = j as f64;
    let ji = i32::try_from(j).expect("decay exponents are small");
    let head = s.powi(1 - ji) / (jf - 1.0) + s.powi(-ji) / 2.0 + jf * s.powi(-ji - 1) / 12.0;
    let envelope = 2.0 * jf * (jf + 1.0) * (jf + 2.0) * s.powi(-ji - 3) / 720.0;
    (head - envelope, head + envelope)
}

/// An `x^(-mu)` envelope constant for `|f|` on `[x0, inf)`: returns `C`
/// with `|f(x)| <= C * x^(-mu)` for all `x >= x0`, where `mu` is `f`'s
/// decay rate, or `None` when the denominator's lower bound fails at `x0`
/// (i.e. `x0` is not safely beyond the denominator's roots).
fn envelope_constant(f: &RatFunc, x0: f64) -> Option<f64> {
    let dp = f.num().degree()?;
    let dq = f.den().degree().expect("denominators are nonzero");
    let mut p_hi = 0.0f64;
    for (k, c) in f.num().coeffs().iter().enumerate() {
        p_hi += rat_to_f64(&c.abs()) * x0.powi(k as i32 - dp as i32);
    }
    let mut q_lo = rat_to_f64(&f.den().leading().expect("nonzero").abs());
    for (k, c) in f.den().coeffs().iter().enumerate().take(dq) {
        q_lo -= rat_to_f64(&c.abs()) * x0.powi(k as i32 - dq as i32);
    }
    if q_lo <= 0.0 {
        return None;
    }
    // Small headroom for the rounding in the two reductions above.
    Some(p_hi / q_lo * (1.0 + 1e-9))
}

/// Bracket for the all-positive-tail pattern: direct compensated partial
/// sum over `n_terms` terms, then a certified tail split into the first
/// three inverse-power components (Euler–Maclaurin brackets) plus an
/// envelope bound on the stripped remainder.
fn bracket_direct(spec: &SeriesSpec, n_terms: usize) -> (f64, f64) {
    let u = &spec.term;
    if u.is_zero() {
        return (0.0, 0.0);
    }
    let n_terms = n_terms.max(1);
    let last = spec.n0 + n_terms as i64 - 1;

    let mut acc = Accum::new();
    for n in spec.n0..=last {
        acc.add(u.eval_f64(n as f64));
    }

    let mu = u.rate().finite().expect("nonzero term");
    let ser = series_at_infinity(u, mu + 2);
    let mut stripped = u.clone();
    let mut coeffs = Vec::new();
    for j in mu..=mu + 2 {
        let c = ser.coeff(j).expect("expansion covers requested orders");
        if !c.is_zero() {
            stripped = &stripped - &(&RatFunc::x_pow(-j) * &RatFunc::from_rat(c.clone()));
        }
        coeffs.push(c);
    }

    let mut tail_lo = 0.0f64;
    let mut tail_hi = 0.0f64;
    let start = (last + 1) as f64;
    for (off, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cf = rat_to_f64(c);
        let (lo, hi) = power_tail_bracket(mu + off as i64, start);
        if cf >= 0.0 {
            tail_lo += cf * lo;
            tail_hi += cf * hi;
        } else {
            tail_lo += cf * hi;
            tail_hi += cf * lo;
        }
    }

    if !stripped.is_zero() {
        // Push the envelope start point past the stripped remainder's
        // denominator roots if needed, summing the skipped terms directly.
        let mu_s = stripped.rate().finite().expect("nonzero");
        let mut s = last + 1;
        loop {
            if let Some(c) = envelope_constant(&stripped, s as f64) {
                let sf = s as f64;
                let si = i32::try_from(mu_s).expect("small exponent");
                let bound = c * (sf.powi(-si) + sf.powi(1 - si) / (mu_s as f64 - 1.0));
                tail_lo -= bound;
                tail_hi += bound;
                break;
            }
            let next = (s * 2).min(s + 1_000_000);
            for n in s..next {
                let v = stripped.eval_f64(n as f64);
                tail_lo += v - ROUNDING_SLACK * v.abs();
                tail_hi += v + ROUNDING_SLACK * v.abs();
            }
            s = next;
        }
    }

    let partial = acc.value();
    let slack = ROUNDING_SLACK * (acc.abs + partial.abs() + tail_hi.abs() + tail_lo.abs());
    (partial + tail_lo - slack, partial + tail_hi + slack)
}

/// Smallest integer beyond every real root of `p` (Cauchy bound), clamped
/// below at `floor`.
fn beyond_roots(p: &crate::algebra::Poly, floor: i64) -> i64 {
    let Some(lead) = p.leading() else {
        return floor;
    };
    let mut bound = 0.0f64;
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        bound = bound.max(rat_to_f64(&(c / lead).abs()));
    }
    let b = (2.0 + bound).ceil();
    if b > 1e15 {
        (1e15) as i64
    } else {
        (b as i64).max(floor)
    }
}

/// Bracket for the alternating pattern: once `|u|` is certifiably
/// monotone (past the Cauchy root bounds of `u` and of the forward
/// difference `u(x) - u(x+1)`), the limit lies between consecutive
/// partial sums.
fn bracket_alternating(spec: &SeriesSpec, n_terms: usize) -> (f64, f64) {
    let u = &spec.term;
    if u.is_zero() {
        return (0.0, 0.0);
    }
    let delta = u - &u.shift_int(1);
    let mut safe = spec.n0 + 1;
    for p in [u.num(), u.den(), delta.num(), delta.den()] {
        safe = beyond_roots(p, safe);
    }
    let last = (spec.n0 + n_terms.max(2) as i64 - 1).max(safe);

    let mut acc = Accum::new();
    let mut prev = 0.0f64;
    for n in spec.n0..=last {
        prev = acc.value();
        let sign = if (n - spec.n0) % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * u.eval_f64(n as f64));
    }
    let cur = acc.value();
    let slack = ROUNDING_SLACK * (acc.abs + cur.abs() + 1.0);
    (prev.min(cur) - slack, prev.max(cur) + slack)
}

/// Certified bracket of the series value after summing `n_terms` terms
/// directly: the true sum lies in `[low, high]`.
///
/// The bracket accounts for the infinite tail (certified analytically)
/// and for floating-point rounding in the partial sum. More terms never
/// widen the bracket.
pub fn brute_force(
    spec: &SeriesSpec,
    n_terms: usize,
) -> Result<(f64, f64), SummationError> {
    if !spec.term.is_zero() {
        let rate = spec.term.rate().finite().expect("nonzero term");
        if rate < spec.sign_pattern.min_rate() {
            return Err(SummationError::DivergentTail {
                rate,
                need: spec.sign_pattern.min_rate(),
            });
        }
    }
    Ok(match spec.sign_pattern {
        SignPattern::AllPositiveTail => bracket_direct(spec, n_terms),
        SignPattern::Alternating => bracket_alternating(spec, n_terms),
    })
}

/// Tests a claimed value against the certified bracket.
///
/// `Pass` when the claim lies in the (tolerance-widened) bracket and the
/// bracket is no wider than `10 * tol`; `Inconclusive` when the claim is
/// consistent but the bracket is too loose to certify at `tol`; `Fail`
/// when the certified bracket excludes the claim.
#[must_use]
pub fn verify(spec: &SeriesSpec, claimed: f64, tol: f64, n_terms: usize) -> VerifyReport {
    let (lo, hi) =
        brute_force(spec, n_terms).expect("series invariants hold by construction");
    let verdict = if claimed < lo - tol || claimed > hi + tol {
        Verdict::Fail
    } else if hi - lo > 10.0 * tol {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    VerifyReport {
        claimed,
        oracle_low: lo,
        oracle_high: hi,
        n_terms,
        verdict,
    }
}
