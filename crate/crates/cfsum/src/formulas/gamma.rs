//! Log-gamma and the two gamma-quotient identities used for cross-checks.
//!
//! The identities equate `(1 - Q)/(1 + Q)` (a quotient of four gamma
//! values) and `(1 - P)/(1 + P)` (a quotient of eight) with continued
//! fractions whose terms are polynomials in the parameters — see
//! [`entry33_cf`](super::entry33_cf) / [`entry35_cf`](super::entry35_cf)
//! for the fraction side. Both sides are computed independently here, so
//! agreement is a strong end-to-end check of the fraction machinery.

use super::FormulaError;

/// `ln(2*pi) / 2`.
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// Asymptotic-series coefficients of `ln Gamma`: term `k` contributes
/// `B_2k / (2k (2k-1) x^(2k-1))` with `B_2k` the Bernoulli numbers.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Arguments below this are raised by the recurrence
/// `ln Gamma(x) = ln Gamma(x+1) - ln x` before the asymptotic series is
/// applied; at 12 the first omitted term is below 1e-18.
const SERIES_THRESHOLD: f64 = 12.0;

/// Natural log of the gamma function for `x > 0`, accurate to ~1e-14.
pub fn ln_gamma(x: f64) -> Result<f64, FormulaError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(FormulaError::Domain(format!(
            "ln_gamma requires a positive finite argument, got {x}"
        )));
    }
    let mut shift = 0.0;
    let mut t = x;
    while t < SERIES_THRESHOLD {
        shift -= t.ln();
        t += 1.0;
    }
    let mut s = HALF_LN_TWO_PI + (t - 0.5) * t.ln() - t;
    let t2 = t * t;
    let mut p = 1.0 / t;
    for c in STIRLING {
        s += c * p;
        p /= t2;
    }
    Ok(s + shift)
}

/// `(1 - Q)/(1 + Q)` where `Q` is the four-gamma quotient
///
/// ```text
///     Gamma((x+m-n+1)/2) Gamma((x-m+n+1)/2)
/// Q = -------------------------------------
///     Gamma((x+m+n+1)/2) Gamma((x-m-n+1)/2)
/// ```
///
/// restricted to the regime where all four arguments are positive reals.
pub fn entry33_lhs(x: f64, m: f64, n: f64) -> Result<f64, FormulaError> {
    let half = |t: f64| t / 2.0;
    let ln_q = ln_gamma(half(x + m - n + 1.0))? + ln_gamma(half(x - m + n + 1.0))?
        - ln_gamma(half(x + m + n + 1.0))?
        - ln_gamma(half(x - m - n + 1.0))?;
    let q = ln_q.exp();
    Ok((1.0 - q) / (1.0 + q))
}

/// `(1 - P)/(1 + P)` where `P` is the eight-gamma quotient whose numerator
/// takes the sign patterns of `(l, m, n)` with an even number of minus
/// signs and whose denominator takes the odd patterns:
///
/// ```text
///     Gamma((x+l+m+n+1)/2) Gamma((x+l-m-n+1)/2) Gamma((x-l+m-n+1)/2) Gamma((x-l-m+n+1)/2)
/// P = -----------------------------------------------------------------------------------
///     Gamma((x-l-m-n+1)/2) Gamma((x-l+m+n+1)/2) Gamma((x+l-m+n+1)/2) Gamma((x+l+m-n+1)/2)
/// ```
///
/// restricted to the regime where all eight arguments are positive reals.
pub fn entry35_lhs(x: f64, l: f64, m: f64, n: f64) -> Result<f64, FormulaError> {
    let g = |sl: f64, sm: f64, sn: f64| {
        ln_gamma((x + sl * l + sm * m + sn * n + 1.0) / 2.0)
    };
    let ln_p = g(1.0, 1.0, 1.0)? + g(1.0, -1.0, -1.0)? + g(-1.0, 1.0, -1.0)?
        + g(-1.0, -1.0, 1.0)?
        - g(-1.0, -1.0, -1.0)?
        - g(-1.0, 1.0, 1.0)?
        - g(1.0, -1.0, 1.0)?
        - g(1.0, 1.0, -1.0)?;
    let p = ln_p.exp();
    Ok((1.0 - p) / (1.0 + p))
}
