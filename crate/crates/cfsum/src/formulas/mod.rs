//! A catalog of ready-made continued-fraction expansions for classical
//! rational series.
//!
//! Each catalog family names the series it sums:
//!
//! * [`FormulaParams::F`] — `sum 1/(n^2 + a n + b)`
//! * [`FormulaParams::G1`] — `sum 1/(n^3 + a n^2 + b n + c)` with the
//!   constant `c = (9ab - 2a^3)/27` forced so the cubic is centered
//! * [`FormulaParams::G2`] — `sum 1/((n+u)(n+(u+v)/2)(n+v))`
//! * [`FormulaParams::H1`] — `sum (2n+a)/((n^2+an+b1)(n^2+an+b2))`
//! * [`FormulaParams::H2`] — `sum 2(pn+q)/((pn+q)^4 + s(pn+q)^2 + r)`
//!
//! [`build_cf`] emits the tail expansion of each family as a rule-driven
//! [`CFrac`]: the value of the fraction at `x` equals the tail
//! `sum_{n >= x}` of the series (under the family's validity conditions).
//! When the rule's partial numerators hit an exact zero at index `k`, the
//! fraction is finite and [`finite_cf_sum`] returns the exact rational
//! value of the whole tail.
//!
//! On top of the catalog sit evaluators for three classical special
//! series ([`mathieu`], [`alt_mathieu`], [`szablowski_m2`]) and the
//! gamma-quotient identities ([`entry33_lhs`]/[`entry33_cf`],
//! [`entry35_lhs`]/[`entry35_cf`]) used as independent cross-checks.

mod gamma;

pub use gamma::{entry33_lhs, entry35_lhs, ln_gamma};

use crate::algebra::{rat, rat_i, rat_to_f64, Poly, Rat, RatFunc, Scalar};
use crate::cfrac::{CFrac, CfEval, CfEvalStatus, CfracError, ScalarPoly, SeqFn, TailRule, TermRule};
use crate::multicorrection::DiffEq;
use thiserror::Error;

/// Errors from catalog construction and evaluation.
#[derive(Debug, Error)]
pub enum FormulaError {
    /// Parameters violate a family's preconditions.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// The requested terminating depth has a nonzero partial numerator.
    #[error("fraction does not terminate at the requested depth")]
    NotTerminating,
    /// The series term has a pole at an integer in the summation range.
    #[error("series term has a pole at n = {at}")]
    PoleInRange {
        /// The offending integer.
        at: i64,
    },
    /// An evaluation argument left the supported real domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Adaptive evaluation ran out of depth before converging.
    #[error("continued fraction did not converge within {depth} terms")]
    NoConvergence {
        /// Depth reached.
        depth: usize,
    },
    /// Underlying continued-fraction failure.
    #[error(transparent)]
    Cfrac(#[from] CfracError),
}

/// Parameters selecting one catalog family; scalars may be exact rationals
/// or floats (float parameters restrict the family to numeric evaluation).
#[derive(Debug, Clone, PartialEq)]
pub enum FormulaParams {
    /// `sum 1/(n^2 + a n + b)`.
    F {
        /// Linear coefficient of the quadratic.
        a: Scalar,
        /// Constant coefficient of the quadratic.
        b: Scalar,
    },
    /// `sum 1/(n^3 + a n^2 + b n + c)` with `c = (9ab - 2a^3)/27`, i.e.
    /// the cubic is `(n + a/3)^3 + (b - a^2/3)(n + a/3)`.
    G1 {
        /// Quadratic coefficient of the cubic.
        a: Scalar,
        /// Linear coefficient of the cubic.
        b: Scalar,
    },
    /// `sum 1/((n+u)(n+(u+v)/2)(n+v))` — cubic with roots in arithmetic
    /// progression.
    G2 {
        /// First root offset.
        u: Scalar,
        /// Last root offset.
        v: Scalar,
    },
    /// `sum (2n+a)/((n^2+an+b1)(n^2+an+b2))` — two quadratics sharing
    /// their linear coefficient.
    H1 {
        /// Shared linear coefficient.
        a: Scalar,
        /// Constant of the first quadratic.
        b1: Scalar,
        /// Constant of the second quadratic.
        b2: Scalar,
    },
    /// `sum 2(pn+q)/((pn+q)^4 + s(pn+q)^2 + r)` with `p > 0`; `s`
    /// multiplies the squared factor, `r` is the constant.
    H2 {
        /// Scale of the inner linear form (must be positive).
        p: Scalar,
        /// Offset of the inner linear form.
        q: Scalar,
        /// Coefficient on the squared factor.
        s: Scalar,
        /// Constant coefficient.
        r: Scalar,
    },
}

impl FormulaParams {
    /// Checks the family's parameter preconditions.
    pub fn validate(&self) -> Result<(), FormulaError> {
        if let FormulaParams::H2 { p, .. } = self {
            if !p.is_positive() {
                return Err(FormulaError::InvalidParams(
                    "the scale p of the inner linear form must be positive".into(),
                ));
            }
        }
        Ok(())
    }

    /// `true` when every parameter is an exact rational.
    #[must_use]
    pub fn is_exact(&self) -> bool {
        match self {
            FormulaParams::F { a, b } | FormulaParams::G1 { a, b } => {
                a.is_exact() && b.is_exact()
            }
            FormulaParams::G2 { u, v } => u.is_exact() && v.is_exact(),
            FormulaParams::H1 { a, b1, b2 } => {
                a.is_exact() && b1.is_exact() && b2.is_exact()
            }
            FormulaParams::H2 { p, q, s, r } => {
                p.is_exact() && q.is_exact() && s.is_exact() && r.is_exact()
            }
        }
    }
}

fn s_half() -> Scalar {
    Scalar::from(rat(1, 2))
}

/// Quadratic-denominator rule body shared by four families:
/// `c0 / ((x+omega)^2 + s0 + K(kappa(n) / ((x+omega)^2 + s0 + (n^2+n)/2)))`.
fn quad_cf(c0: Scalar, omega: Scalar, s0: Scalar, kappa: SeqFn) -> CFrac {
    let lead = ScalarPoly::new(vec![
        omega.powi(2) + s0.clone(),
        Scalar::int(2) * omega.clone(),
        Scalar::one(),
    ]);
    let lam = SeqFn::new(vec![s0, s_half(), s_half()], vec![Scalar::one()]);
    let rule = TermRule {
        c0,
        lead,
        tail: TailRule::Quad {
            omega: omega.clone(),
            kappa,
            lam,
        },
    };
    let mut cf = CFrac::from_rule(rule);
    cf.mc_point = Some(omega);
    cf
}

/// Builds the family's tail expansion as a rule-driven continued fraction.
///
/// The value at `x` represents `sum_{n >= x}` of the family's series; the
/// terms carry the family's exact index rules, and `mc_point` carries the
/// common centering shift of the partial denominators.
pub fn build_cf(fp: &FormulaParams) -> Result<CFrac, FormulaError> {
    fp.validate()?;
    let z = Scalar::zero;
    let one = Scalar::one;
    Ok(match fp {
        FormulaParams::F { a, b } => {
            let omega = (a.clone() - one()) / Scalar::int(2);
            // kappa(n) = n^2 (n^2 + 4b - a^2) / (4 (2n-1)(2n+1))
            let c2 = Scalar::int(4) * b.clone() - a.powi(2);
            let kappa = SeqFn::new(
                vec![z(), z(), c2, z(), one()],
                vec![Scalar::int(-4), z(), Scalar::int(16)],
            );
            let lead = ScalarPoly::new(vec![omega.clone(), one()]);
            let rule = TermRule {
                c0: one(),
                lead,
                tail: TailRule::Linear {
                    omega: omega.clone(),
                    kappa,
                },
            };
            let mut cf = CFrac::from_rule(rule);
            cf.mc_point = Some(omega);
            cf
        }
        FormulaParams::G1 { a, b } => {
            let omega = (Scalar::int(2) * a.clone() - Scalar::int(3)) / Scalar::int(6);
            // s0 = (3 - 2a^2 + 6b)/12
            let s0 = (Scalar::int(3) - Scalar::int(2) * a.powi(2)
                + Scalar::int(6) * b.clone())
                / Scalar::int(12);
            // kappa(n) = -n^2 (g - 3n^2)^2 / (36 (2n-1)(2n+1)), g = a^2 - 3b
            let g = a.powi(2) - Scalar::int(3) * b.clone();
            let kappa = SeqFn::new(
                vec![
                    z(),
                    z(),
                    -g.powi(2),
                    z(),
                    Scalar::int(6) * g,
                    z(),
                    Scalar::int(-9),
                ],
                vec![Scalar::int(-36), z(), Scalar::int(144)],
            );
            quad_cf(s_half(), omega, s0, kappa)
        }
        FormulaParams::G2 { u, v } => {
            let omega = (u.clone() + v.clone() - one()) / Scalar::int(2);
            // w = ((u-v)/2)^2; s0 = 1/4 - w/2
            let w = ((u.clone() - v.clone()) / Scalar::int(2)).powi(2);
            let s0 = Scalar::from(rat(1, 4)) - w.clone() / Scalar::int(2);
            // kappa(n) = -n^2 (w - n^2)^2 / (4 (2n-1)(2n+1))
            let kappa = SeqFn::new(
                vec![
                    z(),
                    z(),
                    -w.powi(2),
                    z(),
                    Scalar::int(2) * w,
                    z(),
                    Scalar::int(-1),
                ],
                vec![Scalar::int(-4), z(), Scalar::int(16)],
            );
            quad_cf(s_half(), omega, s0, kappa)
        }
        FormulaParams::H1 { a, b1, b2 } => {
            let omega = (a.clone() - one()) / Scalar::int(2);
            // s0 = (1 + 2b1 + 2b2 - a^2)/4
            let s0 = (one() + Scalar::int(2) * b1.clone() + Scalar::int(2) * b2.clone()
                - a.powi(2))
                / Scalar::int(4);
            // kappa(n) = n^2 (-(b1-b2)^2 + (a^2 - 2(b1+b2)) n^2 - n^4)
            //            / (4 (2n-1)(2n+1))
            let d = b1.clone() - b2.clone();
            let c2 = a.powi(2) - Scalar::int(2) * (b1.clone() + b2.clone());
            let kappa = SeqFn::new(
                vec![z(), z(), -d.powi(2), z(), c2, z(), Scalar::int(-1)],
                vec![Scalar::int(-4), z(), Scalar::int(16)],
            );
            quad_cf(one(), omega, s0, kappa)
        }
        FormulaParams::H2 { p, q, s, r } => {
            let omega = q.clone() / p.clone() - s_half();
            let p2 = p.powi(2);
            // s0 = 1/4 + s/(2 p^2)
            let s0 = Scalar::from(rat(1, 4)) + s.clone() / (Scalar::int(2) * p2.clone());
            // kappa(n) = n^2 (-n^4 - (2s/p^2) n^2 + (4r - s^2)/p^4)
            //            / (4 (2n-1)(2n+1))
            let c0n = (Scalar::int(4) * r.clone() - s.powi(2)) / p2.powi(2);
            let c2n = -(Scalar::int(2) * s.clone()) / p2;
            let kappa = SeqFn::new(
                vec![z(), z(), c0n, z(), c2n, z(), Scalar::int(-1)],
                vec![Scalar::int(-4), z(), Scalar::int(16)],
            );
            quad_cf(one() / p.powi(3), omega, s0, kappa)
        }
    })
}

/// The series term of a family, as an exact rational function of `n`;
/// `None` when any parameter is a float.
#[must_use]
pub fn series_term(fp: &FormulaParams) -> Option<RatFunc> {
    let poly = |coeffs: Vec<Rat>| Poly::new(coeffs);
    let term = match fp {
        FormulaParams::F { a, b } => {
            let (a, b) = (a.as_rat()?.clone(), b.as_rat()?.clone());
            RatFunc::new(Poly::one(), poly(vec![b, a, rat_i(1)]))
        }
        FormulaParams::G1 { a, b } => {
            let (a, b) = (a.as_rat()?.clone(), b.as_rat()?.clone());
            // c = (9ab - 2a^3)/27
            let c = (&(rat_i(9) * &a * &b) - &(rat_i(2) * &a * &a * &a)) / rat_i(27);
            RatFunc::new(Poly::one(), poly(vec![c, b, a, rat_i(1)]))
        }
        FormulaParams::G2 { u, v } => {
            let (u, v) = (u.as_rat()?.clone(), v.as_rat()?.clone());
            let mid = (&u + &v) / rat_i(2);
            let den = &(&poly(vec![u, rat_i(1)]) * &poly(vec![mid, rat_i(1)]))
                * &poly(vec![v, rat_i(1)]);
            RatFunc::new(Poly::one(), den)
        }
        FormulaParams::H1 { a, b1, b2 } => {
            let (a, b1, b2) = (
                a.as_rat()?.clone(),
                b1.as_rat()?.clone(),
                b2.as_rat()?.clone(),
            );
            let q1 = poly(vec![b1, a.clone(), rat_i(1)]);
            let q2 = poly(vec![b2, a.clone(), rat_i(1)]);
            RatFunc::new(poly(vec![a, rat_i(2)]), &q1 * &q2)
        }
        FormulaParams::H2 { p, q, s, r } => {
            let (p, q, s, r) = (
                p.as_rat()?.clone(),
                q.as_rat()?.clone(),
                s.as_rat()?.clone(),
                r.as_rat()?.clone(),
            );
            let t = poly(vec![q, p]);
            let den = &(&t.pow(4) + &t.pow(2).scale(&s)) + &Poly::constant(r);
            RatFunc::new(t.scale(&rat_i(2)), den)
        }
    };
    Some(term.expect("family denominators are monic or positively scaled, never zero"))
}

/// The series term of a family evaluated in floating point at `x`.
///
/// Serves float parameters, which `series_term` cannot represent; at a
/// pole of the term the result is non-finite.
#[must_use]
pub fn series_term_f64(fp: &FormulaParams, x: f64) -> f64 {
    match fp {
        FormulaParams::F { a, b } => {
            let (a, b) = (a.to_f64(), b.to_f64());
            1.0 / (x * x + a * x + b)
        }
        FormulaParams::G1 { a, b } => {
            let (a, b) = (a.to_f64(), b.to_f64());
            let c = (9.0 * a * b - 2.0 * a * a * a) / 27.0;
            1.0 / (((x + a) * x + b) * x + c)
        }
        FormulaParams::G2 { u, v } => {
            let (u, v) = (u.to_f64(), v.to_f64());
            1.0 / ((x + u) * (x + (u + v) / 2.0) * (x + v))
        }
        FormulaParams::H1 { a, b1, b2 } => {
            let (a, b1, b2) = (a.to_f64(), b1.to_f64(), b2.to_f64());
            (2.0 * x + a) / ((x * x + a * x + b1) * (x * x + a * x + b2))
        }
        FormulaParams::H2 { p, q, s, r } => {
            let (p, q, s, r) = (p.to_f64(), q.to_f64(), s.to_f64(), r.to_f64());
            let t = p * x + q;
            let t2 = t * t;
            2.0 * t / (t2 * t2 + s * t2 + r)
        }
    }
}

/// The telescoping difference equation whose solution tail-sums the
/// family's series; `None` when any parameter is a float.
#[must_use]
pub fn diff_eq(fp: &FormulaParams) -> Option<DiffEq> {
    DiffEq::telescoping(series_term(fp)?).ok()
}

/// Exact value of `sum_{n >= n0}` of the family's series when the tail
/// expansion terminates at depth `k` (the `k`-th partial numerator is
/// exactly zero).
///
/// Requires exact parameters. Rejects a series with an integer pole at or
/// after `n0`, and a depth whose partial numerator is nonzero.
pub fn finite_cf_sum(fp: &FormulaParams, k: usize, n0: i64) -> Result<Rat, FormulaError> {
    if k == 0 {
        return Err(FormulaError::InvalidParams("depth k must be >= 1".into()));
    }
    if !fp.is_exact() {
        return Err(FormulaError::InvalidParams(
            "exact summation requires exact rational parameters".into(),
        ));
    }
    let cf = build_cf(fp)?;
    let kap = cf
        .term_exact(k + 1)?
        .expect("rule bodies generate terms at every index")
        .a;
    if !kap.is_zero() {
        return Err(FormulaError::NotTerminating);
    }
    let term = series_term(fp).expect("parameters are exact");
    if let Some(at) = term.den().first_integer_root_at_or_after(n0) {
        return Err(FormulaError::PoleInRange { at });
    }
    Ok(cf.approximant_at(k, &rat_i(n0))?)
}

/// Float-path variant of [`finite_cf_sum`] for irrational parameters: the
/// terminating condition is accepted when the `k`-th partial numerator is
/// zero to within `1e-9`, and the value is the depth-`k` convergent at
/// `n0` in floating point.
pub fn finite_cf_sum_f64(fp: &FormulaParams, k: usize, n0: f64) -> Result<f64, FormulaError> {
    if k == 0 {
        return Err(FormulaError::InvalidParams("depth k must be >= 1".into()));
    }
    let cf = build_cf(fp)?;
    let (kap, _) = cf
        .term_f64(k + 1, n0)
        .expect("rule bodies generate terms at every index");
    if kap.abs() > 1e-9 {
        return Err(FormulaError::NotTerminating);
    }
    Ok(cf.eval_at_depth_f64(n0, k)?)
}

/// Head length used by the special-series evaluators: the first terms are
/// summed directly and the continued fraction picks up the tail from
/// there, where its convergence is fast.
pub const DEFAULT_HEAD_LEN: usize = 6;

/// Where the adaptive evaluation budget tops out; generous because each
/// term costs a handful of flops.
const MAX_CF_DEPTH: usize = 200_000;

/// Adaptive evaluation of a fraction at `x`, tuned so the returned value
/// is within `tol` of the limit.
///
/// The negative-numerator fractions converge one-sided, so the
/// consecutive-convergent agreement test fires before the true error
/// reaches the caller's tolerance; demanding much tighter internal
/// agreement compensates.
pub fn cf_value(cf: &CFrac, x: f64, tol: f64) -> Result<CfEval, FormulaError> {
    let internal = (tol * 1e-5).clamp(1e-15, 1e-6);
    let out = cf.eval_adaptive(x, internal, MAX_CF_DEPTH)?;
    match out.status {
        CfEvalStatus::Converged | CfEvalStatus::Terminated => Ok(out),
        CfEvalStatus::DepthExhausted => Err(FormulaError::NoConvergence { depth: out.depth }),
    }
}

fn check_pos(name: &str, v: f64) -> Result<(), FormulaError> {
    if !v.is_finite() || v <= 0.0 {
        return Err(FormulaError::InvalidParams(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

/// `sum_{m >= 1} 2m/(m^2 + r^2)^2` to within `tol`.
pub fn mathieu(r: f64, tol: f64) -> Result<f64, FormulaError> {
    mathieu_with_head(r, tol, DEFAULT_HEAD_LEN)
}

/// [`mathieu`] with an explicit head length: terms `m < head_len` are
/// summed directly and the quartic-family fraction evaluates the tail at
/// `x = head_len`. The split point must not change the value (a property
/// the tests pin down).
pub fn mathieu_with_head(r: f64, tol: f64, head_len: usize) -> Result<f64, FormulaError> {
    Ok(mathieu_impl(r, tol, head_len)?.0)
}

fn mathieu_impl(r: f64, tol: f64, head_len: usize) -> Result<(f64, usize), FormulaError> {
    check_pos("r", r)?;
    check_pos("tol", tol)?;
    let l = head_len.max(1);
    let mut head = 0.0;
    for m in 1..l {
        let m = m as f64;
        head += 2.0 * m / (m * m + r * r).powi(2);
    }
    let cf = build_cf(&FormulaParams::H2 {
        p: Scalar::one(),
        q: Scalar::zero(),
        s: Scalar::from(2.0 * r * r),
        r: Scalar::from(r.powi(4)),
    })?;
    let tail = cf_value(&cf, l as f64, tol)?;
    Ok((head + tail.value, tail.depth))
}

/// `sum_{m >= 1} (-1)^(m-1) 2m/(m^2 + r^2)^2` to within `tol`.
pub fn alt_mathieu(r: f64, tol: f64) -> Result<f64, FormulaError> {
    alt_mathieu_with_heads(r, tol, DEFAULT_HEAD_LEN, DEFAULT_HEAD_LEN)
}

/// [`alt_mathieu`] with explicit split points.
///
/// The alternating series splits into odd minus even terms, each a
/// paired-quadratic family sum scaled by `1/8`; `k1` and `k2` are the
/// head lengths of the two parts and any positive choice yields the same
/// value (within tolerance).
pub fn alt_mathieu_with_heads(
    r: f64,
    tol: f64,
    k1: usize,
    k2: usize,
) -> Result<f64, FormulaError> {
    Ok(alt_mathieu_impl(r, tol, k1, k2)?.0)
}

fn alt_mathieu_impl(
    r: f64,
    tol: f64,
    k1: usize,
    k2: usize,
) -> Result<(f64, usize), FormulaError> {
    check_pos("r", r)?;
    check_pos("tol", tol)?;
    let (k1, k2) = (k1.max(1), k2.max(1));
    let h = (1.0 + r * r) / 4.0;
    let g = r * r / 4.0;
    let mut head1 = 0.0;
    for m in 0..k1 {
        let m = m as f64;
        head1 += (2.0 * m + 1.0) / (m * m + m + h).powi(2);
    }
    let mut head2 = 0.0;
    for m in 1..k2 {
        let m = m as f64;
        head2 += 2.0 * m / (m * m + g).powi(2);
    }
    let cf_odd = build_cf(&FormulaParams::H1 {
        a: Scalar::one(),
        b1: Scalar::from(h),
        b2: Scalar::from(h),
    })?;
    let cf_even = build_cf(&FormulaParams::H1 {
        a: Scalar::zero(),
        b1: Scalar::from(g),
        b2: Scalar::from(g),
    })?;
    let tail1 = cf_value(&cf_odd, k1 as f64, tol)?;
    let tail2 = cf_value(&cf_even, k2 as f64, tol)?;
    Ok((
        (head1 - head2 + tail1.value - tail2.value) / 8.0,
        tail1.depth.max(tail2.depth),
    ))
}

/// `sum_{n >= 0} (-1)^n / (mn + j)^2` for coprime `1 <= j < m`, to within
/// `tol`. At `(m, j) = (2, 1)` this is Catalan's constant.
pub fn szablowski_m2(m: u32, j: u32, tol: f64) -> Result<f64, FormulaError> {
    szablowski_m2_with_head(m, j, tol, DEFAULT_HEAD_LEN)
}

/// [`szablowski_m2`] with an explicit head length.
///
/// The alternating sum collapses to a single paired-quadratic family sum
/// with exact rational parameters `a = (2j - m)/(2m)`,
/// `b = j(j - m)/(4m^2)`:
/// `1/j^2 - (1/(8m^2)) sum_{n >= 1} (2n+a)/(n^2+an+b)^2`.
pub fn szablowski_m2_with_head(
    m: u32,
    j: u32,
    tol: f64,
    head_len: usize,
) -> Result<f64, FormulaError> {
    Ok(szablowski_m2_impl(m, j, tol, head_len)?.0)
}

fn szablowski_m2_impl(
    m: u32,
    j: u32,
    tol: f64,
    head_len: usize,
) -> Result<(f64, usize), FormulaError> {
    if !(1 <= j && j < m) || num::integer::gcd(m, j) != 1 {
        return Err(FormulaError::InvalidParams(format!(
            "need coprime 1 <= j < m, got (m, j) = ({m}, {j})"
        )));
    }
    check_pos("tol", tol)?;
    let (mi, ji) = (i64::from(m), i64::from(j));
    let a = rat(2 * ji - mi, 2 * mi);
    let b = rat(ji * (ji - mi), 4 * mi * mi);
    let l = head_len.max(1);
    let (af, bf) = (rat_to_f64(&a), rat_to_f64(&b));
    let mut head = 0.0;
    for n in 1..l {
        let n = n as f64;
        head += (2.0 * n + af) / (n * n + af * n + bf).powi(2);
    }
    let cf = build_cf(&FormulaParams::H1 {
        a: Scalar::from(a),
        b1: Scalar::from(b.clone()),
        b2: Scalar::from(b),
    })?;
    let tail = cf_value(&cf, l as f64, tol)?;
    let (mf, jf) = (f64::from(m), f64::from(j));
    Ok((
        1.0 / (jf * jf) - (head + tail.value) / (8.0 * mf * mf),
        tail.depth,
    ))
}

/// A special series with a dedicated evaluator.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecialSeries {
    /// `sum_{m >= 1} 2m/(m^2 + r^2)^2`.
    Mathieu {
        /// Positive shift parameter.
        r: f64,
    },
    /// `sum_{m >= 1} (-1)^(m-1) 2m/(m^2 + r^2)^2`.
    AltMathieu {
        /// Positive shift parameter.
        r: f64,
    },
    /// `sum_{n >= 0} (-1)^n/(mn + j)^2`, coprime `1 <= j < m`.
    SzablowskiM2 {
        /// Modulus.
        m: u32,
        /// Residue.
        j: u32,
    },
}

impl SpecialSeries {
    /// Checks the parameter preconditions.
    pub fn validate(&self) -> Result<(), FormulaError> {
        match self {
            SpecialSeries::Mathieu { r } | SpecialSeries::AltMathieu { r } => {
                check_pos("r", *r)
            }
            SpecialSeries::SzablowskiM2 { m, j } => {
                if !(1 <= *j && *j < *m) || num::integer::gcd(*m, *j) != 1 {
                    return Err(FormulaError::InvalidParams(format!(
                        "need coprime 1 <= j < m, got (m, j) = ({m}, {j})"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Evaluates the series to within `tol`.
    pub fn eval(&self, tol: f64) -> Result<f64, FormulaError> {
        Ok(self.eval_with_depth(tol)?.0)
    }

    /// Evaluates the series and also reports the deepest continued-fraction
    /// truncation the evaluation needed.
    pub fn eval_with_depth(&self, tol: f64) -> Result<(f64, usize), FormulaError> {
        self.validate()?;
        match self {
            SpecialSeries::Mathieu { r } => mathieu_impl(*r, tol, DEFAULT_HEAD_LEN),
            SpecialSeries::AltMathieu { r } => {
                alt_mathieu_impl(*r, tol, DEFAULT_HEAD_LEN, DEFAULT_HEAD_LEN)
            }
            SpecialSeries::SzablowskiM2 { m, j } => {
                szablowski_m2_impl(*m, *j, tol, DEFAULT_HEAD_LEN)
            }
        }
    }
}

/// Continued-fraction side of the four-gamma identity:
/// `m n / (x + K_j((m^2-j^2)(n^2-j^2) / ((2j+1) x)))`, equal to
/// [`entry33_lhs`] on the identity's domain.
#[must_use]
pub fn entry33_cf(m: Scalar, n: Scalar) -> CFrac {
    let c0 = m.clone() * n.clone();
    let lead = ScalarPoly::new(vec![Scalar::zero(), Scalar::one()]);
    CFrac::from_rule(TermRule {
        c0,
        lead,
        tail: TailRule::GammaQuotient3 { m, n },
    })
}

/// Continued-fraction side of the eight-gamma identity:
/// `2lmn / (x^2-l^2-m^2-n^2+1 + K_j(4(l^2-j^2)(m^2-j^2)(n^2-j^2) /
/// ((2j+1)(x^2-l^2-m^2-n^2+2j^2+2j+1))))`, equal to [`entry35_lhs`] on the
/// identity's domain.
#[must_use]
pub fn entry35_cf(l: Scalar, m: Scalar, n: Scalar) -> CFrac {
    let c0 = Scalar::int(2) * l.clone() * m.clone() * n.clone();
    let c = Scalar::one() - l.powi(2) - m.powi(2) - n.powi(2);
    let lead = ScalarPoly::new(vec![c, Scalar::zero(), Scalar::one()]);
    CFrac::from_rule(TermRule {
        c0,
        lead,
        tail: TailRule::GammaQuotient4 { l, m, n },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rate;

    fn exact(n: i64, d: i64) -> Scalar {
        Scalar::from(rat(n, d))
    }

    #[test]
    fn quadratic_family_rule_terms_match_hand_computation() {
        // a = b = 0: kappa(n) = n^4/(4(2n-1)(2n+1)), omega = -1/2.
        let cf = build_cf(&FormulaParams::F {
            a: Scalar::zero(),
            b: Scalar::zero(),
        })
        .unwrap();
        assert_eq!(cf.mc_point, Some(exact(-1, 2)));
        let t1 = cf.term_exact(1).unwrap().unwrap();
        assert_eq!(t1.a, RatFunc::one());
        // b1 = x - 1/2
        assert_eq!(
            t1.b,
            RatFunc::new(Poly::new(vec![rat(-1, 2), rat_i(1)]), Poly::one()).unwrap()
        );
        let t2 = cf.term_exact(2).unwrap().unwrap();
        assert_eq!(t2.a, RatFunc::from_rat(rat(1, 12)));
        let t3 = cf.term_exact(3).unwrap().unwrap();
        assert_eq!(t3.a, RatFunc::from_rat(rat(16, 60)));
    }

    #[test]
    fn quartic_family_matches_known_first_numerator() {
        // The r = 1 case of the Mathieu tail: kappa_1 = -5/12.
        let cf = build_cf(&FormulaParams::H2 {
            p: Scalar::one(),
            q: Scalar::zero(),
            s: Scalar::int(2),
            r: Scalar::one(),
        })
        .unwrap();
        let t2 = cf.term_exact(2).unwrap().unwrap();
        assert_eq!(t2.a, RatFunc::from_rat(rat(-5, 12)));
        // lead = (x - 1/2)^2 + 5/4 = x^2 - x + 3/2
        let t1 = cf.term_exact(1).unwrap().unwrap();
        assert_eq!(
            t1.b,
            RatFunc::from_poly(Poly::new(vec![rat(3, 2), rat_i(-1), rat_i(1)]))
        );
    }

    #[test]
    fn terminating_quadratic_sums_are_exact() {
        // 1/(n^2+3n+2) = 1/((n+1)(n+2)): from 1, sum = 1/2.
        let fp = FormulaParams::F {
            a: Scalar::int(3),
            b: Scalar::int(2),
        };
        assert_eq!(finite_cf_sum(&fp, 1, 1).unwrap(), rat(1, 2));
        // 1/(n^2+4n+3) = 1/((n+1)(n+3)): from 0, sum = 3/4.
        let fp = FormulaParams::F {
            a: Scalar::int(4),
            b: Scalar::int(3),
        };
        assert_eq!(finite_cf_sum(&fp, 2, 0).unwrap(), rat(3, 4));
    }

    #[test]
    fn terminating_progression_cubic_sum_is_exact() {
        // 1/(n(n+1)(n+2)) from 1 sums to 1/4; (u, v) = (2, 0) terminates
        // at depth 1.
        let fp = FormulaParams::G2 {
            u: Scalar::int(2),
            v: Scalar::zero(),
        };
        assert_eq!(finite_cf_sum(&fp, 1, 1).unwrap(), rat(1, 4));
    }

    #[test]
    fn terminating_quartic_sum_is_exact() {
        // 2n/(n^4 + 4): terminates at depth 2, sum from 1 is 3/4.
        let fp = FormulaParams::H2 {
            p: Scalar::one(),
            q: Scalar::zero(),
            s: Scalar::zero(),
            r: Scalar::int(4),
        };
        assert_eq!(finite_cf_sum(&fp, 2, 1).unwrap(), rat(3, 4));
    }

    #[test]
    fn non_terminating_depths_and_poles_are_rejected() {
        let fp = FormulaParams::F {
            a: Scalar::zero(),
            b: Scalar::zero(),
        };
        assert!(matches!(
            finite_cf_sum(&fp, 1, 1),
            Err(FormulaError::NotTerminating)
        ));
        // 1/(n^2-3n+2) = 1/((n-1)(n-2)) has poles at 1 and 2.
        let fp = FormulaParams::F {
            a: Scalar::int(-3),
            b: Scalar::int(2),
        };
        assert!(matches!(
            finite_cf_sum(&fp, 1, 1),
            Err(FormulaError::PoleInRange { at: 1 })
        ));
        assert!(FormulaParams::H2 {
            p: Scalar::int(-1),
            q: Scalar::zero(),
            s: Scalar::zero(),
            r: Scalar::one(),
        }
        .validate()
        .is_err());
    }

    #[test]
    fn float_terminating_path_matches_fixed_closed_form() {
        // Quadratic-pair family at k = 2 with an irrational shared linear
        // coefficient; the closed form at x = 1 is
        // (12 + sqrt(41)) / (35 + 5 sqrt(41)).
        let a = 41.0f64.sqrt() / 2.0;
        let fp = FormulaParams::H1 {
            a: Scalar::from(a),
            b1: Scalar::int(2),
            b2: Scalar::one(),
        };
        let got = finite_cf_sum_f64(&fp, 2, 1.0).unwrap();
        let want = 0.274_609_470_320_893_9;
        assert!((got - want).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn series_terms_match_their_families() {
        let fp = FormulaParams::H2 {
            p: Scalar::one(),
            q: Scalar::zero(),
            s: Scalar::int(2),
            r: Scalar::one(),
        };
        // 2n/(n^4 + 2n^2 + 1) = 2n/(n^2+1)^2.
        let t = series_term(&fp).unwrap();
        let den = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(
            t,
            RatFunc::new(Poly::from_ints(&[0, 2]), &den * &den).unwrap()
        );
        let fp = FormulaParams::G2 {
            u: Scalar::int(2),
            v: Scalar::zero(),
        };
        assert_eq!(
            series_term(&fp).unwrap(),
            RatFunc::new(Poly::one(), Poly::from_ints(&[0, 2, 3, 1])).unwrap()
        );
        assert!(series_term(&FormulaParams::F {
            a: Scalar::from(0.5),
            b: Scalar::zero(),
        })
        .is_none());
    }

    #[test]
    fn float_terms_agree_with_exact_terms() {
        let families = [
            FormulaParams::F {
                a: Scalar::int(2),
                b: Scalar::int(3),
            },
            FormulaParams::G1 {
                a: Scalar::int(1),
                b: Scalar::int(2),
            },
            FormulaParams::G2 {
                u: Scalar::int(2),
                v: exact(1, 2),
            },
            FormulaParams::H1 {
                a: Scalar::int(3),
                b1: Scalar::int(2),
                b2: Scalar::int(1),
            },
            FormulaParams::H2 {
                p: Scalar::int(1),
                q: Scalar::zero(),
                s: Scalar::int(2),
                r: Scalar::one(),
            },
        ];
        for fp in &families {
            let exact = series_term(fp).unwrap();
            for k in 1..=5 {
                let x = f64::from(k) + 0.25;
                let got = series_term_f64(fp, x);
                let want = exact.eval_f64(x);
                assert!(
                    (got - want).abs() <= 1e-14 * want.abs().max(1.0),
                    "{fp:?} at {x}: float term {got} vs exact term {want}"
                );
            }
        }
    }

    #[test]
    fn truncations_solve_the_difference_equation_increasingly_well() {
        // Exact residual decay of depth-D truncations must grow with D.
        let fp = FormulaParams::F {
            a: Scalar::zero(),
            b: Scalar::zero(),
        };
        let cf = build_cf(&fp).unwrap();
        let deq = diff_eq(&fp).unwrap();
        let mut last = Rate::Finite(i64::MIN);
        for depth in 1..=4 {
            let y = cf.approximant(depth).unwrap();
            let rate = deq.residual(&y).rate();
            assert!(rate > last, "depth {depth}: {rate:?} vs {last:?}");
            last = rate;
        }
    }

    #[test]
    fn mathieu_value_and_split_invariance() {
        // Reference value computed independently by high-precision
        // partial sums with certified tails.
        let want = 0.794_233_542_759_318_9;
        let got = mathieu(1.0, 1e-10).unwrap();
        assert!((got - want).abs() < 1e-10, "got {got}");
        let a = mathieu_with_head(1.0, 1e-8, 1).unwrap();
        let b = mathieu_with_head(1.0, 1e-8, 5).unwrap();
        assert!((a - b).abs() < 1e-8, "split changed the value: {a} vs {b}");
    }

    #[test]
    fn alternating_mathieu_value() {
        let want = 0.381_712_556_542_423_4;
        let got = alt_mathieu(1.0, 1e-10).unwrap();
        assert!((got - want).abs() < 1e-10, "got {got}");
    }

    #[test]
    fn alternating_reciprocal_squares_hit_catalan() {
        let want = 0.915_965_594_177_219;
        let got = szablowski_m2(2, 1, 1e-10).unwrap();
        assert!((got - want).abs() < 1e-9, "got {got}");
        assert!(szablowski_m2(4, 2, 1e-8).is_err());
        assert!(szablowski_m2(3, 3, 1e-8).is_err());
    }

    #[test]
    fn four_gamma_identity_cross_check() {
        let (x, m, n) = (5.0, 0.5, 1.0 / 3.0);
        let lhs = entry33_lhs(x, m, n).unwrap();
        let cf = entry33_cf(Scalar::from(m), Scalar::from(n));
        let rhs = cf.eval_adaptive(x, 1e-13, 50_000).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn eight_gamma_identity_cross_check() {
        let (x, l, m, n) = (6.0, 0.5, 1.0 / 3.0, 0.25);
        let lhs = entry35_lhs(x, l, m, n).unwrap();
        let cf = entry35_cf(Scalar::from(l), Scalar::from(m), Scalar::from(n));
        let rhs = cf.eval_adaptive(x, 1e-13, 50_000).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-9, "lhs {lhs} rhs {rhs}");
    }
}
