//! Generalized continued fractions with exact and floating-point evaluation.
//!
//! A fraction here is
//!
//! ```text
//! b0 + a1/(b1 + a2/(b2 + a3/(b3 + ...)))
//! ```
//!
//! with partial numerators `a_n` and partial denominators `b_n` that are
//! rational functions of `x` (explicit lists) or generated by an index rule.
//! Convergents follow the classical three-term recurrence
//!
//! ```text
//! A_n = b_n A_(n-1) + a_n A_(n-2)      A_(-1) = 1, A_0 = b0
//! B_n = b_n B_(n-1) + a_n B_(n-2)      B_(-1) = 0, B_0 = 1
//! ```
//!
//! and satisfy the cross-product identity
//! `A_n B_(n-1) - A_(n-1) B_n = (-1)^(n-1) a_1 a_2 ... a_n`,
//! which the test suite uses as an evaluation invariant.
//!
//! A partial numerator that is identically zero terminates the fraction:
//! everything from that term on contributes nothing, so the value is the
//! convergent just before it.

use crate::algebra::{AlgebraError, Poly, Rat, RatFunc, Scalar};
use num::Zero;
use thiserror::Error;

/// One explicit term: partial numerator `a` over partial denominator `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CfTerm {
    /// Partial numerator `a_n(x)`.
    pub a: RatFunc,
    /// Partial denominator `b_n(x)`.
    pub b: RatFunc,
}

/// Polynomial in `x` with exact-or-float coefficients (low-to-high).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPoly {
    /// Coefficients, low-to-high.
    pub coeffs: Vec<Scalar>,
}

impl ScalarPoly {
    /// Builds from coefficients (no trimming needed for evaluation).
    #[must_use]
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        ScalarPoly { coeffs }
    }

    /// Horner evaluation in `f64`.
    #[must_use]
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    /// Exact polynomial, if every coefficient is exact.
    #[must_use]
    pub fn to_poly(&self) -> Option<Poly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.as_rat()?.clone());
        }
        Some(Poly::new(out))
    }
}

/// Rational function of the term index `n`, with exact-or-float
/// coefficients. Generates term sequences such as
/// `kappa(n) = n^2(n^2+c) / (4(2n-1)(2n+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqFn {
    num: Vec<Scalar>,
    den: Vec<Scalar>,
}

impl SeqFn {
    /// Builds `num(n)/den(n)` from low-to-high coefficients in `n`.
    ///
    /// # Panics
    /// Panics if `den` has no nonzero coefficient.
    #[must_use]
    pub fn new(num: Vec<Scalar>, den: Vec<Scalar>) -> Self {
        assert!(
            den.iter().any(|c| !c.is_zero()),
            "sequence rule with zero denominator"
        );
        SeqFn { num, den }
    }

    /// A constant sequence.
    #[must_use]
    pub fn constant(c: Scalar) -> Self {
        SeqFn::new(vec![c], vec![Scalar::one()])
    }

    /// `true` when every coefficient is exact.
    #[must_use]
    pub fn is_exact(&self) -> bool {
        self.num.iter().chain(self.den.iter()).all(Scalar::is_exact)
    }

    /// Value at index `n` in `f64`.
    #[must_use]
    pub fn eval_f64(&self, n: f64) -> f64 {
        let horner = |cs: &[Scalar]| {
            let mut acc = 0.0;
            for c in cs.iter().rev() {
                acc = acc * n + c.to_f64();
            }
            acc
        };
        horner(&self.num) / horner(&self.den)
    }

    /// Exact value at index `n`; `None` if any coefficient is a float or
    /// the denominator vanishes at `n`.
    #[must_use]
    pub fn eval_exact(&self, n: i64) -> Option<Rat> {
        let horner = |cs: &[Scalar]| -> Option<Rat> {
            let mut acc = Rat::zero();
            let nr = crate::algebra::rat_i(n);
            for c in cs.iter().rev() {
                acc = acc * &nr + c.as_rat()?;
            }
            Some(acc)
        };
        let num = horner(&self.num)?;
        let den = horner(&self.den)?;
        if den.is_zero() {
            return None;
        }
        Some(num / den)
    }
}

/// Index rule for the terms after the first.
#[derive(Debug, Clone, PartialEq)]
pub enum TailRule {
    /// For `n >= 1`: `a_(n+1) = kappa(n)`, `b_(n+1) = x + omega`.
    Linear {
        /// Constant shift in each partial denominator.
        omega: Scalar,
        /// Partial-numerator sequence.
        kappa: SeqFn,
    },
    /// For `n >= 1`: `a_(n+1) = kappa(n)`, `b_(n+1) = (x + omega)^2 + lam(n)`.
    Quad {
        /// Shift so that partial denominators are monic quadratics in
        /// `x + omega`.
        omega: Scalar,
        /// Partial-numerator sequence.
        kappa: SeqFn,
        /// Constant term sequence of the partial denominators.
        lam: SeqFn,
    },
    /// Gamma-quotient fraction in two parameters: for `j >= 1`,
    /// `a_(j+1) = (m^2 - j^2)(n^2 - j^2)`, `b_(j+1) = (2j + 1) x`.
    GammaQuotient3 {
        /// First parameter.
        m: Scalar,
        /// Second parameter.
        n: Scalar,
    },
    /// Gamma-quotient fraction in three parameters: for `j >= 1`,
    /// `a_(j+1) = 4(l^2 - j^2)(m^2 - j^2)(n^2 - j^2)`,
    /// `b_(j+1) = (2j + 1)(x^2 - l^2 - m^2 - n^2 + 2j^2 + 2j + 1)`.
    GammaQuotient4 {
        /// First parameter.
        l: Scalar,
        /// Second parameter.
        m: Scalar,
        /// Third parameter.
        n: Scalar,
    },
}

/// Rule-generated body: `a_1 = c0`, `b_1 = lead(x)`, tail from the rule.
#[derive(Debug, Clone, PartialEq)]
pub struct TermRule {
    /// First partial numerator.
    pub c0: Scalar,
    /// First partial denominator, as a polynomial in `x`.
    pub lead: ScalarPoly,
    /// Generator for every later term.
    pub tail: TailRule,
}

/// The terms of a continued fraction.
#[derive(Debug, Clone, PartialEq)]
pub enum CfBody {
    /// Finitely many explicit terms.
    Explicit(Vec<CfTerm>),
    /// Terms generated from an index rule (conceptually infinite; a zero
    /// partial numerator still terminates evaluation). Boxed: a rule is
    /// many times the size of the explicit-list header.
    Rule(Box<TermRule>),
}

/// A generalized continued fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct CFrac {
    /// Leading term `b0` added before the fraction.
    pub b0: RatFunc,
    /// Term list or rule.
    pub body: CfBody,
    /// When every partial denominator is a polynomial in `x + omega` (after
    /// the first), the common shift `omega`; evaluation is best centered
    /// there.
    pub mc_point: Option<Scalar>,
}

/// Errors from continued-fraction operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CfracError {
    /// An exact operation was requested on a fraction with float
    /// parameters.
    #[error("fraction has floating-point parameters; exact operation unavailable")]
    FloatParams,
    /// An operation requiring an explicit term list was applied to a rule
    /// body.
    #[error("operation requires an explicit term list")]
    NotExplicit,
    /// Underlying exact-arithmetic failure (for example evaluation at a
    /// pole).
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// The floating-point recurrence produced a NaN.
    #[error("floating-point breakdown at depth {depth}")]
    NumericBreakdown {
        /// Term index at which the recurrence became NaN.
        depth: usize,
    },
    /// An equivalence transform was given a scale factor list of the wrong
    /// length or containing zero.
    #[error("equivalence factors must be nonzero and match the term count")]
    BadEquivFactors,
}

/// Convergence status of adaptive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfEvalStatus {
    /// Three consecutive convergents agreed within tolerance.
    Converged,
    /// A zero partial numerator ended the fraction; the value is exact up
    /// to rounding.
    Terminated,
    /// The depth limit was reached before the agreement test passed.
    DepthExhausted,
}

/// Result of adaptive evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CfEval {
    /// Final convergent.
    pub value: f64,
    /// Number of terms consumed.
    pub depth: usize,
    /// How evaluation stopped.
    pub status: CfEvalStatus,
}

impl CFrac {
    /// Fraction from an explicit term list.
    #[must_use]
    pub fn explicit(b0: RatFunc, terms: Vec<CfTerm>) -> CFrac {
        CFrac {
            b0,
            body: CfBody::Explicit(terms),
            mc_point: None,
        }
    }

    /// Fraction from a term rule, with `b0 = 0`.
    #[must_use]
    pub fn from_rule(rule: TermRule) -> CFrac {
        CFrac {
            b0: RatFunc::zero(),
            body: CfBody::Rule(Box::new(rule)),
            mc_point: None,
        }
    }

    /// Number of terms for explicit bodies; `None` for rules.
    #[must_use]
    pub fn term_count(&self) -> Option<usize> {
        match &self.body {
            CfBody::Explicit(t) => Some(t.len()),
            CfBody::Rule(_) => None,
        }
    }

    /// Term `n >= 1` as a pair of exact rational functions.
    ///
    /// Returns `Ok(None)` past the end of an explicit body and
    /// `Err(FloatParams)` when a rule carries float parameters.
    pub fn term_exact(&self, n: usize) -> Result<Option<CfTerm>, CfracError> {
        assert!(n >= 1, "terms are indexed from 1");
        match &self.body {
            CfBody::Explicit(terms) => Ok(terms.get(n - 1).cloned()),
            CfBody::Rule(rule) => rule_term_exact(rule, n).map(Some),
        }
    }

    /// Term `n >= 1` evaluated at `x` in floating point; `None` past the
    /// end of an explicit body.
    #[must_use]
    pub fn term_f64(&self, n: usize, x: f64) -> Option<(f64, f64)> {
        assert!(n >= 1, "terms are indexed from 1");
        match &self.body {
            CfBody::Explicit(terms) => terms
                .get(n - 1)
                .map(|t| (t.a.eval_f64(x), t.b.eval_f64(x))),
            CfBody::Rule(rule) => Some(rule_term_f64(rule, n, x)),
        }
    }

    /// Materializes the first `n` terms of a rule body as an explicit
    /// fraction (explicit bodies are truncated/cloned).
    pub fn explicit_prefix(&self, n: usize) -> Result<CFrac, CfracError> {
        let mut terms = Vec::new();
        for i in 1..=n {
            match self.term_exact(i)? {
                Some(t) => terms.push(t),
                None => break,
            }
        }
        Ok(CFrac {
            b0: self.b0.clone(),
            body: CfBody::Explicit(terms),
            mc_point: self.mc_point.clone(),
        })
    }

    /// Symbolic convergent `A_depth / B_depth` as a rational function of
    /// `x`, honoring early termination by a zero partial numerator.
    pub fn approximant(&self, depth: usize) -> Result<RatFunc, CfracError> {
        let (nums, dens, _) = self.recurrence_symbolic(depth)?;
        let a = nums.last().expect("has initial entries");
        let b = dens.last().expect("has initial entries");
        if b.is_zero() {
            return Err(AlgebraError::ZeroDenominator.into());
        }
        Ok(a.div(b)?)
    }

    /// The full value of an explicit fraction as a rational function.
    pub fn to_ratfunc(&self) -> Result<RatFunc, CfracError> {
        match &self.body {
            CfBody::Explicit(terms) => self.approximant(terms.len()),
            CfBody::Rule(_) => Err(CfracError::NotExplicit),
        }
    }

    /// Convergent numerators and denominators as rational functions:
    /// `(A, B, a_terms)` where `A[i]` is `A_(i-1)` (so `A[0] = A_(-1) = 1`)
    /// and `a_terms[i]` is the partial numerator `a_(i+1)` actually used.
    /// Stops early at a zero partial numerator.
    #[allow(clippy::type_complexity)]
    pub fn recurrence_symbolic(
        &self,
        depth: usize,
    ) -> Result<(Vec<RatFunc>, Vec<RatFunc>, Vec<RatFunc>), CfracError> {
        let mut nums = vec![RatFunc::one(), self.b0.clone()];
        let mut dens = vec![RatFunc::zero(), RatFunc::one()];
        let mut a_terms = Vec::new();
        for n in 1..=depth {
            let Some(term) = self.term_exact(n)? else {
                break;
            };
            if term.a.is_zero() {
                break;
            }
            let k = nums.len();
            let an = &(&term.b * &nums[k - 1]) + &(&term.a * &nums[k - 2]);
            let bn = &(&term.b * &dens[k - 1]) + &(&term.a * &dens[k - 2]);
            nums.push(an);
            dens.push(bn);
            a_terms.push(term.a);
        }
        Ok((nums, dens, a_terms))
    }

    /// Convergent numerators and denominators at an exact point:
    /// `(A, B, a_vals)` with the same indexing as
    /// [`CFrac::recurrence_symbolic`].
    #[allow(clippy::type_complexity)]
    pub fn recurrence_at(
        &self,
        depth: usize,
        x: &Rat,
    ) -> Result<(Vec<Rat>, Vec<Rat>, Vec<Rat>), CfracError> {
        let mut nums = vec![Rat::from_integer(1.into()), self.b0.eval(x)?];
        let mut dens = vec![Rat::zero(), Rat::from_integer(1.into())];
        let mut a_vals = Vec::new();
        for n in 1..=depth {
            let Some(term) = self.term_exact(n)? else {
                break;
            };
            if term.a.is_zero() {
                break;
            }
            let av = term.a.eval(x)?;
            let bv = term.b.eval(x)?;
            let k = nums.len();
            let an = &bv * &nums[k - 1] + &av * &nums[k - 2];
            let bn = &bv * &dens[k - 1] + &av * &dens[k - 2];
            nums.push(an);
            dens.push(bn);
            a_vals.push(av);
        }
        Ok((nums, dens, a_vals))
    }

    /// Exact convergent value at a point.
    pub fn approximant_at(&self, depth: usize, x: &Rat) -> Result<Rat, CfracError> {
        let (nums, dens, _) = self.recurrence_at(depth, x)?;
        let b = dens.last().expect("has initial entries");
        if b.is_zero() {
            return Err(AlgebraError::EvalAtPole {
                at: crate::algebra::rat_to_string(x),
            }
            .into());
        }
        Ok(nums.last().expect("has initial entries") / b)
    }

    /// Floating-point convergent at exactly `depth` terms (or at the
    /// termination point if a partial numerator vanishes first).
    pub fn eval_at_depth_f64(&self, x: f64, depth: usize) -> Result<f64, CfracError> {
        let r = self.forward_f64(x, depth, None)?;
        Ok(r.value)
    }

    /// Adaptive evaluation: walks the recurrence until three consecutive
    /// convergents agree within `tol * max(1, |value|)`, the fraction
    /// terminates, or `max_depth` is exhausted.
    ///
    /// Convergents are rescaled by powers of two when they grow or shrink
    /// past `2^±512`, which leaves every convergent value bit-identical.
    pub fn eval_adaptive(
        &self,
        x: f64,
        tol: f64,
        max_depth: usize,
    ) -> Result<CfEval, CfracError> {
        self.forward_f64(x, max_depth, Some(tol))
    }

    fn forward_f64(
        &self,
        x: f64,
        max_depth: usize,
        tol: Option<f64>,
    ) -> Result<CfEval, CfracError> {
        const BIG: f64 = 1.3407807929942597e154; // 2^512
        const SMALL: f64 = 7.458340731200207e-155; // 2^-512
        let b0 = self.b0.eval_f64(x);
        let (mut am, mut a0) = (1.0f64, b0);
        let (mut bm, mut b0v) = (0.0f64, 1.0f64);
        let mut h_prev: Option<f64> = None;
        let mut agree = 0usize;
        let mut value = b0;
        let mut depth = 0usize;
        for n in 1..=max_depth {
            let Some((av, bv)) = self.term_f64(n, x) else {
                return Ok(CfEval {
                    value,
                    depth,
                    status: CfEvalStatus::Terminated,
                });
            };
            if av == 0.0 {
                return Ok(CfEval {
                    value,
                    depth,
                    status: CfEvalStatus::Terminated,
                });
            }
            let an = bv * a0 + av * am;
            let bn = bv * b0v + av * bm;
            if an.is_nan() || bn.is_nan() {
                return Err(CfracError::NumericBreakdown { depth: n });
            }
            am = a0;
            a0 = an;
            bm = b0v;
            b0v = bn;
            depth = n;
            // Power-of-two rescaling keeps the recurrence in range without
            // changing any convergent.
            let m = an.abs().max(bn.abs()).max(am.abs()).max(bm.abs());
            if m > BIG {
                am *= SMALL;
                a0 *= SMALL;
                bm *= SMALL;
                b0v *= SMALL;
            } else if m > 0.0 && m < SMALL {
                am *= BIG;
                a0 *= BIG;
                bm *= BIG;
                b0v *= BIG;
            }
            if b0v != 0.0 {
                let h = a0 / b0v;
                value = h;
                if let Some(tol) = tol {
                    match h_prev {
                        Some(p) if (h - p).abs() <= tol * h.abs().max(1.0) => {
                            agree += 1;
                            // Two consecutive small steps = three convergents
                            // within tolerance of each other.
                            if agree >= 2 {
                                return Ok(CfEval {
                                    value: h,
                                    depth: n,
                                    status: CfEvalStatus::Converged,
                                });
                            }
                        }
                        _ => agree = 0,
                    }
                }
                h_prev = Some(h);
            } else {
                h_prev = None;
                agree = 0;
            }
        }
        Ok(CfEval {
            value,
            depth,
            status: CfEvalStatus::DepthExhausted,
        })
    }

    /// Equivalence transform with nonzero factors `r_1 ... r_N` (and the
    /// implicit `r_0 = 1`): each `a_n` becomes `r_(n-1) r_n a_n`, each
    /// `b_n` becomes `r_n b_n`. All convergents are unchanged as functions.
    ///
    /// Requires an explicit body; `r` must have one factor per term. The
    /// registered centering point is dropped: the transform rescales the
    /// partial denominators, so the recorded shift no longer describes
    /// them.
    pub fn equiv_transform(&self, r: &[Rat]) -> Result<CFrac, CfracError> {
        let CfBody::Explicit(terms) = &self.body else {
            return Err(CfracError::NotExplicit);
        };
        if r.len() != terms.len() || r.iter().any(Rat::is_zero) {
            return Err(CfracError::BadEquivFactors);
        }
        let mut out = Vec::with_capacity(terms.len());
        let mut r_prev = Rat::from_integer(1.into());
        for (t, rn) in terms.iter().zip(r) {
            let scale_a = RatFunc::from_rat(&r_prev * rn);
            let scale_b = RatFunc::from_rat(rn.clone());
            out.push(CfTerm {
                a: &scale_a * &t.a,
                b: &scale_b * &t.b,
            });
            r_prev = rn.clone();
        }
        Ok(CFrac {
            b0: self.b0.clone(),
            body: CfBody::Explicit(out),
            mc_point: None,
        })
    }
}

fn scalar_to_ratfunc(s: &Scalar) -> Result<RatFunc, CfracError> {
    s.as_rat()
        .map(|r| RatFunc::from_rat(r.clone()))
        .ok_or(CfracError::FloatParams)
}

fn rule_term_exact(rule: &TermRule, n: usize) -> Result<CfTerm, CfracError> {
    if n == 1 {
        let lead = rule.lead.to_poly().ok_or(CfracError::FloatParams)?;
        return Ok(CfTerm {
            a: scalar_to_ratfunc(&rule.c0)?,
            b: RatFunc::from_poly(lead),
        });
    }
    let j = (n - 1) as i64;
    match &rule.tail {
        TailRule::Linear { omega, kappa } => {
            let om = omega.as_rat().ok_or(CfracError::FloatParams)?;
            let k = kappa.eval_exact(j).ok_or(CfracError::FloatParams)?;
            Ok(CfTerm {
                a: RatFunc::from_rat(k),
                b: RatFunc::from_poly(Poly::new(vec![om.clone(), Rat::from_integer(1.into())])),
            })
        }
        TailRule::Quad { omega, kappa, lam } => {
            let om = omega.as_rat().ok_or(CfracError::FloatParams)?;
            let k = kappa.eval_exact(j).ok_or(CfracError::FloatParams)?;
            let l = lam.eval_exact(j).ok_or(CfracError::FloatParams)?;
            // (x + om)^2 + lam(j)
            let shifted = Poly::new(vec![om.clone(), Rat::from_integer(1.into())]);
            let b = &(&shifted * &shifted) + &Poly::constant(l);
            Ok(CfTerm {
                a: RatFunc::from_rat(k),
                b: RatFunc::from_poly(b),
            })
        }
        TailRule::GammaQuotient3 { m, n: nn } => {
            let (m, nn) = (
                m.as_rat().ok_or(CfracError::FloatParams)?,
                nn.as_rat().ok_or(CfracError::FloatParams)?,
            );
            let jj = crate::algebra::rat_i(j);
            let j2 = &jj * &jj;
            let a = (m * m - &j2) * (nn * nn - &j2);
            let b = Poly::new(vec![
                Rat::zero(),
                crate::algebra::rat_i(2 * j + 1),
            ]);
            Ok(CfTerm {
                a: RatFunc::from_rat(a),
                b: RatFunc::from_poly(b),
            })
        }
        TailRule::GammaQuotient4 { l, m, n: nn } => {
            let (l, m, nn) = (
                l.as_rat().ok_or(CfracError::FloatParams)?,
                m.as_rat().ok_or(CfracError::FloatParams)?,
                nn.as_rat().ok_or(CfracError::FloatParams)?,
            );
            let jj = crate::algebra::rat_i(j);
            let j2 = &jj * &jj;
            let a = Rat::from_integer(4.into())
                * (l * l - &j2)
                * (m * m - &j2)
                * (nn * nn - &j2);
            let c = -(l * l) - m * m - nn * nn
                + Rat::from_integer((2 * j * j + 2 * j + 1).into());
            // b_(j+1) = (2j+1) * (x^2 + c)
            let b = Poly::new(vec![c, Rat::zero(), Rat::from_integer(1.into())])
                .scale(&crate::algebra::rat_i(2 * j + 1));
            Ok(CfTerm {
                a: RatFunc::from_rat(a),
                b: RatFunc::from_poly(b),
            })
        }
    }
}

fn rule_term_f64(rule: &TermRule, n: usize, x: f64) -> (f64, f64) {
    if n == 1 {
        return (rule.c0.to_f64(), rule.lead.eval_f64(x));
    }
    let j = (n - 1) as f64;
    match &rule.tail {
        TailRule::Linear { omega, kappa } => (kappa.eval_f64(j), x + omega.to_f64()),
        TailRule::Quad { omega, kappa, lam } => {
            let xs = x + omega.to_f64();
            (kappa.eval_f64(j), xs * xs + lam.eval_f64(j))
        }
        TailRule::GammaQuotient3 { m, n: nn } => {
            let (m, nn) = (m.to_f64(), nn.to_f64());
            let j2 = j * j;
            ((m * m - j2) * (nn * nn - j2), (2.0 * j + 1.0) * x)
        }
        TailRule::GammaQuotient4 { l, m, n: nn } => {
            let (l, m, nn) = (l.to_f64(), m.to_f64(), nn.to_f64());
            let j2 = j * j;
            let a = 4.0 * (l * l - j2) * (m * m - j2) * (nn * nn - j2);
            let b = (2.0 * j + 1.0)
                * (x * x - l * l - m * m - nn * nn + 2.0 * j2 + 2.0 * j + 1.0);
            (a, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_i};

    fn const_term(a: i64, b: i64) -> CfTerm {
        CfTerm {
            a: RatFunc::from_rat(rat_i(a)),
            b: RatFunc::from_rat(rat_i(b)),
        }
    }

    #[test]
    fn convergents_of_the_all_ones_fraction_are_fibonacci_ratios() {
        // 1 + 1/(1 + 1/(1 + ...)) has convergents F(n+2)/F(n+1).
        let cf = CFrac::explicit(RatFunc::one(), vec![const_term(1, 1); 6]);
        let h5 = cf.approximant(5).unwrap();
        assert_eq!(h5, RatFunc::from_rat(rat(13, 8)));
        let v = cf.approximant_at(6, &rat_i(7)).unwrap();
        // x never appears; value is the same at any point.
        assert_eq!(v, rat(21, 13));
    }

    #[test]
    fn zero_partial_numerator_terminates() {
        let mut terms = vec![const_term(1, 2); 2];
        terms.push(const_term(0, 99));
        terms.push(const_term(1, 1));
        let cf = CFrac::explicit(RatFunc::zero(), terms);
        // Value freezes at two terms: 1/(2 + 1/2) = 2/5.
        assert_eq!(cf.approximant(10).unwrap(), RatFunc::from_rat(rat(2, 5)));
        let ev = cf.eval_adaptive(1.0, 1e-14, 100).unwrap();
        assert_eq!(ev.status, CfEvalStatus::Terminated);
        assert!((ev.value - 0.4).abs() < 1e-15);
    }

    #[test]
    fn cross_product_identity_holds_exactly() {
        // Terms with genuine x-dependence.
        let terms: Vec<CfTerm> = (1..=8)
            .map(|i| CfTerm {
                a: RatFunc::new(
                    Poly::from_ints(&[i, 1]),
                    Poly::from_ints(&[1]),
                )
                .unwrap(),
                b: RatFunc::new(
                    Poly::from_ints(&[1, i]),
                    Poly::from_ints(&[2]),
                )
                .unwrap(),
            })
            .collect();
        let cf = CFrac::explicit(RatFunc::from_poly(Poly::x()), terms);
        let x = rat(7, 3);
        let (nums, dens, a_vals) = cf.recurrence_at(8, &x).unwrap();
        let mut prod = Rat::from_integer(1.into());
        for (n, av) in a_vals.iter().enumerate() {
            prod *= av;
            // Entry i of nums is A_(i-1): A_n sits at index n+1.
            let k = n + 2;
            let det = &nums[k] * &dens[k - 1] - &nums[k - 1] * &dens[k];
            let expect = if n % 2 == 0 { prod.clone() } else { -prod.clone() };
            assert_eq!(det, expect, "identity fails at depth {}", n + 1);
        }
    }

    #[test]
    fn equivalence_transform_preserves_every_convergent() {
        let terms: Vec<CfTerm> = (1..=5)
            .map(|i| CfTerm {
                a: RatFunc::from_rat(rat_i(i)),
                b: RatFunc::new(Poly::from_ints(&[i, 1]), Poly::from_ints(&[1])).unwrap(),
            })
            .collect();
        let cf = CFrac::explicit(RatFunc::zero(), terms);
        let r: Vec<Rat> = vec![rat(2, 1), rat(-1, 3), rat(5, 2), rat(1, 7), rat(-4, 1)];
        let tf = cf.equiv_transform(&r).unwrap();
        for d in 1..=5 {
            assert_eq!(
                cf.approximant(d).unwrap(),
                tf.approximant(d).unwrap(),
                "convergent {d} changed"
            );
        }
        assert!(cf.equiv_transform(&vec![Rat::zero(); 5]).is_err());
        assert!(cf.equiv_transform(&[rat_i(1)]).is_err());
    }

    #[test]
    fn adaptive_evaluation_of_sqrt2() {
        // sqrt(2) = 1 + 1/(2 + 1/(2 + ...)).
        let cf = CFrac::explicit(RatFunc::one(), vec![const_term(1, 2); 64]);
        let ev = cf.eval_adaptive(0.0, 1e-13, 64).unwrap();
        assert_eq!(ev.status, CfEvalStatus::Converged);
        assert!((ev.value - 2.0f64.sqrt()).abs() < 1e-12);
        assert!(ev.depth < 40);
    }

    #[test]
    fn rescaling_handles_huge_terms() {
        let t = CfTerm {
            a: RatFunc::from_rat(rat_i(i64::MAX / 2)),
            b: RatFunc::from_rat(rat_i(i64::MAX / 2)),
        };
        let cf = CFrac::explicit(RatFunc::zero(), vec![t; 4000]);
        let ev = cf.eval_adaptive(0.0, 1e-12, 4000).unwrap();
        assert!(ev.value.is_finite());
        // K(c/c) with huge c tends to 1.
        assert!((ev.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rule_terms_match_hand_built_terms() {
        // kappa(n) = n^2/(4(2n-1)(2n+1)) with omega = -1/2.
        let kappa = SeqFn::new(
            vec![Scalar::zero(), Scalar::zero(), Scalar::int(1)],
            vec![Scalar::int(-4), Scalar::zero(), Scalar::int(16)],
        );
        let rule = TermRule {
            c0: Scalar::one(),
            lead: ScalarPoly::new(vec![Scalar::from(rat(-1, 2)), Scalar::one()]),
            tail: TailRule::Linear {
                omega: Scalar::from(rat(-1, 2)),
                kappa,
            },
        };
        let cf = CFrac::from_rule(rule);
        let t1 = cf.term_exact(1).unwrap().unwrap();
        assert_eq!(t1.a, RatFunc::one());
        let t2 = cf.term_exact(2).unwrap().unwrap();
        assert_eq!(t2.a, RatFunc::from_rat(rat(1, 12)));
        let t3 = cf.term_exact(3).unwrap().unwrap();
        assert_eq!(t3.a, RatFunc::from_rat(rat(4, 60)));
        // Explicit prefix evaluates identically.
        let pre = cf.explicit_prefix(6).unwrap();
        let x = rat(5, 2);
        assert_eq!(
            cf.approximant_at(6, &x).unwrap(),
            pre.approximant_at(6, &x).unwrap()
        );
        // f64 terms agree with exact terms.
        let (af, bf) = cf.term_f64(3, 2.0).unwrap();
        assert!((af - 4.0 / 60.0).abs() < 1e-15);
        assert!((bf - 1.5).abs() < 1e-15);
    }

    #[test]
    fn float_rules_refuse_exact_operations() {
        let rule = TermRule {
            c0: Scalar::Float(1.5),
            lead: ScalarPoly::new(vec![Scalar::zero(), Scalar::one()]),
            tail: TailRule::Linear {
                omega: Scalar::zero(),
                kappa: SeqFn::constant(Scalar::one()),
            },
        };
        let cf = CFrac::from_rule(rule);
        assert!(matches!(
            cf.term_exact(1),
            Err(CfracError::FloatParams)
        ));
        assert!(cf.eval_at_depth_f64(2.0, 5).is_ok());
    }
}
