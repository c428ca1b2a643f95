//! Correction solver for first-order rational difference equations.
//!
//! Given rational `U(x)`, `V(x)`, the solver builds `y(x)` with
//!
//! ```text
//! y(x) - U(x) * y(x + 1) = V(x)
//! ```
//!
//! as a continued fraction, greedily: an initial term `c0 / Phi(x)` (or
//! `c0 * Phi(x)` when the solution grows) is chosen to cancel the residual's
//! leading behavior at infinity, then correction levels
//! `kappa_k / b_k(x)` are nested into the fraction one at a time, each
//! chosen so the exact residual decays strictly faster than before. The
//! process ends in one of three ways:
//!
//! * the residual vanishes identically — `y` is an exact closed form;
//! * a level's partial numerator solves to zero, or no shape improves the
//!   decay — the truncated fraction is a tail approximation whose quality
//!   is the last achieved decay rate;
//! * the configured level budget runs out.
//!
//! Every unknown is found by affine probing (see [`probe`]-module docs) —
//! three exact residual evaluations per unknown, no symbolic system
//! solving — and every acceptance decision is made on exact decay rates,
//! never floats.

mod fit;
mod frac;
mod probe;

pub use fit::{autofit_rule, guess_term_rule, FittedRule};

use crate::algebra::{Poly, Rat, RatFunc, Rate, Scalar};
use crate::cfrac::{CFrac, CfTerm};
use frac::Frac;
use num::Zero;
use probe::{probe_affine, ProbeOutcome};
use thiserror::Error;

/// The difference equation `y(x) - U(x) y(x+1) = V(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffEq {
    u: RatFunc,
    v: RatFunc,
}

impl DiffEq {
    /// Builds the equation; both `U` and `V` must be nonzero.
    pub fn new(u: RatFunc, v: RatFunc) -> Result<DiffEq, SolveError> {
        if u.is_zero() {
            return Err(SolveError::ZeroU);
        }
        if v.is_zero() {
            return Err(SolveError::ZeroV);
        }
        Ok(DiffEq { u, v })
    }

    /// The telescoping equation `y(x) - y(x+1) = V(x)`, the shape that sums
    /// the series with term `V`.
    pub fn telescoping(v: RatFunc) -> Result<DiffEq, SolveError> {
        DiffEq::new(RatFunc::one(), v)
    }

    /// Coefficient `U`.
    #[must_use]
    pub fn u(&self) -> &RatFunc {
        &self.u
    }

    /// Right-hand side `V`.
    #[must_use]
    pub fn v(&self) -> &RatFunc {
        &self.v
    }

    /// Exact residual `y(x) - U(x) y(x+1) - V(x)` of a candidate.
    #[must_use]
    pub fn residual(&self, y: &RatFunc) -> RatFunc {
        &(y - &(&self.u * &y.shift_int(1))) - &self.v
    }
}

/// Shape of a correction level's partial denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionKind {
    /// `x + c` — one unknown besides the partial numerator.
    Linear,
    /// `x^2 + c1 x + c0` — two unknowns.
    Quadratic,
    /// Monic cubic.
    Cubic,
    /// Monic quartic.
    Quartic,
}

impl CorrectionKind {
    /// All shapes, in trial preference order (smallest first).
    pub const ALL: [CorrectionKind; 4] = [
        CorrectionKind::Linear,
        CorrectionKind::Quadratic,
        CorrectionKind::Cubic,
        CorrectionKind::Quartic,
    ];

    /// Degree of the partial denominator.
    #[must_use]
    pub fn degree(self) -> usize {
        match self {
            CorrectionKind::Linear => 1,
            CorrectionKind::Quadratic => 2,
            CorrectionKind::Cubic => 3,
            CorrectionKind::Quartic => 4,
        }
    }
}

/// One accepted correction level `kappa / denom(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    /// Partial numerator.
    pub kappa: Rat,
    /// Monic partial denominator.
    pub denom: Poly,
}

/// The initial correction term.
///
/// For `nu >= 1` the candidate starts as `c0 / phi(x)` with `phi` monic of
/// degree `nu`, and correction levels nest inside the denominator:
/// `c0 / (phi + K(kappa_k / b_k))`. For `nu <= 0` (a solution that grows or
/// tends to a constant) it starts as the polynomial `c0 * phi(x)` with
/// `phi` monic of degree `-nu`, and the correction fraction is added to it.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCorrection {
    /// Scale of the initial term.
    pub c0: Rat,
    /// Decay exponent of the initial term at infinity.
    pub nu: i64,
    /// Monic polynomial of degree `|nu|`.
    pub phi: Poly,
}

/// Why the solver stopped without a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The next level's partial numerator solved to exactly zero — the
    /// correction family cannot improve this residual.
    KappaZero,
    /// A series coefficient depended non-affinely on an unknown at its
    /// solving order; the probe cannot continue safely.
    NonAffine,
    /// No level shape strictly improved the residual's decay rate.
    NoImprovement,
    /// The configured level budget was exhausted.
    MaxLevels,
}

/// How a solve ended.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// The residual vanished identically: `y` solves the equation exactly.
    ClosedForm,
    /// The chain was cut short; `y` approximates the solution with residual
    /// decay equal to the last entry of `residual_rates`.
    Truncated {
        /// What ended the chain.
        reason: StopReason,
    },
}

/// Solver configuration.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Maximum number of correction levels (default 8).
    pub max_levels: usize,
    /// How many series orders past the current decay rate a probe may scan
    /// for a usable coefficient (default 6).
    pub probe_window: i64,
    /// The initial-term exponent scan covers `|nu| <= |rate(V)| + extra`
    /// (default extra 2).
    pub nu_search_extra: i64,
    /// Attempt to fit index rules to the solved level coefficients
    /// (default true).
    pub fit_rules: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_levels: 8,
            probe_window: 6,
            nu_search_extra: 2,
            fit_rules: true,
        }
    }
}

/// Errors that prevent a solve from starting or finding any candidate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    /// `U` was identically zero.
    #[error("U must be nonzero")]
    ZeroU,
    /// `V` was identically zero (the zero function solves trivially).
    #[error("V must be nonzero")]
    ZeroV,
    /// No initial term of any scanned exponent improved on the trivial
    /// candidate.
    #[error("no initial correction improves the residual (scanned |nu| <= {scanned})")]
    NoInitialCorrection {
        /// Largest exponent magnitude scanned.
        scanned: i64,
    },
}

/// The result of a solve.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Initial correction term.
    pub init: InitialCorrection,
    /// Shape shared by all accepted levels (`None` if no level was
    /// accepted).
    pub kind: Option<CorrectionKind>,
    /// Accepted correction levels, outermost first.
    pub levels: Vec<Level>,
    /// Exact residual decay rates after 0, 1, 2, ... levels; a closed form
    /// ends the list with `Rate::Infinite`.
    pub residual_rates: Vec<Rate>,
    /// The assembled candidate, reduced.
    pub y: RatFunc,
    /// Exact residual of `y` (zero iff `outcome` is `ClosedForm`).
    pub residual: RatFunc,
    /// How the solve ended.
    pub outcome: SolveOutcome,
    /// The candidate as a continued fraction.
    pub cf: CFrac,
    /// Common centering shift of the level denominators, when they share
    /// one: for linear levels `x + w`, this is `w`; for quadratic levels
    /// with a common linear coefficient `2w`, this is `w` (so denominators
    /// read `(x + w)^2 + d_k`).
    pub mc_point: Option<Rat>,
    /// Validated index rule for the partial numerators `kappa_k`, when one
    /// fits.
    pub kappa_fit: Option<FittedRule>,
    /// Validated index rule for the level constants: the shifts of linear
    /// levels, or the centered constants `d_k` of quadratic levels around
    /// `mc_point`.
    pub shift_fit: Option<FittedRule>,
}

struct Ctx<'a> {
    u_f: Frac,
    v_f: Frac,
    u_is_one: bool,
    cfg: &'a SolveConfig,
}

impl Ctx<'_> {
    fn error_of(&self, y: &Frac) -> Frac {
        let moved = y.shift_int(1);
        if self.u_is_one {
            y.sub(&moved).sub(&self.v_f)
        } else {
            y.sub(&self.u_f.mul(&moved)).sub(&self.v_f)
        }
    }
}

fn assemble_y(init: &InitialCorrection, levels: &[Level]) -> Frac {
    let mut tail: Option<Frac> = None;
    for level in levels.iter().rev() {
        let t = match tail {
            None => Frac {
                num: Poly::constant(level.kappa.clone()),
                den: level.denom.clone(),
            },
            Some(t) => Frac {
                num: t.den.scale(&level.kappa),
                den: &(&level.denom * &t.den) + &t.num,
            },
        };
        tail = Some(t);
    }
    if init.nu >= 1 {
        match tail {
            None => Frac {
                num: Poly::constant(init.c0.clone()),
                den: init.phi.clone(),
            },
            Some(t) => Frac {
                num: t.den.scale(&init.c0),
                den: &(&init.phi * &t.den) + &t.num,
            },
        }
    } else {
        let head = init.phi.scale(&init.c0);
        match tail {
            None => Frac::from_poly(head),
            Some(t) => Frac {
                num: &(&head * &t.den) + &t.num,
                den: t.den,
            },
        }
    }
}

/// Builds a monic polynomial of the given degree from its non-leading
/// coefficients (low-to-high, length `degree`).
fn monic_with(coeffs: &[Rat], degree: usize) -> Poly {
    let mut v = coeffs.to_vec();
    v.resize(degree, Rat::zero());
    v.push(Rat::from_integer(1.into()));
    Poly::new(v)
}

enum LevelAttempt {
    Accepted {
        level: Level,
        e_new: Frac,
        rate: Rate,
    },
    KappaZero,
    NonAffine,
    NoGain,
}

fn try_level(
    ctx: &Ctx<'_>,
    init: &InitialCorrection,
    levels: &[Level],
    kind: CorrectionKind,
    cur_rate: i64,
) -> LevelAttempt {
    let deg = kind.degree();
    let residual_with = |kappa: &Rat, coeffs: &[Rat]| -> Frac {
        let mut chain = levels.to_vec();
        chain.push(Level {
            kappa: kappa.clone(),
            denom: monic_with(coeffs, deg),
        });
        ctx.error_of(&assemble_y(init, &chain))
    };

    // Solve the partial numerator first, with every denominator coefficient
    // at zero.
    let zeros = vec![Rat::zero(); deg];
    let kappa = match probe_affine(
        |t| residual_with(t, &zeros),
        cur_rate + ctx.cfg.probe_window,
    ) {
        ProbeOutcome::Solved { u, .. } => {
            if u.is_zero() {
                return LevelAttempt::KappaZero;
            }
            u
        }
        ProbeOutcome::NonAffine { .. } => return LevelAttempt::NonAffine,
        ProbeOutcome::NoDependence => return LevelAttempt::NoGain,
        // The driver never probes a vanished residual; treat defensively.
        ProbeOutcome::AlreadyZero => return LevelAttempt::NoGain,
    };

    // Fill denominator coefficients from the highest power down, tracking
    // the decay rate actually achieved so each next probe window starts at
    // the right place.
    let mut coeffs = zeros;
    let mut running = {
        let e = residual_with(&kappa, &coeffs);
        if e.is_zero() {
            return accept(kappa, &coeffs, deg, e);
        }
        match e.rate() {
            Rate::Finite(r) => r,
            Rate::Infinite => unreachable!("nonzero residual has finite rate"),
        }
    };
    for pos in (0..deg).rev() {
        let outcome = probe_affine(
            |t| {
                let mut c = coeffs.clone();
                c[pos] = t.clone();
                residual_with(&kappa, &c)
            },
            running + ctx.cfg.probe_window,
        );
        match outcome {
            ProbeOutcome::Solved { u, .. } => {
                coeffs[pos] = u;
                let e = residual_with(&kappa, &coeffs);
                if e.is_zero() {
                    return accept(kappa, &coeffs, deg, e);
                }
                if let Rate::Finite(r) = e.rate() {
                    running = running.max(r);
                }
            }
            ProbeOutcome::AlreadyZero => {
                // Residual already vanishes with this coefficient at zero.
                let e = residual_with(&kappa, &coeffs);
                return accept(kappa, &coeffs, deg, e);
            }
            ProbeOutcome::NoDependence => {} // leave the coefficient at 0
            ProbeOutcome::NonAffine { .. } => return LevelAttempt::NonAffine,
        }
    }
    let e = residual_with(&kappa, &coeffs);
    let rate = e.rate();
    if e.is_zero() || rate > Rate::Finite(cur_rate) {
        return accept_with_rate(kappa, &coeffs, deg, e, rate);
    }
    LevelAttempt::NoGain
}

fn accept(kappa: Rat, coeffs: &[Rat], deg: usize, e: Frac) -> LevelAttempt {
    let rate = e.rate();
    accept_with_rate(kappa, coeffs, deg, e, rate)
}

fn accept_with_rate(
    kappa: Rat,
    coeffs: &[Rat],
    deg: usize,
    e: Frac,
    rate: Rate,
) -> LevelAttempt {
    LevelAttempt::Accepted {
        level: Level {
            kappa,
            denom: monic_with(coeffs, deg),
        },
        e_new: e,
        rate,
    }
}

fn initial_correction_impl(
    ctx: &Ctx<'_>,
    v: &RatFunc,
) -> Result<(InitialCorrection, Frac, Rate), SolveError> {
    let mu = v
        .rate()
        .finite()
        .expect("nonzero V has a finite rate");
    let bound = mu.abs() + ctx.cfg.nu_search_extra;
    let window = mu + ctx.cfg.probe_window;

    // Scan candidate exponents: a pure power c / x^l, rating the exact
    // residual improvement each exponent can deliver.
    let mut best: Option<(i64, Rat, Rate)> = None;
    for l in -bound..=bound {
        let trial_init = |c: &Rat| InitialCorrection {
            c0: c.clone(),
            nu: l,
            phi: Poly::monomial(Rat::from_integer(1.into()), l.unsigned_abs() as usize),
        };
        let outcome = probe_affine(
            |c| ctx.error_of(&assemble_y(&trial_init(c), &[])),
            window,
        );
        let ProbeOutcome::Solved { u: c, .. } = outcome else {
            continue;
        };
        if c.is_zero() {
            continue;
        }
        let e = ctx.error_of(&assemble_y(&trial_init(&c), &[]));
        let r = e.rate();
        if r <= Rate::Finite(mu) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bl, _, br)) => {
                r > *br
                    || (r == *br && l.abs() < bl.abs())
                    || (r == *br && l.abs() == bl.abs() && l > *bl)
            }
        };
        if better {
            best = Some((l, c, r));
        }
    }
    let (nu, c0, _) = best.ok_or(SolveError::NoInitialCorrection { scanned: bound })?;

    // Fill the non-leading coefficients of phi, highest power first.
    let deg = nu.unsigned_abs() as usize;
    let mut coeffs = vec![Rat::zero(); deg];
    let make = |coeffs: &[Rat]| InitialCorrection {
        c0: c0.clone(),
        nu,
        phi: monic_with(coeffs, deg),
    };
    let mut e = ctx.error_of(&assemble_y(&make(&coeffs), &[]));
    let mut running = match e.rate() {
        Rate::Finite(r) => r,
        Rate::Infinite => {
            let init = make(&coeffs);
            return Ok((init, e, Rate::Infinite));
        }
    };
    for pos in (0..deg).rev() {
        let outcome = probe_affine(
            |t| {
                let mut c = coeffs.to_vec();
                c[pos] = t.clone();
                ctx.error_of(&assemble_y(&make(&c), &[]))
            },
            running + ctx.cfg.probe_window,
        );
        match outcome {
            ProbeOutcome::Solved { u, .. } => {
                coeffs[pos] = u;
                e = ctx.error_of(&assemble_y(&make(&coeffs), &[]));
                match e.rate() {
                    Rate::Finite(r) => running = running.max(r),
                    Rate::Infinite => break,
                }
            }
            ProbeOutcome::AlreadyZero => {
                e = ctx.error_of(&assemble_y(&make(&coeffs), &[]));
                break;
            }
            ProbeOutcome::NoDependence => {}
            ProbeOutcome::NonAffine { .. } => break,
        }
    }
    let init = make(&coeffs);
    let rate = e.rate();
    Ok((init, e, rate))
}

/// Computes just the initial correction term for an equation, with its
/// exact residual and the residual's decay rate.
pub fn initial_correction(
    deq: &DiffEq,
    cfg: &SolveConfig,
) -> Result<(InitialCorrection, RatFunc, Rate), SolveError> {
    let ctx = Ctx {
        u_f: Frac::from_ratfunc(deq.u()),
        v_f: Frac::from_ratfunc(deq.v()),
        u_is_one: deq.u() == &RatFunc::one(),
        cfg,
    };
    let (init, e, rate) = initial_correction_impl(&ctx, deq.v())?;
    Ok((init, e.reduce(), rate))
}

fn detect_mc_point(kind: Option<CorrectionKind>, levels: &[Level]) -> Option<Rat> {
    let kind = kind?;
    if levels.is_empty() {
        return None;
    }
    match kind {
        CorrectionKind::Linear => {
            let w = levels[0].denom.coeff(0);
            levels
                .iter()
                .all(|l| l.denom.coeff(0) == w)
                .then_some(w)
        }
        CorrectionKind::Quadratic => {
            let c1 = levels[0].denom.coeff(1);
            levels
                .iter()
                .all(|l| l.denom.coeff(1) == c1)
                .then(|| c1 / Rat::from_integer(2.into()))
        }
        _ => None,
    }
}

fn build_cf(init: &InitialCorrection, levels: &[Level], mc: &Option<Rat>) -> CFrac {
    let mut terms = Vec::with_capacity(levels.len() + 1);
    let b0 = if init.nu >= 1 {
        terms.push(CfTerm {
            a: RatFunc::from_rat(init.c0.clone()),
            b: RatFunc::from_poly(init.phi.clone()),
        });
        RatFunc::zero()
    } else {
        RatFunc::from_poly(init.phi.scale(&init.c0))
    };
    for l in levels {
        terms.push(CfTerm {
            a: RatFunc::from_rat(l.kappa.clone()),
            b: RatFunc::from_poly(l.denom.clone()),
        });
    }
    let mut cf = CFrac::explicit(b0, terms);
    cf.mc_point = mc.clone().map(Scalar::Exact);
    cf
}

/// Runs the full correction process on an equation.
pub fn solve(deq: &DiffEq, cfg: &SolveConfig) -> Result<Solution, SolveError> {
    let ctx = Ctx {
        u_f: Frac::from_ratfunc(deq.u()),
        v_f: Frac::from_ratfunc(deq.v()),
        u_is_one: deq.u() == &RatFunc::one(),
        cfg,
    };
    let (init, mut e, rate0) = initial_correction_impl(&ctx, deq.v())?;
    let mut rates = vec![rate0];
    let mut levels: Vec<Level> = Vec::new();
    let mut kind: Option<CorrectionKind> = None;

    let outcome = loop {
        if e.is_zero() {
            break SolveOutcome::ClosedForm;
        }
        if levels.len() >= cfg.max_levels {
            break SolveOutcome::Truncated {
                reason: StopReason::MaxLevels,
            };
        }
        let cur = rates
            .last()
            .expect("rates nonempty")
            .finite()
            .expect("nonzero residual has finite rate");
        let trial_kinds: &[CorrectionKind] = match kind {
            Some(ref k) => std::slice::from_ref(k),
            None => &CorrectionKind::ALL,
        };
        let mut accepted = None;
        let mut stop = StopReason::NoImprovement;
        for &k in trial_kinds {
            match try_level(&ctx, &init, &levels, k, cur) {
                LevelAttempt::Accepted { level, e_new, rate } => {
                    accepted = Some((k, level, e_new, rate));
                    break;
                }
                LevelAttempt::KappaZero => stop = StopReason::KappaZero,
                LevelAttempt::NonAffine => {
                    if stop != StopReason::KappaZero {
                        stop = StopReason::NonAffine;
                    }
                }
                LevelAttempt::NoGain => {}
            }
        }
        match accepted {
            Some((k, level, e_new, rate)) => {
                kind.get_or_insert(k);
                levels.push(level);
                e = e_new;
                rates.push(rate);
            }
            None => {
                break SolveOutcome::Truncated { reason: stop };
            }
        }
    };

    let mc_point = detect_mc_point(kind, &levels);
    let (kappa_fit, shift_fit) = if cfg.fit_rules && levels.len() >= 4 {
        let kappas: Vec<Rat> = levels.iter().map(|l| l.kappa.clone()).collect();
        let shifts: Option<Vec<Rat>> = match kind {
            Some(CorrectionKind::Linear) => {
                Some(levels.iter().map(|l| l.denom.coeff(0)).collect())
            }
            Some(CorrectionKind::Quadratic) => mc_point.as_ref().map(|w| {
                levels
                    .iter()
                    .map(|l| l.denom.coeff(0) - w * w)
                    .collect()
            }),
            _ => None,
        };
        (
            autofit_rule(&kappas),
            shifts.as_deref().and_then(autofit_rule),
        )
    } else {
        (None, None)
    };

    let cf = build_cf(&init, &levels, &mc_point);
    let y = assemble_y(&init, &levels).reduce();
    let residual = e.reduce();
    Ok(Solution {
        init,
        kind,
        levels,
        residual_rates: rates,
        y,
        residual,
        outcome,
        cf,
        mc_point,
        kappa_fit,
        shift_fit,
    })
}
