//! Command-line front end for exact and certified summation of rational
//! series.
//!
//! Four operations share one report shape: `solve` runs the correction
//! solver on a difference equation, `sum` evaluates a series (exactly when
//! a closed form exists, otherwise to a certified enclosure), `eval`
//! computes a single continued-fraction or special-series value, and
//! `verify` checks a claimed sum against an enclosure.
//!
//! Reports are printed as indented text by default and as single-line JSON
//! under `--json`. JSON output is deterministic byte for byte: keys are
//! emitted in sorted order and exact rationals are serialized as
//! `{"den": "...", "num": "..."}` with decimal-string integers so that no
//! value is rounded. Exit codes: 0 on success (including a `Fail` verdict,
//! which is a successful check), 2 on input validation errors, 3 when a
//! computation cannot produce a result.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::{One, Zero};
use serde_json::{json, Map, Value};

use cfsum::algebra::{parse_rat, rat_i, rat_to_f64, Poly, Rat, RatFunc, Rate, Scalar};
use cfsum::formulas::{
    self, FormulaError, FormulaParams, SpecialSeries, DEFAULT_HEAD_LEN,
};
use cfsum::multicorrection::{
    solve, CorrectionKind, DiffEq, FittedRule, SolveConfig, SolveError, SolveOutcome,
    Solution, StopReason,
};
use cfsum::summation::{
    brute_force, telescope_sum, verify, SeriesSpec, SignPattern, SummationError,
    Verdict,
};

#[derive(Parser)]
#[command(
    name = "cfsum",
    version,
    about = "Sum rational series exactly or to certified enclosures",
    long_about = "Solves y(x) - U(x) y(x+1) = V(x) by iterated corrections, sums series \
                  through the resulting closed forms or continued fractions, and checks \
                  claimed values against certified enclosures.\n\n\
                  Polynomials are written as comma-separated coefficients, constant term \
                  first; each coefficient is an integer or a fraction like -3/8."
)]
struct Cli {
    /// Emit the report as single-line JSON instead of indented text.
    #[arg(long, global = true)]
    json: bool,

    /// Include wall-clock timings in the report (breaks byte-for-byte
    /// determinism of the output).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve y(x) - U(x) y(x+1) = V(x) by iterated corrections.
    Solve(SolveArgs),
    /// Sum a series: exact value when a closed form exists, certified
    /// enclosure otherwise.
    Sum(SumArgs),
    /// Evaluate a catalog continued fraction or special series once.
    Eval(EvalArgs),
    /// Check a claimed sum against a certified enclosure.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Numerator of V: comma-separated coefficients, constant first.
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    v_num: String,

    /// Denominator of V.
    #[arg(long, value_name = "COEFFS", default_value = "1", allow_hyphen_values = true)]
    v_den: String,

    /// Numerator of U.
    #[arg(long, value_name = "COEFFS", default_value = "1", allow_hyphen_values = true)]
    u_num: String,

    /// Denominator of U.
    #[arg(long, value_name = "COEFFS", default_value = "1", allow_hyphen_values = true)]
    u_den: String,

    /// Maximum number of correction levels.
    #[arg(long, default_value_t = 8)]
    max_levels: usize,

    /// Skip fitting closed-index rules to the solved level coefficients.
    #[arg(long)]
    no_fit: bool,
}

#[derive(Args)]
struct SumArgs {
    /// Numerator of the summand u(n): comma-separated coefficients.
    #[arg(long, value_name = "COEFFS", conflicts_with = "formula", allow_hyphen_values = true)]
    term_num: Option<String>,

    /// Denominator of the summand.
    #[arg(long, value_name = "COEFFS", requires = "term_num", allow_hyphen_values = true)]
    term_den: Option<String>,

    /// First summation index (ignored by special series, which fix their
    /// own starting index).
    #[arg(long, default_value_t = 1)]
    n0: i64,

    /// Named series family: f, g1, g2, h1, h2, mathieu, alt-mathieu, or
    /// szablowski-m2.
    #[arg(long, value_name = "NAME")]
    formula: Option<String>,

    #[command(flatten)]
    params: FormulaOpts,

    /// Sum the first K fraction terms exactly (terminating families only).
    #[arg(long, value_name = "K")]
    k: Option<usize>,

    /// Target accuracy for numeric evaluation.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Number of terms behind the certified enclosure.
    #[arg(long, default_value_t = 20_000)]
    n_terms: usize,

    /// Maximum correction levels when solving for a closed form.
    #[arg(long, default_value_t = 8)]
    max_levels: usize,
}

#[derive(Args)]
struct EvalArgs {
    /// Named series family: f, g1, g2, h1, h2, mathieu, alt-mathieu, or
    /// szablowski-m2.
    #[arg(long, value_name = "NAME")]
    formula: String,

    #[command(flatten)]
    params: FormulaOpts,

    /// Evaluation point (required for f/g1/g2/h1/h2; special series have
    /// no free point).
    #[arg(long)]
    x: Option<f64>,

    /// Target accuracy.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Numerator of the summand u(n): comma-separated coefficients.
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    term_num: String,

    /// Denominator of the summand.
    #[arg(long, value_name = "COEFFS", default_value = "1", allow_hyphen_values = true)]
    term_den: String,

    /// First summation index.
    #[arg(long, default_value_t = 1)]
    n0: i64,

    /// Treat the series as alternating, first term positive:
    /// sum of (-1)^(n-n0) u(n).
    #[arg(long)]
    alternating: bool,

    /// Claimed value: a fraction like 3/4 or a decimal like 0.75.
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    claimed: String,

    /// Verdict tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,

    /// Number of terms behind the certified enclosure.
    #[arg(long, default_value_t = 10_000)]
    n_terms: usize,
}

/// Family parameters, shared by `sum` and `eval`. Each family reads only
/// its own flags; extras are rejected by name.
#[derive(Args)]
struct FormulaOpts {
    /// Parameter a (families f, g1, h1).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    a: Option<String>,

    /// Parameter b (families f, g1).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    b: Option<String>,

    /// Parameter b1 (family h1).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    b1: Option<String>,

    /// Parameter b2 (family h1).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    b2: Option<String>,

    /// Parameter u (family g2).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    u: Option<String>,

    /// Parameter v (family g2).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    v: Option<String>,

    /// Parameter p (family h2).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    p: Option<String>,

    /// Parameter q (family h2).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    q: Option<String>,

    /// Parameter s (family h2).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    s: Option<String>,

    /// Parameter r (family h2, mathieu, alt-mathieu).
    #[arg(long, value_name = "NUM", allow_hyphen_values = true)]
    r: Option<String>,

    /// Slope m (szablowski-m2).
    #[arg(long, value_name = "INT")]
    m: Option<u32>,

    /// Offset j (szablowski-m2).
    #[arg(long, value_name = "INT")]
    j: Option<u32>,
}

/// A failed run: validation failures exit 2, computation failures exit 3.
enum Failure {
    Validation(String),
    Computation(String),
}

impl From<cfsum::algebra::AlgebraError> for Failure {
    fn from(e: cfsum::algebra::AlgebraError) -> Failure {
        Failure::Validation(e.to_string())
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Failure {
        match e {
            FormulaError::InvalidParams(_)
            | FormulaError::PoleInRange { .. }
            | FormulaError::Domain(_) => Failure::Validation(e.to_string()),
            FormulaError::NotTerminating
            | FormulaError::NoConvergence { .. }
            | FormulaError::Cfrac(_) => Failure::Computation(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        match e {
            SolveError::ZeroU | SolveError::ZeroV => Failure::Validation(e.to_string()),
            SolveError::NoInitialCorrection { .. } => Failure::Computation(e.to_string()),
        }
    }
}

impl From<SummationError> for Failure {
    fn from(e: SummationError) -> Failure {
        match e {
            SummationError::PoleInRange { .. }
            | SummationError::DivergentTail { .. }
            | SummationError::NonVanishingAtInfinity => Failure::Validation(e.to_string()),
            SummationError::Algebra(_) => Failure::Computation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timings {
                let ms = started.elapsed().as_millis() as u64;
                report.insert("timings".into(), json!({ "total_ms": ms }));
            }
            emit(&cli, &report);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, kind, message) = match &failure {
                Failure::Validation(m) => (2, "validation", m),
                Failure::Computation(m) => (3, "computation", m),
            };
            if cli.json {
                let body = json!({
                    "schema": 1,
                    "status": "error",
                    "error": { "kind": kind, "message": message },
                });
                println!("{body}");
            } else {
                eprintln!("error ({kind}): {message}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<Map<String, Value>, Failure> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Sum(a) => run_sum(a),
        Command::Eval(a) => run_eval(a),
        Command::Verify(a) => run_verify(a),
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

/// Parses `"c0,c1,..."` (constant term first) into a polynomial. Each
/// coefficient is an integer or `a/b` fraction.
fn parse_poly(s: &str, flag: &str) -> Result<Poly, Failure> {
    let mut coeffs = Vec::new();
    for piece in s.split(',') {
        let c = parse_rat(piece.trim()).map_err(|_| {
            Failure::Validation(format!(
                "--{flag}: cannot parse `{piece}` as an integer or a/b fraction"
            ))
        })?;
        coeffs.push(c);
    }
    Ok(Poly::new(coeffs))
}

/// Parses a parameter as an exact rational when possible, falling back to
/// floating point for values like `0.5` or `1.4142135623730951`.
fn parse_scalar(s: &str, flag: &str) -> Result<Scalar, Failure> {
    let t = s.trim();
    if let Ok(r) = parse_rat(t) {
        return Ok(Scalar::Exact(r));
    }
    match t.parse::<f64>() {
        Ok(f) if f.is_finite() => Ok(Scalar::Float(f)),
        _ => Err(Failure::Validation(format!(
            "--{flag}: cannot parse `{s}` as a rational or decimal number"
        ))),
    }
}

/// A resolved `--formula` selection.
enum Family {
    Catalog(Box<FormulaParams>),
    Special(SpecialSeries),
}

fn build_family(kind: &str, o: &FormulaOpts) -> Result<Family, Failure> {
    let need = |opt: &Option<String>, flag: &str| -> Result<Scalar, Failure> {
        match opt {
            Some(s) => parse_scalar(s, flag),
            None => Err(Failure::Validation(format!(
                "--formula {kind} requires --{flag}"
            ))),
        }
    };
    let need_int = |opt: Option<u32>, flag: &str| -> Result<u32, Failure> {
        opt.ok_or_else(|| {
            Failure::Validation(format!("--formula {kind} requires --{flag}"))
        })
    };

    let family = match kind.to_ascii_lowercase().as_str() {
        "f" => Family::Catalog(Box::new(FormulaParams::F {
            a: need(&o.a, "a")?,
            b: need(&o.b, "b")?,
        })),
        "g1" => Family::Catalog(Box::new(FormulaParams::G1 {
            a: need(&o.a, "a")?,
            b: need(&o.b, "b")?,
        })),
        "g2" => Family::Catalog(Box::new(FormulaParams::G2 {
            u: need(&o.u, "u")?,
            v: need(&o.v, "v")?,
        })),
        "h1" => Family::Catalog(Box::new(FormulaParams::H1 {
            a: need(&o.a, "a")?,
            b1: need(&o.b1, "b1")?,
            b2: need(&o.b2, "b2")?,
        })),
        "h2" => Family::Catalog(Box::new(FormulaParams::H2 {
            p: need(&o.p, "p")?,
            q: need(&o.q, "q")?,
            s: need(&o.s, "s")?,
            r: need(&o.r, "r")?,
        })),
        "mathieu" => Family::Special(SpecialSeries::Mathieu {
            r: need(&o.r, "r")?.to_f64(),
        }),
        "alt-mathieu" => Family::Special(SpecialSeries::AltMathieu {
            r: need(&o.r, "r")?.to_f64(),
        }),
        "szablowski-m2" => Family::Special(SpecialSeries::SzablowskiM2 {
            m: need_int(o.m, "m")?,
            j: need_int(o.j, "j")?,
        }),
        other => {
            return Err(Failure::Validation(format!(
                "unknown formula `{other}`; expected one of f, g1, g2, h1, h2, \
                 mathieu, alt-mathieu, szablowski-m2"
            )))
        }
    };
    match &family {
        Family::Catalog(fp) => fp.validate()?,
        Family::Special(sp) => sp.validate()?,
    }
    Ok(family)
}

// ---------------------------------------------------------------------------
// Report building
// ---------------------------------------------------------------------------

fn new_report(status: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("status".into(), json!(status));
    m
}

fn rat_json(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

fn ratfunc_json(f: &RatFunc) -> Value {
    json!({ "num": poly_json(f.num()), "den": poly_json(f.den()) })
}

fn rate_json(r: &Rate) -> Value {
    match r {
        Rate::Finite(k) => json!(k),
        Rate::Infinite => json!("inf"),
    }
}

fn bracket_json(low: f64, high: f64, n_terms: usize) -> Value {
    json!({ "low": low, "high": high, "n_terms": n_terms })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "Pass",
        Verdict::Fail => "Fail",
        Verdict::Inconclusive => "Inconclusive",
    }
}

fn stop_name(reason: StopReason) -> &'static str {
    match reason {
        StopReason::KappaZero => "kappa_zero",
        StopReason::NonAffine => "non_affine",
        StopReason::NoImprovement => "no_improvement",
        StopReason::MaxLevels => "max_levels",
    }
}

fn kind_name(kind: CorrectionKind) -> &'static str {
    match kind {
        CorrectionKind::Linear => "linear",
        CorrectionKind::Quadratic => "quadratic",
        CorrectionKind::Cubic => "cubic",
        CorrectionKind::Quartic => "quartic",
    }
}

fn fitted_json(f: &FittedRule) -> Value {
    json!({
        "rule": ratfunc_json(&f.rule),
        "fitted": f.fitted,
        "validated": f.validated,
    })
}

fn solution_json(sol: &Solution) -> Map<String, Value> {
    let status = match sol.outcome {
        SolveOutcome::ClosedForm => "closed_form",
        SolveOutcome::Truncated { .. } => "truncated",
    };
    let mut rep = new_report(status);
    if let SolveOutcome::Truncated { reason } = sol.outcome {
        rep.insert("stop".into(), json!(stop_name(reason)));
    }
    rep.insert("y".into(), ratfunc_json(&sol.y));
    rep.insert(
        "initial".into(),
        json!({
            "c0": rat_json(&sol.init.c0),
            "nu": sol.init.nu,
            "phi": poly_json(&sol.init.phi),
        }),
    );
    rep.insert(
        "kind".into(),
        match sol.kind {
            Some(k) => json!(kind_name(k)),
            None => Value::Null,
        },
    );
    rep.insert(
        "levels".into(),
        Value::Array(
            sol.levels
                .iter()
                .map(|lv| json!({ "kappa": rat_json(&lv.kappa), "denom": poly_json(&lv.denom) }))
                .collect(),
        ),
    );
    rep.insert(
        "residual_rates".into(),
        Value::Array(sol.residual_rates.iter().map(rate_json).collect()),
    );
    rep.insert(
        "mc_point".into(),
        match &sol.mc_point {
            Some(w) => rat_json(w),
            None => Value::Null,
        },
    );
    if let Some(f) = &sol.kappa_fit {
        rep.insert("kappa_rule".into(), fitted_json(f));
    }
    if let Some(f) = &sol.shift_fit {
        rep.insert("shift_rule".into(), fitted_json(f));
    }
    rep
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn run_solve(a: &SolveArgs) -> Result<Map<String, Value>, Failure> {
    let v = RatFunc::new(parse_poly(&a.v_num, "v-num")?, parse_poly(&a.v_den, "v-den")?)?;
    let u = RatFunc::new(parse_poly(&a.u_num, "u-num")?, parse_poly(&a.u_den, "u-den")?)?;
    let deq = DiffEq::new(u, v)?;
    let cfg = SolveConfig {
        max_levels: a.max_levels,
        fit_rules: !a.no_fit,
        ..SolveConfig::default()
    };
    let sol = solve(&deq, &cfg)?;
    Ok(solution_json(&sol))
}

fn run_sum(a: &SumArgs) -> Result<Map<String, Value>, Failure> {
    if let Some(tn) = &a.term_num {
        return sum_rational(a, tn);
    }
    let kind = a.formula.as_deref().ok_or_else(|| {
        Failure::Validation("provide a summand via --term-num or a family via --formula".into())
    })?;
    match build_family(kind, &a.params)? {
        Family::Catalog(fp) => sum_catalog(a, kind, &fp),
        Family::Special(sp) => sum_special(a, kind, &sp),
    }
}

/// Sums a user-supplied rational term: solves the telescoping equation,
/// telescopes exactly when a closed form appears, and always reports a
/// certified enclosure.
fn sum_rational(a: &SumArgs, tn: &str) -> Result<Map<String, Value>, Failure> {
    let td = a.term_den.as_deref().unwrap_or("1");
    let term = RatFunc::new(parse_poly(tn, "term-num")?, parse_poly(td, "term-den")?)?;
    let spec = SeriesSpec::new(term.clone(), a.n0, SignPattern::AllPositiveTail)?;
    let (low, high) = brute_force(&spec, a.n_terms)?;

    let deq = DiffEq::telescoping(term.clone())?;
    let cfg = SolveConfig {
        max_levels: a.max_levels,
        ..SolveConfig::default()
    };
    let sol = solve(&deq, &cfg)?;

    let mut rep = new_report("value");
    rep.insert("term".into(), ratfunc_json(&term));
    rep.insert("n0".into(), json!(a.n0));
    rep.insert("bracket".into(), bracket_json(low, high, a.n_terms));
    match sol.outcome {
        SolveOutcome::ClosedForm => {
            let exact = telescope_sum(&sol.y, a.n0)?;
            let value = rat_to_f64(&exact);
            let vr = verify(&spec, value, a.tol, a.n_terms);
            rep.insert("exact".into(), rat_json(&exact));
            rep.insert("value".into(), json!(value));
            rep.insert("verdict".into(), json!(verdict_name(vr.verdict)));
            rep.insert(
                "solver".into(),
                json!({ "status": "closed_form", "levels": sol.levels.len() }),
            );
        }
        SolveOutcome::Truncated { reason } => {
            // The truncated candidate approximates the tail sum, and its
            // residual decays fast only away from small indices: sum a
            // short head termwise and evaluate the candidate at the split
            // point. Fall back to the enclosure midpoint on a pole.
            let split = a.n0 + DEFAULT_HEAD_LEN as i64;
            let mut head = Rat::zero();
            for n in a.n0..split {
                head += term.eval(&rat_i(n)).map_err(Failure::from)?;
            }
            let est = rat_to_f64(&head) + sol.y.eval_f64(split as f64);
            let value = if est.is_finite() { est } else { 0.5 * (low + high) };
            rep.insert("value".into(), json!(value));
            rep.insert(
                "solver".into(),
                json!({
                    "status": "truncated",
                    "stop": stop_name(reason),
                    "levels": sol.levels.len(),
                    "rate": rate_json(sol.residual_rates.last().unwrap_or(&Rate::Finite(0))),
                }),
            );
        }
    }
    Ok(rep)
}

/// Sums a catalog family from `n0`: the first K fraction terms exactly
/// under `--k`, otherwise the full series numerically with a head-split
/// continued-fraction tail and, for exact parameters, a certified
/// enclosure of the same series.
fn sum_catalog(a: &SumArgs, kind: &str, fp: &FormulaParams) -> Result<Map<String, Value>, Failure> {
    if let Some(k) = a.k {
        let mut rep = new_report("finite_cf");
        rep.insert("formula".into(), json!(kind));
        rep.insert("k".into(), json!(k));
        rep.insert("n0".into(), json!(a.n0));
        if fp.is_exact() {
            let exact = formulas::finite_cf_sum(fp, k, a.n0)?;
            rep.insert("exact".into(), rat_json(&exact));
            rep.insert("value".into(), json!(rat_to_f64(&exact)));
        } else {
            let value = formulas::finite_cf_sum_f64(fp, k, a.n0 as f64)?;
            rep.insert("value".into(), json!(value));
        }
        return Ok(rep);
    }

    let cf = formulas::build_cf(fp)?;
    let mut rep = new_report("value");
    rep.insert("formula".into(), json!(kind));
    rep.insert("n0".into(), json!(a.n0));
    if let Some(term) = formulas::series_term(fp) {
        // Exact parameters: sum a short head termwise and evaluate the
        // fraction at the shifted point, where it converges fast; enclose
        // the same series independently.
        let split = a.n0 + DEFAULT_HEAD_LEN as i64;
        let mut head = Rat::zero();
        for n in a.n0..split {
            head += term.eval(&rat_i(n)).map_err(|_| {
                Failure::Validation(format!("series term has a pole at n = {n}"))
            })?;
        }
        let out = formulas::cf_value(&cf, split as f64, a.tol)?;
        let spec = SeriesSpec::new(term.clone(), a.n0, SignPattern::AllPositiveTail)?;
        let (low, high) = brute_force(&spec, a.n_terms)?;
        rep.insert("term".into(), ratfunc_json(&term));
        rep.insert("value".into(), json!(rat_to_f64(&head) + out.value));
        rep.insert("depth".into(), json!(out.depth));
        rep.insert("bracket".into(), bracket_json(low, high, a.n_terms));
    } else {
        // Floating-point parameters: no exact summand exists, so no
        // enclosure is made; the head is summed in floating point.
        let (head, out) = split_eval(fp, &cf, a.n0 as f64, a.tol)?;
        rep.insert("value".into(), json!(head + out.value));
        rep.insert("depth".into(), json!(out.depth));
    }
    Ok(rep)
}

/// Sums a few leading series terms in floating point and evaluates the
/// fraction at the shifted point, where it converges fast. The family value
/// at `x` equals term(x) + term(x+1) + ... + the fraction's value past the
/// split.
fn split_eval(
    fp: &FormulaParams,
    cf: &cfsum::CFrac,
    x: f64,
    tol: f64,
) -> Result<(f64, cfsum::CfEval), Failure> {
    let mut head = 0.0;
    for k in 0..DEFAULT_HEAD_LEN {
        let t = formulas::series_term_f64(fp, x + k as f64);
        if !t.is_finite() {
            return Err(Failure::Validation(format!(
                "series term has a pole at x = {}",
                x + k as f64
            )));
        }
        head += t;
    }
    let out = formulas::cf_value(cf, x + DEFAULT_HEAD_LEN as f64, tol)?;
    Ok((head, out))
}

/// Sums a named special series and brackets it by direct summation of the
/// defining terms (exact rationals built from the parameters).
fn sum_special(a: &SumArgs, kind: &str, sp: &SpecialSeries) -> Result<Map<String, Value>, Failure> {
    let (value, depth) = sp.eval_with_depth(a.tol)?;
    let spec = special_series_spec(sp)?;
    let (low, high) = brute_force(&spec, a.n_terms)?;
    let mut rep = new_report("value");
    rep.insert("formula".into(), json!(kind));
    rep.insert("value".into(), json!(value));
    rep.insert("depth".into(), json!(depth));
    rep.insert("bracket".into(), bracket_json(low, high, a.n_terms));
    Ok(rep)
}

/// The defining summand of a special series, with exact coefficients: the
/// float parameter is promoted to the rational it represents exactly, so
/// the enclosure covers the very series the evaluator targets.
fn special_series_spec(sp: &SpecialSeries) -> Result<SeriesSpec, Failure> {
    match sp {
        SpecialSeries::Mathieu { r } | SpecialSeries::AltMathieu { r } => {
            let r_exact = Rat::from_float(*r).ok_or_else(|| {
                Failure::Validation("--r must be a finite number".into())
            })?;
            let rho = &r_exact * &r_exact;
            let den = Poly::new(vec![rho, Rat::zero(), Rat::one()]).pow(2);
            let term = RatFunc::new(Poly::from_ints(&[0, 2]), den)?;
            let pattern = if matches!(sp, SpecialSeries::Mathieu { .. }) {
                SignPattern::AllPositiveTail
            } else {
                SignPattern::Alternating
            };
            Ok(SeriesSpec::new(term, 1, pattern)?)
        }
        SpecialSeries::SzablowskiM2 { m, j } => {
            let den = Poly::from_ints(&[i64::from(*j), i64::from(*m)]).pow(2);
            let term = RatFunc::new(Poly::one(), den)?;
            Ok(SeriesSpec::new(term, 0, SignPattern::Alternating)?)
        }
    }
}

fn run_eval(a: &EvalArgs) -> Result<Map<String, Value>, Failure> {
    let mut rep = new_report("value");
    rep.insert("formula".into(), json!(a.formula.to_ascii_lowercase()));
    match build_family(&a.formula, &a.params)? {
        Family::Catalog(fp) => {
            let x = a.x.ok_or_else(|| {
                Failure::Validation(format!(
                    "--formula {} requires an evaluation point --x",
                    a.formula
                ))
            })?;
            if !x.is_finite() {
                return Err(Failure::Validation("--x must be finite".into()));
            }
            let cf = formulas::build_cf(&fp)?;
            let (head, out) = split_eval(&fp, &cf, x, a.tol)?;
            rep.insert("x".into(), json!(x));
            rep.insert("value".into(), json!(head + out.value));
            rep.insert("depth".into(), json!(out.depth));
        }
        Family::Special(sp) => {
            let (value, depth) = sp.eval_with_depth(a.tol)?;
            rep.insert("value".into(), json!(value));
            rep.insert("depth".into(), json!(depth));
        }
    }
    Ok(rep)
}

fn run_verify(a: &VerifyArgs) -> Result<Map<String, Value>, Failure> {
    let term = RatFunc::new(
        parse_poly(&a.term_num, "term-num")?,
        parse_poly(&a.term_den, "term-den")?,
    )?;
    let pattern = if a.alternating {
        SignPattern::Alternating
    } else {
        SignPattern::AllPositiveTail
    };
    let spec = SeriesSpec::new(term, a.n0, pattern)?;

    let t = a.claimed.trim();
    let (claimed, claimed_exact) = if let Ok(r) = parse_rat(t) {
        (rat_to_f64(&r), Some(r))
    } else {
        match t.parse::<f64>() {
            Ok(f) if f.is_finite() => (f, None),
            _ => {
                return Err(Failure::Validation(format!(
                    "--claimed: cannot parse `{t}` as a rational or decimal number"
                )))
            }
        }
    };

    let vr = verify(&spec, claimed, a.tol, a.n_terms);
    let mut rep = new_report("value");
    rep.insert("claimed".into(), json!(vr.claimed));
    if let Some(r) = &claimed_exact {
        rep.insert("claimed_exact".into(), rat_json(r));
    }
    rep.insert(
        "bracket".into(),
        bracket_json(vr.oracle_low, vr.oracle_high, vr.n_terms),
    );
    rep.insert("tol".into(), json!(a.tol));
    rep.insert("verdict".into(), json!(verdict_name(vr.verdict)));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

fn emit(cli: &Cli, report: &Map<String, Value>) {
    if cli.json {
        println!("{}", Value::Object(report.clone()));
    } else {
        let mut out = String::new();
        for (key, value) in report {
            render(key, value, 0, &mut out);
        }
        print!("{out}");
    }
}

/// An object of the shape `{"den": "...", "num": "..."}` is an exact
/// rational and renders as `num/den`.
fn as_rational(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    if m.len() != 2 {
        return None;
    }
    let num = m.get("num")?.as_str()?;
    let den = m.get("den")?.as_str()?;
    Some(if den == "1" {
        num.to_string()
    } else {
        format!("{num}/{den}")
    })
}

fn as_leaf(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => as_rational(v),
    }
}

fn render(key: &str, value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Some(leaf) = as_leaf(value) {
        out.push_str(&format!("{pad}{key}: {leaf}\n"));
        return;
    }
    match value {
        Value::Array(items) => {
            if let Some(leaves) = items.iter().map(as_leaf).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{pad}{key}: [{}]\n", leaves.join(", ")));
            } else {
                out.push_str(&format!("{pad}{key}:\n"));
                for (i, item) in items.iter().enumerate() {
                    render(&format!("[{i}]"), item, indent + 1, out);
                }
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in m {
                render(k, v, indent + 1, out);
            }
        }
        _ => unreachable!("leaves are handled above"),
    }
}
