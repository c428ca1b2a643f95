//! Exact summation of rational series via continued-fraction corrections.
//!
//! The core problem: given rational functions `U(x)` and `V(x)`, find
//! `y(x)` with
//!
//! ```text
//! y(x) - U(x) * y(x + 1) = V(x)
//! ```
//!
//! so that partial sums of `sum V(n)` telescope through `y`. The solver in
//! [`multicorrection`] builds `y` as a continued fraction, one level at a
//! time, choosing each level so the residual of the difference equation
//! decays as fast as possible at infinity. When the residual vanishes
//! identically the continued fraction collapses to a closed form; otherwise
//! the truncated fraction is a high-accuracy tail approximation.
//!
//! Layers:
//!
//! * [`algebra`] — exact rationals, dense polynomials, rational functions in
//!   canonical form, and truncated series at infinity.
//! * [`cfrac`] — generalized continued fractions: exact convergents,
//!   equivalence transforms, adaptive floating-point evaluation.
//! * [`multicorrection`] — the correction solver and term-rule fitting.
//! * [`formulas`] — a catalog of ready-made continued-fraction expansions for
//!   classical series (reciprocal quadratics/cubics/quartics, Mathieu-type
//!   sums, gamma-quotient identities).
//! * [`summation`] — telescoping closed-form sums, certified brute-force
//!   brackets, and claim verification.

pub mod algebra;
pub mod cfrac;
pub mod formulas;
pub mod multicorrection;
pub mod summation;

pub use algebra::{Poly, Rat, RatFunc, Rate, Scalar, SeriesInvX};
pub use cfrac::{CFrac, CfBody, CfEval, CfEvalStatus, CfTerm, TermRule};
pub use formulas::{FormulaError, FormulaParams, SpecialSeries};
pub use multicorrection::{
    solve, DiffEq, Solution, SolveConfig, SolveError, SolveOutcome,
};

