//! Affine probing: solving for one unknown coefficient from series data.
//!
//! Every unknown the solver introduces (a correction's partial numerator, a
//! denominator coefficient) enters each residual series coefficient
//! *affinely at the first order where it appears* — higher orders pick up
//! quadratic and higher dependence, but by then the unknown is already
//! fixed. So one unknown can be solved from three evaluations of the
//! residual, at trial values 0, 1, 2:
//!
//! * `alpha_j = c_j(0)`         (constant part at order j)
//! * `delta_j = c_j(1) - c_j(0)` (linear part at order j)
//! * `gamma_j = c_j(2) - 2 c_j(1) + c_j(0)` (second difference — must vanish
//!   exactly at the order used to solve, certifying affineness)
//!
//! Scanning orders from the lowest, a coefficient with `delta_j = 0` but
//! `alpha_j != 0` cannot be influenced — it is skipped, though it caps any
//! rate improvement; the first order with `delta_j != 0` yields
//! `u = -alpha_j / delta_j`.

use super::frac::Frac;
use crate::algebra::{rat_i, Rat};
use num::Zero;

/// Result of probing one unknown.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum ProbeOutcome {
    /// The residual with the unknown at 0 is identically zero — nothing to
    /// solve, the candidate is already exact.
    AlreadyZero,
    /// Solved: setting the unknown to `u` annihilates the series
    /// coefficient at `order`. `stuck_below` reports the lowest
    /// unknown-independent nonzero order, if one was skipped on the way.
    Solved {
        u: Rat,
        order: i64,
        stuck_below: Option<i64>,
    },
    /// No order up to the window depended on the unknown.
    NoDependence,
    /// The second difference failed to vanish at the solving order: the
    /// dependence is not affine there and this probe cannot be trusted.
    NonAffine { order: i64 },
}

/// Probes `residual(u)` for the unknown `u`, examining series coefficients
/// through exponent `window_cap`.
pub(crate) fn probe_affine(
    mut residual: impl FnMut(&Rat) -> Frac,
    window_cap: i64,
) -> ProbeOutcome {
    let e0 = residual(&Rat::zero());
    if e0.is_zero() {
        return ProbeOutcome::AlreadyZero;
    }
    let e1 = residual(&rat_i(1));
    let e2 = residual(&rat_i(2));
    let s0 = e0.series(window_cap);
    let s1 = e1.series(window_cap);
    let s2 = e2.series(window_cap);
    let delta = s1.sub(&s0);
    let gamma = s2.sub(&s1).sub(&s1.sub(&s0));
    let start = match (s0.lead_exp(), delta.lead_exp()) {
        (None, None) => return ProbeOutcome::NoDependence,
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => a.min(b),
    };
    let mut stuck: Option<i64> = None;
    for j in start..=window_cap {
        let alpha = s0.coeff(j).expect("within window");
        let d = delta.coeff(j).expect("within window");
        let g = gamma.coeff(j).expect("within window");
        if d.is_zero() {
            if !g.is_zero() {
                return ProbeOutcome::NonAffine { order: j };
            }
            if !alpha.is_zero() && stuck.is_none() {
                stuck = Some(j);
            }
            continue;
        }
        if !g.is_zero() {
            return ProbeOutcome::NonAffine { order: j };
        }
        return ProbeOutcome::Solved {
            u: -alpha / d,
            order: j,
            stuck_below: stuck,
        };
    }
    ProbeOutcome::NoDependence
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly};

    /// Residual model: (u - 3)/x^2 + arbitrary higher terms.
    fn affine_model(u: &Rat) -> Frac {
        // ((u-3) x + 7) / x^3  =  (u-3)/x^2 + 7/x^3
        let num = Poly::new(vec![rat(7, 1), u - rat(3, 1)]);
        Frac {
            num,
            den: Poly::from_ints(&[0, 0, 0, 1]),
        }
    }

    #[test]
    fn solves_affine_unknown_at_leading_order() {
        match probe_affine(affine_model, 6) {
            ProbeOutcome::Solved { u, order, stuck_below } => {
                assert_eq!(u, rat(3, 1));
                assert_eq!(order, 2);
                assert_eq!(stuck_below, None);
            }
            other => panic!("expected solve, got {other:?}"),
        }
    }

    #[test]
    fn skips_insensitive_orders_and_reports_them() {
        // 5/x^2 + (u-1)/x^3: order 2 is stuck, order 3 solvable.
        let model = |u: &Rat| {
            let num = Poly::new(vec![u - rat(1, 1), rat(5, 1)]);
            Frac {
                num,
                den: Poly::from_ints(&[0, 0, 0, 1]),
            }
        };
        match probe_affine(model, 6) {
            ProbeOutcome::Solved { u, order, stuck_below } => {
                assert_eq!(u, rat(1, 1));
                assert_eq!(order, 3);
                assert_eq!(stuck_below, Some(2));
            }
            other => panic!("expected solve, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_dependence_is_rejected() {
        // (u^2 - 4)/x^2: second difference at order 2 is 2 != 0.
        let model = |u: &Rat| {
            let num = Poly::constant(u * u - rat(4, 1));
            Frac {
                num,
                den: Poly::from_ints(&[0, 0, 1]),
            }
        };
        match probe_affine(model, 5) {
            ProbeOutcome::NonAffine { order } => assert_eq!(order, 2),
            other => panic!("expected non-affine, got {other:?}"),
        }
    }

    #[test]
    fn zero_residual_and_no_dependence() {
        assert_eq!(
            probe_affine(|_| Frac::from_poly(Poly::zero()), 4),
            ProbeOutcome::AlreadyZero
        );
        // Residual never involves u: 1/x^2 always.
        let model = |_u: &Rat| Frac {
            num: Poly::one(),
            den: Poly::from_ints(&[0, 0, 1]),
        };
        // Window covers the nonzero order, which is stuck; no dependence.
        assert_eq!(probe_affine(model, 5), ProbeOutcome::NoDependence);
    }
}
