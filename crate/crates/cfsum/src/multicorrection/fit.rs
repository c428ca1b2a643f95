//! Fitting closed-form index rules to solved coefficient sequences.
//!
//! Given exact values `v_1, v_2, ...` (value `v_i` at index `n = i`), a
//! rule of shape `num(n)/den(n)` with fixed degree caps is recovered by
//! solving the homogeneous linear system `num(n_i) - v_i * den(n_i) = 0`
//! over the rationals on just enough leading points, then *validating the
//! rule exactly on every remaining point*. A fit with no held-out,
//! validated point is rejected outright.

use crate::algebra::{rat_i, Poly, Rat, RatFunc};
use num::Zero;

/// A validated index rule for a coefficient sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedRule {
    /// The rule as a rational function of the index `n`.
    pub rule: RatFunc,
    /// Number of leading values consumed by the linear solve.
    pub fitted: usize,
    /// Number of further values the rule reproduced exactly.
    pub validated: usize,
}

/// Fits `values[i] = rule(i+1)` with `deg num <= num_deg`,
/// `deg den <= den_deg`. Returns `None` unless the fitted rule reproduces
/// *every* remaining value exactly and at least one value was held out.
#[must_use]
pub fn guess_term_rule(values: &[Rat], num_deg: usize, den_deg: usize) -> Option<FittedRule> {
    let unknowns = num_deg + den_deg + 2;
    let fit_count = unknowns;
    if values.len() < fit_count + 1 {
        return None; // nothing would be left to validate
    }
    // Row for n: [1, n, .., n^p, -v, -v n, .., -v n^q]
    let rows: Vec<Vec<Rat>> = values[..fit_count]
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let n = rat_i(i as i64 + 1);
            let mut row = Vec::with_capacity(unknowns);
            let mut pw = Rat::from_integer(1.into());
            for _ in 0..=num_deg {
                row.push(pw.clone());
                pw *= &n;
            }
            let mut pw = -v.clone();
            for _ in 0..=den_deg {
                row.push(pw.clone());
                pw *= &n;
            }
            row
        })
        .collect();
    let sol = nullspace_vector(rows, unknowns)?;
    let num = Poly::new(sol[..=num_deg].to_vec());
    let den = Poly::new(sol[num_deg + 1..].to_vec());
    if den.is_zero() {
        return None;
    }
    let rule = RatFunc::new(num, den).ok()?;
    // Exact validation on every held-out value.
    let mut validated = 0;
    for (i, v) in values.iter().enumerate().skip(fit_count) {
        let n = rat_i(i as i64 + 1);
        match rule.eval(&n) {
            Ok(r) if &r == v => validated += 1,
            _ => return None,
        }
    }
    // The fitted points satisfy the homogeneous system, but only den != 0
    // there makes them genuine values of the rule — check them too.
    for (i, v) in values[..fit_count].iter().enumerate() {
        let n = rat_i(i as i64 + 1);
        match rule.eval(&n) {
            Ok(r) if &r == v => {}
            _ => return None,
        }
    }
    Some(FittedRule {
        rule,
        fitted: fit_count,
        validated,
    })
}

/// Tries rule shapes in order of increasing data appetite and returns the
/// first that validates. Used for automatic rule discovery after a solve.
#[must_use]
pub fn autofit_rule(values: &[Rat]) -> Option<FittedRule> {
    for total in 0..=10usize {
        for den_deg in 0..=total.min(4) {
            let num_deg = total - den_deg;
            if num_deg + den_deg + 2 + 1 > values.len() {
                continue;
            }
            if let Some(fit) = guess_term_rule(values, num_deg, den_deg) {
                return Some(fit);
            }
        }
    }
    None
}

/// One nonzero vector from the nullspace of the row system, by exact
/// Gauss-Jordan elimination; `None` if the system only admits zero (more
/// independent rows than unknowns).
fn nullspace_vector(mut rows: Vec<Vec<Rat>>, unknowns: usize) -> Option<Vec<Rat>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut rank = 0usize;
    for col in 0..unknowns {
        // Find a pivot row below `rank`.
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = {
            let p = &rows[rank][col];
            Rat::from_integer(1.into()) / p.clone()
        };
        for cell in rows[rank][col..unknowns].iter_mut() {
            *cell *= &inv;
        }
        let pivot_row = rows[rank][col..unknowns].to_vec();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (cell, p) in row[col..unknowns].iter_mut().zip(&pivot_row) {
                    *cell -= p * &f;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // Free column: first without a pivot.
    let free = (0..unknowns).find(|&c| pivot_of_col[c].is_none())?;
    let mut sol = vec![Rat::zero(); unknowns];
    sol[free] = Rat::from_integer(1.into());
    for col in 0..unknowns {
        if let Some(pr) = pivot_of_col[col] {
            // Row: x_col + sum_{c>col} a_c x_c = 0.
            sol[col] = -rows[pr][free].clone();
        }
    }
    Some(sol)
}
