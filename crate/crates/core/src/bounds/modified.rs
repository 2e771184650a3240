//! Constrained distance of the inner code in the modified construction, where
//! only the symbols of an information set carry the weight constraint, and the
//! resulting improved bound.

use rayon::prelude::*;
use serde::Serialize;

use super::entropy::{entropy, entropy_inv_unchecked, gv_unchecked};
use super::optim::{
    golden_min, grid_golden_min, interp, linspace, lower_convex_hull, roots_on_grid, GOLDEN_TOL,
};
use super::BoundPoint;
use crate::error::{Error, Result};

pub const ENVELOPE_GRID: usize = 4096;
pub const RIA_BETA_GRID: usize = 2048;
pub const RIA_R0_GRID: usize = 512;
const R0_CEILING: f64 = 1.0 - 1e-6;

/// `a(beta) = 1 / (2^{h(beta)/beta} + 1)`, the optimal relative weight of the
/// unconstrained check symbols.
pub fn check_weight(beta: f64) -> f64 {
    1.0 / (2f64.powf(entropy(beta) / beta) + 1.0)
}

/// Unconstrained optimum `(1 - R0) [a + (beta/h(beta)) (1 - h(a))]`.
pub fn omega_star(r0: f64, beta: f64) -> f64 {
    let a = check_weight(beta);
    (1.0 - r0) * (a + beta / entropy(beta) * (1.0 - entropy(a)))
}

/// Boundary optimum with the information symbols saturated at `beta`.
pub fn omega_star_star(r0: f64, beta: f64) -> f64 {
    r0 * beta + (1.0 - r0) * entropy_inv_unchecked(1.0 - r0 / (1.0 - r0) * entropy(beta))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModOmegaCurve {
    pub r0: f64,
    pub gv: f64,
    /// Junction between the two pieces (root of `omega*(beta) = dGV(R0)`).
    pub beta1: f64,
    /// Vertices of the lower convex envelope over `[dGV(R0), 1/2]`.
    pub hull: Vec<(f64, f64)>,
}

impl ModOmegaCurve {
    /// Piecewise `omega(beta)`.
    pub fn omega(&self, beta: f64) -> f64 {
        if beta <= self.beta1 {
            omega_star_star(self.r0, beta)
        } else {
            omega_star(self.r0, beta)
        }
    }

    /// `(omega_1, omega_2)`: relative weights of the information part and of
    /// the check part at the optimum.
    pub fn witnesses(&self, beta: f64) -> (f64, f64) {
        if beta <= self.beta1 {
            let w2 = entropy_inv_unchecked(1.0 - self.r0 / (1.0 - self.r0) * entropy(beta));
            (beta, w2)
        } else {
            let a = check_weight(beta);
            (
                (omega_star(self.r0, beta) - (1.0 - self.r0) * a) / self.r0,
                a,
            )
        }
    }

    /// Convexified constrained distance `delta_0(beta, R0)`.
    pub fn delta0(&self, beta: f64) -> f64 {
        interp(&self.hull, beta)
    }
}

/// Builds `omega(beta)` for inner rate `r0` and its lower convex envelope.
pub fn omega_modified(r0: f64) -> Result<ModOmegaCurve> {
    if !(r0 > 0.0 && r0 < 1.0) {
        return Err(Error::Domain(format!("r0={r0} must lie in (0,1)")));
    }
    let gv = gv_unchecked(r0);
    if !(gv < 0.5) {
        return Err(Error::Domain(format!("r0={r0} leaves an empty beta range")));
    }
    let roots = roots_on_grid(|b| omega_star(r0, b) - gv, gv, 0.5, ENVELOPE_GRID, 1e-13);
    let beta1 = match roots.last() {
        Some(&b) => b,
        // No crossing: one piece is active on the whole range.
        None if omega_star(r0, 0.5) >= gv => gv,
        None => 0.5,
    };
    let mut curve = ModOmegaCurve {
        r0,
        gv,
        beta1,
        hull: Vec::new(),
    };
    let samples: Vec<(f64, f64)> = linspace(gv, 0.5, ENVELOPE_GRID)
        .into_iter()
        .map(|b| (b, curve.omega(b)))
        .collect();
    curve.hull = lower_convex_hull(&samples);
    Ok(curve)
}

fn ria_inner(rate: f64, r0: f64) -> (f64, f64) {
    let Ok(curve) = omega_modified(r0) else {
        return (f64::NAN, 0.0);
    };
    let factor = 1.0 - rate / r0;
    let (beta, v) = grid_golden_min(
        |b| curve.delta0(b) * factor / entropy(b),
        curve.gv,
        0.5,
        RIA_BETA_GRID,
    );
    (beta, v)
}

/// Improved distance of the modified construction:
/// `max_{R0} min_beta delta_0(beta, R0) (1 - R/R0) / h(beta)`.
pub fn bound_ria(rate: f64) -> Result<BoundPoint> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain(format!("rate {rate} must lie in (0,1)")));
    }
    let hi = R0_CEILING.max(rate);
    let grid = linspace(rate, hi, RIA_R0_GRID);
    let values: Vec<f64> = grid.par_iter().map(|&r0| ria_inner(rate, r0).1).collect();
    let best = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        });
    let a = grid[best.0.saturating_sub(1)];
    let b = grid[(best.0 + 1).min(grid.len() - 1)];
    let (r0, neg) = golden_min(|r0| -ria_inner(rate, r0).1, a, b, GOLDEN_TOL);
    let (r0_star, delta) = if -neg >= best.1 {
        (r0, -neg)
    } else {
        (grid[best.0], best.1)
    };
    let (beta_star, _) = ria_inner(rate, r0_star);
    Ok(BoundPoint {
        rate,
        delta,
        beta_star: Some(beta_star),
        r0_star: Some(r0_star),
    })
}
