//! Constrained distances for the basic multiple-edge construction and the
//! improved bound that follows from them.
//!
//! `wpe(beta) = beta / h(beta)` is the binary weight per unit of excess
//! redundancy that a codeword whose nonzero symbols have relative weight
//! `beta` must carry. It is concave below roughly 0.197 and convex above, so
//! for larger local rates its concave head is replaced by the tangent line
//! drawn from `(dGV(R0), wpe(dGV(R0)))`.

use serde::Serialize;

use super::entropy::{entropy, entropy_clipped, entropy_derivative, gv_unchecked};
use super::optim::{bisect, grid_golden_min, roots_on_grid};
use super::BoundPoint;
use crate::error::{Error, Result};

/// Local rate up to which `wpe` is already convex on `[dGV(R0), 1)`.
pub const WPE_CONVEX_RATE: f64 = 0.284;
pub const BB_GRID: usize = 2048;
const CHORD_ROOT_GRID: usize = 4096;
const ROOT_TOL: f64 = 1e-12;

fn check_open(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name}={v} must lie in (0,1)")))
    }
}

pub fn wpe(beta: f64) -> f64 {
    beta / entropy(beta)
}

pub fn wpe_checked(beta: f64) -> Result<f64> {
    check_open("beta", beta)?;
    Ok(wpe(beta))
}

/// Sign-carrying numerator of `wpe''`: `-beta h'' h - 2 h' (h - beta h')`.
fn wpe_curvature_numerator(beta: f64) -> f64 {
    let h = entropy(beta);
    let d1 = entropy_derivative(beta);
    let d2 = -1.0 / (std::f64::consts::LN_2 * beta * (1.0 - beta));
    -beta * d2 * h - 2.0 * d1 * (h - beta * d1)
}

/// Inflection point of `wpe` (concave below, convex above).
pub fn wpe_inflection() -> Result<f64> {
    bisect(wpe_curvature_numerator, 0.05, 0.45, 1e-14)
}

/// `1 - h(inflection)`: local rates at or below this keep `dGV(R0)` in the
/// convex region of `wpe`.
pub fn wpe_convex_rate() -> Result<f64> {
    Ok(1.0 - entropy(wpe_inflection()?))
}

/// Piecewise definition of `g(beta)`, with `delta_0(beta) = (1 - R0) g(beta)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GBetaCurve {
    pub r0: f64,
    pub gv: f64,
    /// Tangency point of the chord; `None` when `wpe` needs no chord.
    pub beta1: Option<f64>,
    pub a: f64,
    pub b: f64,
}

impl GBetaCurve {
    pub fn eval(&self, beta: f64) -> f64 {
        if beta <= self.gv {
            return self.gv / (1.0 - self.r0);
        }
        match self.beta1 {
            Some(b1) if beta <= b1 => self.chord(beta),
            _ => wpe(beta),
        }
    }

    /// Chord expression `(a beta + b) / (beta1 - dGV)`; only meaningful when
    /// `beta1` is present.
    pub fn chord(&self, beta: f64) -> f64 {
        let b1 = self.beta1.unwrap_or(f64::NAN);
        (self.a * beta + self.b) / (b1 - self.gv)
    }

    /// Absolute continuity gaps at `dGV(R0)` and `beta1`.
    pub fn continuity_residuals(&self) -> (f64, f64) {
        match self.beta1 {
            Some(b1) => (
                (self.chord(self.gv) - self.gv / (1.0 - self.r0)).abs(),
                (self.chord(b1) - wpe(b1)).abs(),
            ),
            None => ((wpe(self.gv) - self.gv / (1.0 - self.r0)).abs(), 0.0),
        }
    }
}

/// Builds `g` for local rate `r0`.
pub fn g_beta(r0: f64) -> Result<GBetaCurve> {
    check_open("r0", r0)?;
    let gv = gv_unchecked(r0);
    let mut curve = GBetaCurve {
        r0,
        gv,
        beta1: None,
        a: 0.0,
        b: 0.0,
    };
    if r0 <= WPE_CONVEX_RATE {
        return Ok(curve);
    }
    let head = gv / (1.0 - r0);
    let tangency = |beta: f64| {
        let h = entropy(beta);
        h * (beta - h * head) + (beta - gv) * (1.0 - beta).log2()
    };
    // beta = dGV is always a (trivial) root; look for the largest one beyond it.
    let lo = gv + 1e-7;
    let roots = roots_on_grid(tangency, lo, 1.0 - 1e-9, CHORD_ROOT_GRID, ROOT_TOL);
    let Some(&b1) = roots.last() else {
        return Err(Error::RootNotFound(format!(
            "no chord tangency for r0={r0}"
        )));
    };
    let (wg, w1) = (wpe(gv), wpe(b1));
    curve.beta1 = Some(b1);
    curve.a = w1 - wg;
    curve.b = wg * b1 - w1 * gv;
    Ok(curve)
}

/// Lower bound `(1 - R1) / h_hat(gamma)` on the left support fraction.
pub fn sigma_lower(gamma: f64, r1: f64) -> Result<f64> {
    check_open("gamma", gamma)?;
    check_open("r1", r1)?;
    Ok((1.0 - r1) / entropy_clipped(gamma))
}

/// `(1 - R1) / h(beta)`; values above 1 mean no codeword with that average
/// symbol weight exists.
pub fn constrained_q_distance(r1: f64, beta: f64) -> Result<f64> {
    check_open("beta", beta)?;
    if !(0.0..=1.0).contains(&r1) {
        return Err(Error::Domain(format!("r1={r1} must lie in [0,1]")));
    }
    Ok((1.0 - r1) / entropy(beta))
}

/// Improved distance of the basic multiple-edge construction with both local
/// rates at `(1 + R)/2`.
pub fn bound_bb(rate: f64) -> Result<BoundPoint> {
    check_open("rate", rate)?;
    let r0 = 0.5 * (1.0 + rate);
    let g = g_beta(r0)?;
    let (beta, ratio) = grid_golden_min(|b| g.eval(b) / entropy(b), g.gv, 0.5, BB_GRID);
    Ok(BoundPoint {
        rate,
        delta: 0.25 * (1.0 - rate).powi(2) * ratio,
        beta_star: Some(beta),
        r0_star: Some(r0),
    })
}
