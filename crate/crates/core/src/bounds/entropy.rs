//! Binary entropy and its inverse on the lower branch.

use crate::error::{Error, Result};

/// Interior clamp applied before evaluating entropy near the ends of `[0,1]`.
pub const DOMAIN_EPS: f64 = 1e-9;

/// `h(x) = -x log2 x - (1-x) log2 (1-x)`, with `h(0) = h(1) = 0`.
///
/// Inputs outside `[0,1]` produce NaN; use [`entropy_checked`] for a
/// validated version.
pub fn entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        if x == 0.0 || x == 1.0 {
            return 0.0;
        }
        return f64::NAN;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

pub fn entropy_checked(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("entropy argument {x} outside [0,1]")));
    }
    Ok(entropy(x))
}

/// `h'(x) = log2((1-x)/x)`.
pub fn entropy_derivative(x: f64) -> f64 {
    ((1.0 - x) / x).log2()
}

/// Inverse of `h` on `[0, 1/2]`: returns `x <= 1/2` with `h(x) = y`.
pub fn entropy_inv(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) || y.is_nan() {
        return Err(Error::Domain(format!(
            "entropy_inv argument {y} outside [0,1]"
        )));
    }
    Ok(entropy_inv_unchecked(y))
}

/// [`entropy_inv`] without the domain check; `y` is clamped into `[0,1]`.
pub fn entropy_inv_unchecked(y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 0.5;
    }
    // Newton on a bracket [lo, hi]; fall back to bisection whenever the
    // Newton step leaves the bracket.
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    let mut x = if y < 0.5 {
        y / (2.0 * (1.0 / y).log2().max(1.0))
    } else {
        0.5 * (1.0 - (1.0 - y).sqrt())
    };
    x = x.clamp(f64::MIN_POSITIVE, 0.5);
    for _ in 0..200 {
        let fx = entropy(x) - y;
        if fx == 0.0 {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = entropy_derivative(x);
        let mut next = x - fx / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-17_f64.max(x * 1e-16) {
            return next;
        }
        x = next;
    }
    x
}

/// Gilbert-Varshamov relative distance `h^{-1}(1 - R)`.
pub fn gv_delta(rate: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) || rate.is_nan() {
        return Err(Error::Domain(format!("rate {rate} outside [0,1]")));
    }
    Ok(entropy_inv_unchecked(1.0 - rate))
}

pub(crate) fn gv_unchecked(rate: f64) -> f64 {
    entropy_inv_unchecked(1.0 - rate)
}

/// Entropy clipped to 1 above one half.
pub fn entropy_clipped(x: f64) -> f64 {
    if x >= 0.5 {
        1.0
    } else {
        entropy(x)
    }
}
