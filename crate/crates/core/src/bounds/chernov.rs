//! Ensemble spectrum of bipartite-graph codes with a fixed local code,
//! obtained from a Chernoff bound on the local weight enumerator.

use serde::Serialize;

use super::entropy::entropy;
use super::optim::bisect;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChernovPoint {
    pub omega: f64,
    pub exponent: f64,
    /// Saddle point `s*` solving `(ln a(e^s))' = delta * omega`.
    pub saddle: f64,
}

/// `ln a(e^s)` and its derivative in `s`, computed with a shifted
/// log-sum-exp.
fn log_mgf(a: &[f64], s: f64) -> (f64, f64) {
    let m = a
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0.0)
        .map(|(i, &c)| c.ln() + s * i as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let (mut z, mut dz) = (0.0, 0.0);
    for (i, &c) in a.iter().enumerate() {
        if c > 0.0 {
            let e = (c.ln() + s * i as f64 - m).exp();
            z += e;
            dz += i as f64 * e;
        }
    }
    (m + z.ln(), dz / z)
}

fn validate(a: &[u64], delta: usize) -> Result<usize> {
    if a.len() != delta + 1 {
        return Err(Error::LengthMismatch {
            expected: delta + 1,
            found: a.len(),
        });
    }
    if a[0] != 1 {
        return Err(Error::BadParams(
            "weight enumerator must have A_0 = 1".into(),
        ));
    }
    a.iter()
        .rposition(|&c| c > 0)
        .filter(|&w| w > 0)
        .ok_or_else(|| Error::BadParams("code has no nonzero codewords".into()))
}

/// Spectrum exponent at relative weight `omega` for the ensemble with local
/// code enumerator `a` (coefficients `A_0..A_delta`):
/// `(2/ln 2)(ln a(e^s)/delta - s omega) - h(omega)` at the saddle point.
pub fn chernov_exponent(a: &[u64], delta: usize, omega: f64) -> Result<ChernovPoint> {
    let w_max = validate(a, delta)?;
    let upper = w_max as f64 / delta as f64;
    if !(omega > 0.0 && omega < upper) {
        return Err(Error::Domain(format!(
            "omega={omega} outside the solvable range (0, {upper})"
        )));
    }
    let coeffs: Vec<f64> = a.iter().map(|&c| c as f64).collect();
    let target = delta as f64 * omega;
    let slope = |s: f64| log_mgf(&coeffs, s).1 - target;
    let (mut lo, mut hi) = (-1.0, 1.0);
    while slope(lo) > 0.0 {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::Domain(format!("omega={omega} too small to resolve")));
        }
    }
    while slope(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Domain(format!(
                "omega={omega} too close to the upper limit"
            )));
        }
    }
    let s = bisect(slope, lo, hi, 1e-14)?;
    let (lnz, _) = log_mgf(&coeffs, s);
    let exponent = 2.0 / std::f64::consts::LN_2 * (lnz / delta as f64 - s * omega) - entropy(omega);
    Ok(ChernovPoint {
        omega,
        exponent,
        saddle: s,
    })
}

/// Smallest relative weight at which the exponent turns nonnegative.
pub fn chernov_zero_crossing(a: &[u64], delta: usize) -> Result<f64> {
    let w_max = validate(a, delta)?;
    let upper = w_max as f64 / delta as f64;
    let f = |w: f64| {
        chernov_exponent(a, delta, w)
            .map(|p| p.exponent)
            .unwrap_or(f64::NAN)
    };
    const POINTS: usize = 4000;
    let lo = upper * 1e-4;
    let hi = upper * (1.0 - 1e-4);
    let step = (hi - lo) / POINTS as f64;
    let mut prev = (lo, f(lo));
    for i in 1..=POINTS {
        let x = lo + step * i as f64;
        let v = f(x);
        if prev.1 < 0.0 && v >= 0.0 {
            return bisect(f, prev.0, x, 1e-13);
        }
        prev = (x, v);
    }
    Err(Error::RootNotFound("exponent never crosses zero".into()))
}
