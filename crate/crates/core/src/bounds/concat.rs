//! Classical concatenation tradeoffs: the product (Zyablov) bound, the
//! multiple-edge bound, and the order-`m` multilevel (Blokh-Zyablov) rates.

use serde::Serialize;

use super::entropy::{entropy, entropy_inv_unchecked, gv_unchecked};
use super::optim::{adaptive_simpson, grid_golden_max};
use super::BoundPoint;
use crate::error::{Error, Result};

pub const ZYABLOV_GRID: usize = 2048;
pub const BZ_GRID: usize = 2048;
pub const BZ_QUAD_TOL: f64 = 1e-8;

fn check_rate(rate: f64) -> Result<()> {
    if rate > 0.0 && rate < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("rate {rate} must lie in (0,1)")))
    }
}

/// `max_{R <= x <= 1} dGV(x) (1 - R/x)`, witness `x*` in `r0_star`.
pub fn zyablov(rate: f64) -> Result<BoundPoint> {
    check_rate(rate)?;
    let (x, delta) = grid_golden_max(
        |x| gv_unchecked(x) * (1.0 - rate / x),
        rate,
        1.0,
        ZYABLOV_GRID,
    );
    Ok(BoundPoint {
        rate,
        delta,
        beta_star: None,
        r0_star: Some(x),
    })
}

/// `(1/2)(1 - R) h^{-1}((1 - R)/2)`.
pub fn mult_bound(rate: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::Domain(format!("rate {rate} must lie in [0,1]")));
    }
    Ok(0.5 * (1.0 - rate) * entropy_inv_unchecked(0.5 * (1.0 - rate)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BZPoint {
    pub delta: f64,
    /// Concatenation order; `None` is the infinite-order limit.
    pub order: Option<usize>,
    pub rate: f64,
    pub r0_star: Option<f64>,
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("delta {delta} must lie in (0,1/2)")))
    }
}

/// Objective maximised over the outer rate for order-`m` concatenation.
fn bz_objective(delta: f64, m: usize, r0: f64) -> f64 {
    let mf = m as f64;
    let sum: f64 = (1..=m)
        .map(|i| 1.0 / gv_unchecked(r0 * (mf - i as f64 + 1.0) / mf))
        .sum();
    r0 - delta * r0 / mf * sum
}

/// Rate of order-`m` multilevel concatenations at relative distance `delta`.
pub fn blokh_zyablov(delta: f64, m: usize) -> Result<BZPoint> {
    check_delta(delta)?;
    if m == 0 {
        return Err(Error::Domain("order m must be at least 1".into()));
    }
    let top = 1.0 - entropy(delta);
    let (r0, rate) = grid_golden_max(|r0| bz_objective(delta, m, r0), 0.0, top, BZ_GRID);
    Ok(BZPoint {
        delta,
        order: Some(m),
        rate: rate.max(0.0),
        r0_star: Some(r0),
    })
}

/// Infinite-order limit `1 - h(d) - d * int_0^{1-h(d)} dx / dGV(x)`.
///
/// With `x = 1 - h(u)` and `u = e^s` the integral becomes
/// `int_{ln d}^{ln 1/2} log2((1 - e^s) / e^s) ds`, whose integrand is smooth;
/// the original form has a spike of height `1/d` at the upper limit.
pub fn blokh_zyablov_inf(delta: f64) -> Result<BZPoint> {
    check_delta(delta)?;
    let top = 1.0 - entropy(delta);
    let integrand = |s: f64| {
        let u = s.exp();
        ((1.0 - u) / u).log2()
    };
    let integral = adaptive_simpson(&integrand, delta.ln(), 0.5f64.ln(), BZ_QUAD_TOL);
    Ok(BZPoint {
        delta,
        order: None,
        rate: (top - delta * integral).max(0.0),
        r0_star: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::entropy::gv_delta;

    #[test]
    fn zyablov_table_values() {
        for (r, want, tol) in [
            (0.1, 0.129, 1.5e-3),
            (0.5, 0.015, 1.5e-3),
            (0.9, 0.00030, 1.5e-3),
        ] {
            let p = zyablov(r).unwrap();
            assert!((p.delta - want).abs() < tol, "R={r}: {}", p.delta);
        }
        let p = zyablov(0.9).unwrap();
        assert!((p.delta - 0.00030).abs() < 1e-5);
    }

    #[test]
    fn zyablov_beats_its_grid() {
        let r = 0.37;
        let p = zyablov(r).unwrap();
        for i in 0..=10_000 {
            let x = r + (1.0 - r) * i as f64 / 10_000.0;
            assert!(gv_delta(x).unwrap() * (1.0 - r / x) <= p.delta + 1e-12);
        }
    }

    #[test]
    fn mult_bound_limits() {
        assert!(mult_bound(1.0).unwrap().abs() < 1e-15);
        let at0 = mult_bound(0.0).unwrap();
        assert!((at0 - 0.5 * crate::bounds::entropy::entropy_inv(0.5).unwrap()).abs() < 1e-15);
        assert!((at0 - 0.0550).abs() < 1e-4);
    }

    #[test]
    fn bz_orders_increase() {
        for d in [0.05, 0.1, 0.2] {
            let mut prev = 0.0;
            for m in 1..=10 {
                let r = blokh_zyablov(d, m).unwrap().rate;
                assert!(r + 1e-12 >= prev, "delta={d} m={m}");
                prev = r;
            }
            assert!(blokh_zyablov_inf(d).unwrap().rate >= prev);
        }
    }

    #[test]
    fn infinite_order_matches_the_direct_integral() {
        for d in [0.1, 0.2, 0.3] {
            let top = 1.0 - entropy(d);
            let direct =
                top - d * adaptive_simpson(&|x: f64| 1.0 / gv_unchecked(x), 0.0, top, 1e-10);
            let r = blokh_zyablov_inf(d).unwrap().rate;
            assert!((r - direct).abs() < 1e-6, "delta={d}: {r} vs {direct}");
        }
        assert!(blokh_zyablov_inf(1e-9).unwrap().rate > 0.999);
    }

    #[test]
    fn bz_first_order_is_zyablov() {
        for d in [0.02, 0.05, 0.1, 0.2, 0.3] {
            let r = blokh_zyablov(d, 1).unwrap().rate;
            let z = zyablov(r).unwrap().delta;
            assert!((z - d).abs() < 1e-6, "delta={d}: zyablov({r})={z}");
        }
    }
}
