//! Deterministic one-dimensional root finding, grid-plus-golden-section
//! optimization, lower convex hulls and adaptive Simpson quadrature.
//!
//! Grid sizes are fixed by the callers so every bound evaluates the same
//! sequence of points on every run.

use crate::error::{Error, Result};

/// Absolute tolerance for golden-section refinement.
pub const GOLDEN_TOL: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite signs.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::RootNotFound(format!(
            "no sign change on [{lo}, {hi}] (f={flo}, {fhi})"
        )));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All sign changes of `f` on a uniform grid of `points` samples over
/// `[lo, hi]`, each refined by bisection. Returned in increasing order.
pub fn roots_on_grid(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    points: usize,
    tol: f64,
) -> Vec<f64> {
    let xs = linspace(lo, hi, points);
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..xs.len() - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        if a == 0.0 {
            roots.push(xs[i]);
        } else if a.signum() != b.signum() && b != 0.0 && !a.is_nan() && !b.is_nan() {
            if let Ok(r) = bisect(&mut f, xs[i], xs[i + 1], tol) {
                roots.push(r);
            }
        }
    }
    if vals.last() == Some(&0.0) {
        roots.push(hi);
    }
    roots
}

pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// Golden-section minimisation of a unimodal `f` on `[a, b]`.
pub fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .unwrap()
}

/// Minimum of `f` over `[lo, hi]`: best point of a `points`-sample grid,
/// refined by golden section on the two neighbouring cells. Returns
/// `(argmin, min)`.
pub fn grid_golden_min(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    points: usize,
) -> (f64, f64) {
    let xs = linspace(lo, hi, points);
    let (best_i, best_v) =
        xs.iter()
            .map(|&x| f(x))
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) },
            );
    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(xs.len() - 1)];
    let (x, v) = golden_min(&mut f, a, b, GOLDEN_TOL);
    if v <= best_v {
        (x, v)
    } else {
        (xs[best_i], best_v)
    }
}

/// Maximum counterpart of [`grid_golden_min`].
pub fn grid_golden_max(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    points: usize,
) -> (f64, f64) {
    let (x, v) = grid_golden_min(|x| -f(x), lo, hi, points);
    (x, -v)
}

/// Lower convex hull of points sorted by strictly increasing `x`
/// (monotone chain). Returns the hull vertices in order.
pub fn lower_convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 - x1) * (p.1 - y1) - (y2 - y1) * (p.0 - x1);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Piecewise-linear interpolation through `knots` (sorted by `x`), constant
/// beyond the ends.
pub fn interp(knots: &[(f64, f64)], x: f64) -> f64 {
    match knots.len() {
        0 => f64::NAN,
        1 => knots[0].1,
        _ => {
            if x <= knots[0].0 {
                return knots[0].1;
            }
            let last = knots[knots.len() - 1];
            if x >= last.0 {
                return last.1;
            }
            let i = knots.partition_point(|k| k.0 <= x);
            let (x0, y0) = knots[i - 1];
            let (x1, y1) = knots[i];
            y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        }
    }
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}
