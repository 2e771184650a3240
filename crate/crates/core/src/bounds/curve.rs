//! Sampling of rate/distance curves and the comparison table, with their text
//! encodings.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::entropy::gv_delta;
use super::optim::bisect;
use super::{
    blokh_zyablov, blokh_zyablov_inf, bound_bb, bound_ria, ensemble_distance, mult_bound,
    serial_distance, zyablov, BoundPoint,
};
use crate::error::{Error, Result};
use crate::report::{fmt_opt, fmt_sig9, round_sig9};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Gv,
    Zyablov,
    Mult,
    Bb,
    Ria,
    Ensemble,
    Serial,
    Bz,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::Gv,
        BoundKind::Zyablov,
        BoundKind::Mult,
        BoundKind::Bb,
        BoundKind::Ria,
        BoundKind::Ensemble,
        BoundKind::Serial,
        BoundKind::Bz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Gv => "gv",
            BoundKind::Zyablov => "zyablov",
            BoundKind::Mult => "mult",
            BoundKind::Bb => "bb",
            BoundKind::Ria => "ria",
            BoundKind::Ensemble => "ensemble",
            BoundKind::Serial => "serial",
            BoundKind::Bz => "bz",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bound `{s}`")))
    }
}

/// Extra parameters of the curves that take them.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CurveOptions {
    /// Multilevel order for `bz`; `None` selects the infinite-order limit.
    pub order: Option<usize>,
    /// Inner rate for `serial`; `None` uses `(1 + R)/2`.
    pub r0: Option<f64>,
}

/// Relative distance reached by order-`m` multilevel concatenation at `rate`,
/// found by inverting the (decreasing) rate function in the distance.
fn bz_distance(rate: f64, order: Option<usize>) -> Result<BoundPoint> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain(format!("rate {rate} must lie in (0,1)")));
    }
    let rate_at = |d: f64| match order {
        Some(m) => blokh_zyablov(d, m).map(|p| p.rate).unwrap_or(0.0),
        None => blokh_zyablov_inf(d).map(|p| p.rate).unwrap_or(0.0),
    };
    let lo = 1e-9;
    let hi = 0.5 - 1e-9;
    let delta = bisect(|d| rate_at(d) - rate, lo, hi, 1e-12)?;
    let r0_star = match order {
        Some(m) => blokh_zyablov(delta, m)?.r0_star,
        None => None,
    };
    Ok(BoundPoint {
        rate,
        delta,
        beta_star: None,
        r0_star,
    })
}

/// One point of the chosen curve.
pub fn curve_point(kind: BoundKind, rate: f64, opts: CurveOptions) -> Result<BoundPoint> {
    let plain = |delta| BoundPoint {
        rate,
        delta,
        beta_star: None,
        r0_star: None,
    };
    match kind {
        BoundKind::Gv => gv_delta(rate).map(plain),
        BoundKind::Zyablov => zyablov(rate),
        BoundKind::Mult => mult_bound(rate).map(plain),
        BoundKind::Bb => bound_bb(rate),
        BoundKind::Ria => bound_ria(rate),
        BoundKind::Ensemble => ensemble_distance(rate),
        BoundKind::Serial => {
            let r0 = opts.r0.unwrap_or(0.5 * (1.0 + rate));
            serial_distance(rate, r0).map(|delta| BoundPoint {
                r0_star: Some(r0),
                ..plain(delta)
            })
        }
        BoundKind::Bz => bz_distance(rate, opts.order),
    }
}

/// Rates `r_min, r_min + step, ...` up to `r_max` inclusive, each rounded to
/// 9 significant digits so the grid does not drift.
pub fn rate_grid(r_min: f64, r_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(r_min <= r_max) || !(r_min >= 0.0) || !(r_max <= 1.0) {
        return Err(Error::BadParams(format!(
            "need 0 <= r-min <= r-max <= 1 and step > 0, got {r_min}, {r_max}, {step}"
        )));
    }
    let count = ((r_max - r_min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| round_sig9(r_min + i as f64 * step))
        .collect())
}

/// Samples a curve over the rate grid; points are returned in grid order.
pub fn sample_curve(kind: BoundKind, rates: &[f64], opts: CurveOptions) -> Result<Vec<BoundPoint>> {
    rates
        .par_iter()
        .map(|&r| curve_point(kind, r, opts))
        .collect()
}

pub fn curve_csv(points: &[BoundPoint]) -> String {
    let mut out = String::from("rate,delta,beta_star,r0_star\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig9(p.rate),
            fmt_sig9(p.delta),
            fmt_opt(p.beta_star),
            fmt_opt(p.r0_star)
        ));
    }
    out
}

pub fn spectrum_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("omega,exponent\n");
    for (w, f) in points {
        out.push_str(&format!("{},{}\n", fmt_sig9(*w), fmt_sig9(*f)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub rate: f64,
    pub zyablov: f64,
    pub bb: f64,
    pub ria: f64,
}

/// Product bound and the two improved bounds at `R = 0.1, ..., 0.9`.
pub fn bounds_table() -> Result<Vec<TableRow>> {
    (1..=9)
        .map(|i| {
            let rate = i as f64 / 10.0;
            Ok(TableRow {
                rate,
                zyablov: zyablov(rate)?.delta,
                bb: bound_bb(rate)?.delta,
                ria: bound_ria(rate)?.delta,
            })
        })
        .collect()
}

pub fn table_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from("rate\tzyablov\tbb\tria\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            fmt_sig9(r.rate),
            fmt_sig9(r.zyablov),
            fmt_sig9(r.bb),
            fmt_sig9(r.ria)
        ));
    }
    out
}
