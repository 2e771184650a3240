//! Monte-Carlo estimates over the random bipartite-graph ensemble: mean weight
//! distributions and minimum-distance histograms, with the asymptotic
//! exponents as overlays.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{chernov_exponent, spectrum_exponent};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::localcode::{self, random_parity_code, LocalCode};
use crate::tanner::ExpanderCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleVariant {
    /// A fresh uniform parity-check matrix per trial, used on both sides.
    RandomLocal,
    /// One fixed local code on both sides.
    FixedLocal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub delta: usize,
    pub variant: EnsembleVariant,
    /// Design rate of the random local code (random-local only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    /// Catalog name of the local code (fixed-local only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub trials: usize,
    pub seed: u64,
}

enum LocalSource {
    Random { rows: usize },
    Fixed(LocalCode),
}

impl EnsembleConfig {
    /// Code length `n * delta`.
    pub fn length(&self) -> usize {
        self.n * self.delta
    }

    fn source(&self) -> Result<LocalSource> {
        if self.n == 0 || self.delta == 0 || self.trials == 0 {
            return Err(Error::BadParams("need n, delta, trials >= 1".into()));
        }
        match self.variant {
            EnsembleVariant::RandomLocal => {
                let r0 = self
                    .r0
                    .ok_or_else(|| Error::BadParams("random-local needs a local rate".into()))?;
                let rows_f = (1.0 - r0) * self.delta as f64;
                let rows = rows_f.round() as usize;
                if !(0.0..=1.0).contains(&r0) || (rows_f - rows as f64).abs() > 1e-9 {
                    return Err(Error::BadParams(format!(
                        "(1 - r0) * delta must be an integer in [0, delta], got {rows_f}"
                    )));
                }
                Ok(LocalSource::Random { rows })
            }
            EnsembleVariant::FixedLocal => {
                let name = self
                    .code
                    .as_deref()
                    .ok_or_else(|| Error::BadParams("fixed-local needs a code".into()))?;
                let code = localcode::catalog_lookup(name)?;
                if code.t() != 1 || code.symbols() != self.delta {
                    return Err(Error::LengthMismatch {
                        expected: self.delta,
                        found: code.len(),
                    });
                }
                Ok(LocalSource::Fixed(code))
            }
        }
    }

    /// Rate of the local code used by the overlay.
    pub fn local_rate(&self) -> Result<f64> {
        Ok(match self.source()? {
            LocalSource::Random { rows } => 1.0 - rows as f64 / self.delta as f64,
            LocalSource::Fixed(c) => c.rate(),
        })
    }
}

/// Random stream of one trial: stream `trial` of the configured seed.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn sample_with(cfg: &EnsembleConfig, source: &LocalSource, trial: usize) -> Result<ExpanderCode> {
    let mut rng = trial_rng(cfg.seed, trial);
    let local = match source {
        LocalSource::Random { rows } => random_parity_code(cfg.delta, 1, *rows, &mut rng)?,
        LocalSource::Fixed(c) => c.clone(),
    };
    let g = BipartiteGraph::random_regular_with(cfg.n, cfg.delta, false, &mut rng)?;
    ExpanderCode::build_basic(&g, &local, &local)
}

/// The code of trial `trial`: the local code (drawn first for random-local)
/// and a fresh random graph, both from the trial's stream.
pub fn sample_code(cfg: &EnsembleConfig, trial: usize) -> Result<ExpanderCode> {
    sample_with(cfg, &cfg.source()?, trial)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceSummary {
    pub min: usize,
    pub median: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub config: EnsembleConfig,
    /// Code length `n * delta`.
    pub length: usize,
    pub local_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub config: ConfigEcho,
    /// Mean number of codewords of each weight `0..=N`.
    pub a_bar: Vec<f64>,
    /// Standard error of each mean.
    pub a_bar_stderr: Vec<f64>,
    /// Mean of `2^k` over the trials.
    pub mean_size: f64,
    /// Trials by minimum distance; trials with `k = 0` are counted apart.
    pub min_distance_hist: BTreeMap<usize, usize>,
    pub zero_dimension_trials: usize,
    pub min_distance_summary: Option<DistanceSummary>,
    /// `"sp1sp2"` (ensemble exponent) or `"chernov"` (fixed local code).
    pub overlay: String,
    /// `(w/N, log2(a_bar_w)/N)` for `w >= 1` with `a_bar_w > 0`.
    pub normalized_points: Vec<(f64, f64)>,
    /// Overlay exponent at each `w/N` where it is defined.
    pub overlay_points: Vec<(f64, f64)>,
}

struct TrialResult {
    enumerator: Vec<u64>,
    min_distance: Option<usize>,
}

fn run_trial(cfg: &EnsembleConfig, source: &LocalSource, trial: usize) -> Result<TrialResult> {
    let code = sample_with(cfg, source, trial)?;
    let enumerator = crate::gf2::weight_enumerator(code.len(), code.basis())?;
    let min_distance = enumerator
        .iter()
        .skip(1)
        .position(|&a| a > 0)
        .map(|w| w + 1);
    Ok(TrialResult {
        enumerator,
        min_distance,
    })
}

/// Enumerates every codeword of every trial and aggregates in trial order.
pub fn run(cfg: &EnsembleConfig) -> Result<EnsembleReport> {
    let source = cfg.source()?;
    let len = cfg.length();
    let results: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, &source, i))
        .collect::<Result<_>>()?;
    let trials = cfg.trials as f64;
    let mut a_bar = vec![0.0; len + 1];
    for r in &results {
        for (m, &a) in a_bar.iter_mut().zip(&r.enumerator) {
            *m += a as f64;
        }
    }
    a_bar.iter_mut().for_each(|m| *m /= trials);
    let a_bar_stderr = (0..=len)
        .map(|w| {
            if cfg.trials < 2 {
                return 0.0;
            }
            let var = results
                .iter()
                .map(|r| (r.enumerator[w] as f64 - a_bar[w]).powi(2))
                .sum::<f64>()
                / (trials - 1.0);
            (var / trials).sqrt()
        })
        .collect();
    let mean_size = a_bar.iter().sum();

    let mut hist = BTreeMap::new();
    let mut distances = Vec::new();
    for r in &results {
        if let Some(d) = r.min_distance {
            *hist.entry(d).or_insert(0) += 1;
            distances.push(d);
        }
    }
    distances.sort_unstable();
    let summary = (!distances.is_empty()).then(|| DistanceSummary {
        min: distances[0],
        median: distances[(distances.len() - 1) / 2],
        max: *distances.last().expect("nonempty"),
    });

    let nf = len as f64;
    let normalized_points = (1..=len)
        .filter(|&w| a_bar[w] > 0.0)
        .map(|w| (w as f64 / nf, a_bar[w].log2() / nf))
        .collect();
    let local_rate = cfg.local_rate()?;
    let (overlay, overlay_points) = match &source {
        LocalSource::Random { .. } => (
            "sp1sp2",
            (1..len)
                .filter_map(|w| {
                    let omega = w as f64 / nf;
                    spectrum_exponent(local_rate, omega)
                        .ok()
                        .map(|p| (omega, p.exponent))
                })
                .collect(),
        ),
        LocalSource::Fixed(code) => {
            let a = code.weight_enumerator()?;
            (
                "chernov",
                (1..len)
                    .filter_map(|w| {
                        let omega = w as f64 / nf;
                        chernov_exponent(&a, cfg.delta, omega)
                            .ok()
                            .map(|p| (omega, p.exponent))
                    })
                    .collect(),
            )
        }
    };
    Ok(EnsembleReport {
        config: ConfigEcho {
            config: cfg.clone(),
            length: len,
            local_rate,
        },
        a_bar,
        a_bar_stderr,
        mean_size,
        min_distance_hist: hist,
        zero_dimension_trials: cfg.trials - distances.len(),
        min_distance_summary: summary,
        overlay: overlay.into(),
        normalized_points,
        overlay_points,
    })
}

/// Mean weight distribution of the ensemble.
pub fn empirical_spectrum(cfg: &EnsembleConfig) -> Result<EnsembleReport> {
    run(cfg)
}

/// Minimum-distance histogram; the same scan as [`empirical_spectrum`].
pub fn empirical_min_distance(cfg: &EnsembleConfig) -> Result<EnsembleReport> {
    run(cfg)
}
