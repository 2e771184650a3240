//! `xlab`: constructions, brute-force oracles and bound curves for expander
//! codes.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xlab_core::bounds::curve::{self, BoundKind, CurveOptions};
use xlab_core::bounds::{chernov_exponent, chernov_zero_crossing, spectrum_exponent};
use xlab_core::graph::{self, second_eigenvalue, split_modified, DEFAULT_EIG_TOL};
use xlab_core::{
    catalog_lookup, ensemble, BipartiteGraph, BitVector, CodeFile, EnsembleConfig, EnsembleVariant,
    Error, ExpanderCode, ModifiedGraph, Result,
};

use output::{read_json, write_json, write_text};

#[derive(Parser)]
#[command(
    name = "xlab",
    version,
    about = "Expander-code constructions and distance bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Asymptotic rate/distance bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Weight-spectrum exponent on a uniform grid of relative weights.
    Spectrum(SpectrumArgs),
    /// Random regular bipartite graphs and their spectra.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Assembled codes: build, exact distance, membership, parity export.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Monte-Carlo experiments over the random ensemble.
    #[command(subcommand)]
    Ensemble(EnsembleCmd),
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Product bound and the two improved bounds at R = 0.1..0.9 (TSV).
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample one curve over a rate grid.
    Curve(CurveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_parser = parse_bound)]
    bound: BoundKind,
    /// Concatenation order for `bz` (omit for the infinite-order limit).
    #[arg(long)]
    m: Option<usize>,
    /// Inner rate for `serial` (default (1 + R)/2).
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    r_min: f64,
    #[arg(long, default_value_t = 0.95)]
    r_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_bound(s: &str) -> std::result::Result<BoundKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumVariant {
    /// Random-ensemble exponent at overall rate `--rate`.
    Ensemble,
    /// Fixed local code `--code` on both sides.
    Local,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_enum)]
    variant: SpectrumVariant,
    #[arg(long, required_if_eq("variant", "ensemble"))]
    rate: Option<f64>,
    #[arg(long, required_if_eq("variant", "local"))]
    code: Option<String>,
    /// Local code length used in the exponent (defaults to the code length).
    #[arg(long)]
    delta_sym: Option<usize>,
    #[arg(long, default_value_t = 199)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Union of `delta` random perfect matchings on `n + n` vertices.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject parallel edges.
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two random regular graphs sharing the left side.
    GenModified {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta1: usize,
        #[arg(long)]
        delta2: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second eigenvalue of a graph file.
    Spectral {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EIG_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum VariantArg {
    Basic,
    Multiedge,
    Modified,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Assemble a code from a graph file and local codes.
    Build {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        graph: PathBuf,
        /// Left code (catalog name).
        #[arg(long)]
        a: String,
        /// Right code (catalog name).
        #[arg(long)]
        b: String,
        /// Auxiliary code of the modified variant.
        #[arg(long, required_if_eq("variant", "modified"))]
        aux: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Information set of `A`, comma separated symbol positions.
        #[arg(long, value_delimiter = ',', required_if_eq("variant", "modified"))]
        info: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum distance by enumeration, with the designed distance.
    Distance {
        #[arg(long)]
        code: PathBuf,
    },
    /// Membership of a word (0/1 string, or `--zero`).
    Check {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, conflicts_with = "zero", required_unless_present = "zero")]
        word: Option<String>,
        #[arg(long)]
        zero: bool,
    },
    /// Global parity-check matrix in text form.
    ExportParity {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleVariantArg {
    RandomLocal,
    FixedLocal,
}

#[derive(Subcommand)]
enum EnsembleCmd {
    /// Enumerate every trial and report mean spectra and distances.
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, value_enum, default_value_t = EnsembleVariantArg::RandomLocal)]
        variant: EnsembleVariantArg,
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long)]
        code: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    if e.is_precondition() {
        3
    } else if matches!(e, Error::Io(_)) {
        4
    } else {
        2
    }
}

/// Caps the worker pool at `XLAB_THREADS` when set.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("XLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Error::BadParams(format!(
                "XLAB_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::BadParams(e.to_string()))
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Bounds(BoundsCmd::Table { out }) => {
            let rows = curve::bounds_table()?;
            write_text(out.as_deref(), &curve::table_tsv(&rows))
        }
        Command::Bounds(BoundsCmd::Curve(args)) => bounds_curve(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Graph(cmd) => graph_cmd(cmd),
        Command::Code(cmd) => code_cmd(cmd),
        Command::Ensemble(EnsembleCmd::Run {
            n,
            delta,
            variant,
            r0,
            code,
            trials,
            seed,
            out,
        }) => {
            let variant = match variant {
                EnsembleVariantArg::RandomLocal => EnsembleVariant::RandomLocal,
                EnsembleVariantArg::FixedLocal => EnsembleVariant::FixedLocal,
            };
            let cfg = EnsembleConfig {
                n,
                delta,
                variant,
                r0,
                code,
                trials,
                seed,
            };
            write_json(out.as_deref(), &ensemble::run(&cfg)?)
        }
    }
}

#[derive(Serialize)]
struct CurveJson<'a> {
    bound: BoundKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r0: Option<f64>,
    points: &'a [xlab_core::BoundPoint],
}

fn bounds_curve(args: CurveArgs) -> Result<()> {
    let rates = curve::rate_grid(args.r_min, args.r_max, args.step)?;
    let opts = CurveOptions {
        order: args.m,
        r0: args.r0,
    };
    let points = curve::sample_curve(args.bound, &rates, opts)?;
    match args.format {
        Format::Csv => write_text(args.out.as_deref(), &curve::curve_csv(&points)),
        Format::Json => write_json(
            args.out.as_deref(),
            &CurveJson {
                bound: args.bound,
                m: args.m,
                r0: args.r0,
                points: &points,
            },
        ),
    }
}

fn spectrum(args: SpectrumArgs) -> Result<()> {
    if args.points == 0 {
        return Err(Error::BadParams("--points must be positive".into()));
    }
    let grid: Vec<f64> = (1..=args.points)
        .map(|i| i as f64 / (args.points + 1) as f64)
        .collect();
    let points: Vec<(f64, f64)> = match args.variant {
        SpectrumVariant::Ensemble => {
            let rate = args.rate.expect("required by clap");
            if !(rate > 0.0 && rate < 1.0) {
                return Err(Error::Domain(format!("rate {rate} must lie in (0,1)")));
            }
            let r0 = 0.5 * (1.0 + rate);
            grid.iter()
                .map(|&w| spectrum_exponent(r0, w).map(|p| (w, p.exponent)))
                .collect::<Result<_>>()?
        }
        SpectrumVariant::Local => {
            let code = catalog_lookup(args.code.as_deref().expect("required by clap"))?;
            let a = code.weight_enumerator()?;
            let delta = args.delta_sym.unwrap_or(code.len());
            if delta + 1 != a.len() {
                return Err(Error::LengthMismatch {
                    expected: a.len() - 1,
                    found: delta,
                });
            }
            let crossing = chernov_zero_crossing(&a, delta)?;
            eprintln!(
                "zero crossing at omega = {}",
                xlab_core::report::fmt_sig9(crossing)
            );
            grid.iter()
                .filter_map(|&w| chernov_exponent(&a, delta, w).ok().map(|p| (w, p.exponent)))
                .collect()
        }
    };
    write_text(args.out.as_deref(), &curve::spectrum_csv(&points))
}

#[derive(Serialize)]
struct SpectralReport {
    n: usize,
    delta: usize,
    lambda1: f64,
    lambda2: f64,
    ramanujan: bool,
    ramanujan_threshold: f64,
    components: usize,
    method: graph::EigenMethod,
}

fn graph_cmd(cmd: GraphCmd) -> Result<()> {
    match cmd {
        GraphCmd::Gen {
            n,
            delta,
            seed,
            simple,
            out,
        } => write_json(
            out.as_deref(),
            &BipartiteGraph::random_regular(n, delta, seed, simple)?,
        ),
        GraphCmd::GenModified {
            n,
            delta1,
            delta2,
            seed,
            simple,
            out,
        } => write_json(
            out.as_deref(),
            &split_modified(n, delta1, delta2, seed, simple)?,
        ),
        GraphCmd::Spectral { graph, tol } => {
            let g: BipartiteGraph = read_json(&graph)?;
            let s = second_eigenvalue(&g, tol)?;
            write_json(
                None,
                &SpectralReport {
                    n: g.n(),
                    delta: g.delta(),
                    lambda1: s.lambda1,
                    lambda2: s.lambda2,
                    ramanujan: graph::is_ramanujan(&g, &s),
                    ramanujan_threshold: 2.0 * (g.delta() as f64 - 1.0).max(0.0).sqrt(),
                    components: g.component_count(),
                    method: s.method,
                },
            )
        }
    }
}

#[derive(Serialize)]
struct BuildSummary {
    variant: xlab_core::Variant,
    length: usize,
    k: usize,
    rate: f64,
    rate_floor: f64,
}

#[derive(Serialize)]
struct DistanceReport {
    length: usize,
    k: usize,
    distance: usize,
    relative_distance: f64,
    lambda2: f64,
    designed_distance: f64,
}

#[derive(Serialize)]
struct CheckReport {
    codeword: bool,
    parity: bool,
}

fn load_code(path: &Path) -> Result<ExpanderCode> {
    read_json::<CodeFile>(path)?.build()
}

fn code_cmd(cmd: CodeCmd) -> Result<()> {
    match cmd {
        CodeCmd::Build {
            variant,
            graph,
            a,
            b,
            aux,
            t,
            info,
            out,
        } => {
            let (ca, cb) = (catalog_lookup(&a)?, catalog_lookup(&b)?);
            let code = match variant {
                VariantArg::Basic => {
                    ExpanderCode::build_basic(&read_json::<BipartiteGraph>(&graph)?, &ca, &cb)?
                }
                VariantArg::Multiedge => ExpanderCode::build_multiedge(
                    &read_json::<BipartiteGraph>(&graph)?,
                    &ca,
                    &cb,
                    t,
                )?,
                VariantArg::Modified => {
                    let mg: ModifiedGraph = read_json(&graph)?;
                    let caux = catalog_lookup(aux.as_deref().expect("required by clap"))?;
                    ExpanderCode::build_modified(&mg, &ca, &cb, &caux, t, &info)?
                }
            };
            write_json(out.as_deref(), &code.to_file())?;
            if out.is_some() {
                write_json(
                    None,
                    &BuildSummary {
                        variant: code.variant(),
                        length: code.len(),
                        k: code.k(),
                        rate: code.rate(),
                        rate_floor: code.rate_floor(),
                    },
                )?;
            }
            Ok(())
        }
        CodeCmd::Distance { code } => {
            let code = load_code(&code)?;
            let distance = code.min_distance_bruteforce()?;
            let lambda2 = code.lambda2()?;
            write_json(
                None,
                &DistanceReport {
                    length: code.len(),
                    k: code.k(),
                    distance,
                    relative_distance: distance as f64 / code.len() as f64,
                    lambda2,
                    designed_distance: code.designed_distance(lambda2)?,
                },
            )
        }
        CodeCmd::Check { code, word, zero } => {
            let code = load_code(&code)?;
            let x = if zero {
                BitVector::zeros(code.len())
            } else {
                word.expect("required by clap").parse()?
            };
            write_json(
                None,
                &CheckReport {
                    codeword: code.is_codeword(&x)?,
                    parity: code.satisfies_parity(&x)?,
                },
            )
        }
        CodeCmd::ExportParity { code, out } => {
            write_text(out.as_deref(), &load_code(&code)?.parity().to_text())
        }
    }
}
