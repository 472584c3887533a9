//! `monofact`: sampling, enumeration, verification, statistics,
//! lamination rendering and convergence diagnostics for monotone minimal
//! factorisations of the full cycle.
//!
//! Every run is deterministic given its full configuration including the
//! seed, and echoes that resolved configuration (stderr for data
//! outputs, embedded in report outputs). Exit codes: 0 success, 1
//! invariant failure, 2 usage error, 3 I/O or malformed input.
//! `RAYON_NUM_THREADS` bounds the worker pool used for independent
//! trials; output ordering is canonical regardless of scheduling.

mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use monofact::bijection::{
    decreasing_factorisation_of_tree, increasing_factorisation_of_tree,
};
use monofact::json::{Document, FactorisationDoc, LaminationDoc, Payload};
use monofact::lamination::{lamination_snapshot, render_svg, alignment_bound, SvgOptions};
use monofact::perm::Factorisation;
use monofact::rng::rng_for_trial;
use monofact::stats::{distinct_a_clt, distinct_a_distribution_exact, parking_cdf_fluctuation};
use monofact::tree::{for_each_plane_tree, sample_uniform_plane_tree, PlaneTree};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "monofact", version, about = "Monotone minimal factorisations of the full cycle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Decreasing,
    Increasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DataFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum LamFormat {
    Svg,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a uniform decreasing or increasing factorisation.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Decreasing)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the generating tree in the output.
        #[arg(long)]
        with_tree: bool,
        #[arg(long, value_enum, default_value_t = DataFormat::Json)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all decreasing or increasing factorisations of size n,
    /// streamed one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Decreasing)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = DataFormat::Json)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite on a serialized object ("-" for stdin).
    Verify {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render or serialize the lamination snapshot L_{⌊nt⌋} of a sampled
    /// factorisation.
    Lamination {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Decreasing)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Snapshot time in [0, 1].
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_enum, default_value_t = LamFormat::Svg)]
        format: LamFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alignment-bound table across a size grid (decreasing only).
    Distance {
        /// Comma-separated sizes.
        #[arg(long, default_value = "200,800,3200")]
        n_grid: String,
        /// Number of independent seeds per size.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certified Hausdorff tolerance.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = DataFormat::Text)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statistical reports.
    Stats {
        #[command(subcommand)]
        report: StatsCommand,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Exact distribution of the number of distinct smaller endpoints
    /// (n <= 10), three computation routes compared exactly.
    DistinctAExact {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DataFormat::Text)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normal-fluctuation Monte Carlo for the distinct smaller endpoints.
    DistinctAClt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DataFormat::Text)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaled parking-CDF deviation Monte Carlo.
    Parking {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DataFormat::Text)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invariant(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 1,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invariant(m) | CliError::Io(m) => m,
        }
    }
}

fn usage(e: monofact::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn echo_config(config: &serde_json::Value) {
    eprintln!("config: {config}");
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(|e| CliError::Io(e.to_string()))
        }
        Some(path) => {
            std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
    }
}

fn sample_factorisation(n: usize, kind: Kind, seed: u64) -> Result<(PlaneTree, Factorisation), CliError> {
    let tree = sample_uniform_plane_tree(n, seed).map_err(usage)?;
    let f = match kind {
        Kind::Decreasing => decreasing_factorisation_of_tree(&tree),
        Kind::Increasing => increasing_factorisation_of_tree(&tree),
    };
    Ok((tree, f))
}

fn factorisation_text(f: &Factorisation) -> String {
    let taus: Vec<String> = f.taus().iter().map(|t| format!("({} {})", t.a(), t.b())).collect();
    format!("n={} taus={}", f.n(), taus.join(""))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample { n, kind, seed, with_tree, format, out } => {
            let config = serde_json::json!({
                "subcommand": "sample", "n": n, "kind": kind, "seed": seed,
                "with_tree": with_tree, "format": format,
            });
            echo_config(&config);
            let (tree, f) = sample_factorisation(n, kind, seed)?;
            let content = match format {
                DataFormat::Json => {
                    let mut doc = FactorisationDoc::from_factorisation(&f);
                    doc.kind = Some(format!("{kind:?}").to_lowercase());
                    if with_tree {
                        doc.tree = Some(tree.children_counts().to_vec());
                    }
                    Document::new(Payload::Factorisation(doc)).to_json() + "\n"
                }
                DataFormat::Text => factorisation_text(&f) + "\n",
            };
            write_output(&out, &content)
        }
        Command::Enumerate { n, kind, format, out } => {
            let config = serde_json::json!({
                "subcommand": "enumerate", "n": n, "kind": kind, "format": format,
            });
            echo_config(&config);
            let mut content = String::new();
            for_each_plane_tree(n, |t| {
                let f = match kind {
                    Kind::Decreasing => decreasing_factorisation_of_tree(t),
                    Kind::Increasing => increasing_factorisation_of_tree(t),
                };
                match format {
                    DataFormat::Json => {
                        let mut doc = FactorisationDoc::from_factorisation(&f);
                        doc.kind = Some(format!("{kind:?}").to_lowercase());
                        content.push_str(&Document::new(Payload::Factorisation(doc)).to_json());
                    }
                    DataFormat::Text => content.push_str(&factorisation_text(&f)),
                }
                content.push('\n');
            })
            .map_err(usage)?;
            write_output(&out, &content)
        }
        Command::Verify { input, out } => {
            let text = if input.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))?
            } else {
                std::fs::read_to_string(&input)
                    .map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?
            };
            let config = serde_json::json!({
                "subcommand": "verify", "input": input.display().to_string(),
            });
            echo_config(&config);
            let doc = Document::from_json(&text).map_err(|e| CliError::Io(e.to_string()))?;
            let outcome = verify::verify_document(&doc);
            let content = serde_json::to_string_pretty(&outcome).expect("report serializes") + "\n";
            write_output(&out, &content)?;
            if outcome.failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Invariant(format!(
                    "{} invariant(s) failed",
                    outcome.failures.len()
                )))
            }
        }
        Command::Lamination { n, kind, seed, t, format, out } => {
            if !(0.0..=1.0).contains(&t) {
                return Err(CliError::Usage(format!("--t {t} outside [0, 1]")));
            }
            let config = serde_json::json!({
                "subcommand": "lamination", "n": n, "kind": kind, "seed": seed,
                "t": t, "format": format,
            });
            echo_config(&config);
            let (_, f) = sample_factorisation(n, kind, seed)?;
            let k = ((n as f64 * t).floor() as usize).min(n);
            let snapshot = lamination_snapshot(&f, k).map_err(usage)?;
            let content = match format {
                LamFormat::Json => {
                    Document::new(Payload::Lamination(LaminationDoc::from_lamination(&snapshot)))
                        .to_json()
                        + "\n"
                }
                LamFormat::Svg => {
                    let opts = SvgOptions { comment: Some(config.to_string()), ..Default::default() };
                    render_svg(&snapshot, &opts)
                }
            };
            write_output(&out, &content)
        }
        Command::Distance { n_grid, seeds, seed, tol, format, out } => {
            let grid: Vec<usize> = n_grid
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|e| CliError::Usage(format!("--n-grid: {e}"))))
                .collect::<Result<_, _>>()?;
            if grid.iter().any(|&n| n < 2) || seeds == 0 {
                return Err(CliError::Usage("--n-grid entries must be >= 2 and --seeds >= 1".into()));
            }
            let config = serde_json::json!({
                "subcommand": "distance", "n_grid": grid, "seeds": seeds,
                "seed": seed, "tol": tol, "format": format,
            });
            echo_config(&config);
            let report = distance_report(&grid, seeds, seed, tol)?;
            let content = match format {
                DataFormat::Json => {
                    let mut value = serde_json::to_value(&report).expect("report serializes");
                    value["config"] = config;
                    serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
                }
                DataFormat::Text => report.to_text(),
            };
            write_output(&out, &content)
        }
        Command::Stats { report } => {
            let (result, format, out) = match report {
                StatsCommand::DistinctAExact { n, format, out } => {
                    (distinct_a_distribution_exact(n), format, out)
                }
                StatsCommand::DistinctAClt { n, trials, seed, format, out } => {
                    (distinct_a_clt(n, trials, seed), format, out)
                }
                StatsCommand::Parking { n, trials, seed, format, out } => {
                    (parking_cdf_fluctuation(n, trials, seed), format, out)
                }
            };
            let report = result.map_err(usage)?;
            echo_config(&serde_json::json!({
                "subcommand": "stats", "report": report.name, "params": report.params,
            }));
            let content = match format {
                DataFormat::Json => report.to_json() + "\n",
                DataFormat::Text => report.to_text(),
            };
            write_output(&out, &content)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Invariant(format!("report {} failed its checks", report.name)))
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct DistanceRow {
    n: usize,
    seed_index: u64,
    time_term: f64,
    hausdorff_term: f64,
    value: f64,
}

#[derive(Debug, Serialize)]
struct DistanceSummary {
    n: usize,
    median: f64,
    q25: f64,
    q75: f64,
    min: f64,
    max: f64,
}

#[derive(Debug, Serialize)]
struct DistanceReport {
    rows: Vec<DistanceRow>,
    summary: Vec<DistanceSummary>,
    medians_strictly_decreasing: bool,
}

impl DistanceReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>8} {:>6} {:>14} {:>16} {:>14}\n",
            "n", "seed", "time_term", "hausdorff_term", "D_n"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:>8} {:>6} {:>14.8} {:>16.8} {:>14.8}\n",
                row.n, row.seed_index, row.time_term, row.hausdorff_term, row.value
            ));
        }
        out.push_str(&format!(
            "{:>8} {:>14} {:>14} {:>14} {:>14} {:>14}\n",
            "n", "median", "q25", "q75", "min", "max"
        ));
        for s in &self.summary {
            out.push_str(&format!(
                "{:>8} {:>14.8} {:>14.8} {:>14.8} {:>14.8} {:>14.8}\n",
                s.n, s.median, s.q25, s.q75, s.min, s.max
            ));
        }
        out.push_str(&format!(
            "medians strictly decreasing: {}\n",
            self.medians_strictly_decreasing
        ));
        out
    }
}

/// Alignment bounds for every (size, seed) pair; trial stream index is
/// `grid_position * seeds + seed_index`, so the table is reproducible
/// from the full configuration alone.
fn distance_report(grid: &[usize], seeds: u64, seed: u64, tol: f64) -> Result<DistanceReport, CliError> {
    let tasks: Vec<(usize, usize, u64)> = grid
        .iter()
        .enumerate()
        .flat_map(|(gi, &n)| (0..seeds).map(move |s| (gi, n, s)))
        .collect();
    let rows: Vec<DistanceRow> = tasks
        .par_iter()
        .map(|&(gi, n, s)| {
            let mut rng = rng_for_trial(seed, gi as u64 * seeds + s);
            let tree = monofact::tree::sample_uniform_plane_tree_with(n, &mut rng)
                .expect("n >= 2 validated");
            let f = decreasing_factorisation_of_tree(&tree);
            let bound = alignment_bound(&f, tol).expect("decreasing input by construction");
            DistanceRow {
                n,
                seed_index: s,
                time_term: bound.time_term,
                hausdorff_term: bound.hausdorff_term,
                value: bound.value,
            }
        })
        .collect();
    let mut summary = Vec::new();
    for &n in grid {
        let mut values: Vec<f64> =
            rows.iter().filter(|r| r.n == n).map(|r| r.value).collect();
        values.sort_by(f64::total_cmp);
        let quantile = |q: f64| values[((values.len() - 1) as f64 * q).round() as usize];
        summary.push(DistanceSummary {
            n,
            median: quantile(0.5),
            q25: quantile(0.25),
            q75: quantile(0.75),
            min: values[0],
            max: values[values.len() - 1],
        });
    }
    let medians_strictly_decreasing =
        summary.windows(2).all(|w| w[1].median < w[0].median);
    Ok(DistanceReport { rows, summary, medians_strictly_decreasing })
}
