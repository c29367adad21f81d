use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use latpoly::bounds::{enumerate_reflexive, gen_delta, gen_q, gen_t, QVariant};
use latpoly::harness::{run_sweep, SweepConfig, SweepMode};
use latpoly::io::{parse_polygon, to_json, NamedPolygon};
use latpoly::rational::to_string as rat;
use latpoly::width::{lattice_width, width_normalize};
use latpoly::{verify_with, CheckSet};

#[derive(Parser)]
#[command(name = "latpoly", version, about = "Exact lattice geometry of rational polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every invariant of a polygon as JSON.
    Invariants { file: PathBuf },
    /// Run checks on a polygon; exits with status 1 if any fails.
    Verify {
        file: PathBuf,
        /// Comma-separated: scott, identity, bounds, slicing, twelve, all.
        #[arg(long, default_value = "all")]
        checks: String,
    },
    /// Emit polygons of the extremal families as JSON lines.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Verify many polygons and write a JSON-lines report.
    Sweep(SweepArgs),
    /// Lattice width, its directions and width coordinates per direction.
    Width { file: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    /// The triangle T_{k,l}.
    T {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
    /// m times the standard triangle.
    Delta {
        #[arg(long)]
        m: u64,
    },
    /// m times Q.
    Q {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "reflexive")]
        variant: Variant,
    },
    /// The 16 reflexive polygons.
    Reflexive16,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(alias = "paper")]
    Hollow,
    Reflexive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long = "box", default_value_t = 4)]
    box_size: u32,
    #[arg(long, default_value_t = 1)]
    denominator: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value = "all")]
    checks: String,
    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn read_polygon(path: &Path) -> Result<NamedPolygon> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_polygon(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Invariants { file } => {
            let np = read_polygon(&file)?;
            let mut report = verify_with(&np.polygon, CheckSet::ALL);
            report.name = np.name;
            print_json(&serde_json::to_value(&report)?)?;
            Ok(true)
        }
        Command::Verify { file, checks } => {
            let np = read_polygon(&file)?;
            let checks: CheckSet = checks.parse()?;
            let mut report = verify_with(&np.polygon, checks);
            report.name = np.name;
            print_json(&serde_json::to_value(&report)?)?;
            for a in &report.anomalies {
                eprintln!("anomaly: {a}");
            }
            Ok(report.is_clean())
        }
        Command::Gen { family } => {
            let polys = match family {
                Family::T { k, l } => vec![(format!("T_{{{k},{l}}}"), gen_t(k, l)?)],
                Family::Delta { m } => vec![(format!("{m}*Delta2"), gen_delta(m)?)],
                Family::Q { m, variant } => {
                    let (v, tag) = match variant {
                        Variant::Hollow => (QVariant::Hollow, "Q"),
                        Variant::Reflexive => (QVariant::Reflexive, "Q'"),
                    };
                    vec![(format!("{m}*{tag}"), gen_q(m, v)?)]
                }
                Family::Reflexive16 => enumerate_reflexive()
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| (format!("reflexive-{}", i + 1), p))
                    .collect(),
            };
            let mut out = io::stdout().lock();
            for (name, p) in polys {
                writeln!(out, "{}", to_json(Some(&name), &p))?;
            }
            Ok(true)
        }
        Command::Sweep(args) => {
            let cfg = SweepConfig {
                mode: match args.mode {
                    Mode::Exhaustive => SweepMode::Exhaustive,
                    Mode::Random => SweepMode::Random,
                },
                box_size: args.box_size,
                denominator: args.denominator,
                sample_count: args.count,
                seed: args.seed,
                checks: args.checks.parse()?,
                workers: args.workers,
            };
            let summary = match &args.out {
                Some(path) => {
                    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(f);
                    run_sweep(&cfg, &mut w).with_context(|| format!("writing {}", path.display()))?
                }
                None => run_sweep(&cfg, &mut io::stdout().lock())?,
            };
            eprintln!(
                "{} polygons, {} with anomalies",
                summary.polygons,
                summary.anomalies.len()
            );
            Ok(summary.is_clean())
        }
        Command::Width { file } => {
            let np = read_polygon(&file)?;
            let lw = lattice_width(&np.polygon);
            let data = lw
                .directions
                .iter()
                .map(|&d| width_normalize(&np.polygon, d))
                .collect::<latpoly::Result<Vec<_>>>()?;
            print_json(&json!({
                "lattice_width": rat(&lw.width),
                "directions": lw.directions,
                "width_data": data,
            }))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
