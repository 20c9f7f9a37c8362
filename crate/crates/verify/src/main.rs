use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use choquard_verify::config::{parse_tol_overrides, SuiteConfig};
use choquard_verify::csv::{emit_csv, Curve};
use choquard_verify::{run_group, Group};
use clap::{Args, Parser, Subcommand};

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "choquard-verify",
    version,
    about = "Numerical verification of the planar Choquard bubble and its kernel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Every check, in order.
    Suite,
    /// Spectral multipliers, Galerkin assembly and the kernel certificate.
    Spectrum,
    /// Plane identities, residuals, asymptotics and energy bounds.
    Identities,
    /// Funk–Hecke oracles on the interval and on the full sphere.
    FunkHecke,
    /// Export a curve as CSV.
    Csv,
}

#[derive(Args, Debug)]
struct Opts {
    /// Comma-separated values of α in (0, 2).
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5])]
    alpha: Vec<f64>,
    /// Highest harmonic degree K.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    /// Sphere quadrature level for the Galerkin assembly.
    #[arg(long, global = true, default_value_t = 24)]
    quad_level: usize,
    /// Tolerance overrides, `name=value[,name=value…]`.
    #[arg(long, global = true)]
    tol: Vec<String>,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Curve for the `csv` subcommand.
    #[arg(long, global = true, value_enum)]
    csv: Option<Curve>,
}

fn config(opts: &Opts) -> Result<SuiteConfig> {
    let overrides = parse_tol_overrides(&opts.tol)?;
    Ok(SuiteConfig::new(&opts.alpha, opts.max_degree, opts.quad_level, overrides, opts.seed, opts.out.clone())?)
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot write {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = match config(&cli.opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("invalid configuration: {e:#}");
            return Ok(ExitCode::from(EXIT_INVALID));
        }
    };
    let group = match cli.command {
        Command::Csv => {
            let Some(curve) = cli.opts.csv else {
                eprintln!("invalid configuration: the csv subcommand needs --csv <curve>");
                return Ok(ExitCode::from(EXIT_INVALID));
            };
            let mut out = sink(cfg.output_path.as_ref())?;
            emit_csv(curve, &cfg, &mut out)?;
            out.flush()?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Suite => Group::All,
        Command::Spectrum => Group::Spectrum,
        Command::Identities => Group::Identities,
        Command::FunkHecke => Group::FunkHecke,
    };
    let report = run_group(&cfg, group);
    let mut out = sink(cfg.output_path.as_ref())?;
    writeln!(out, "{}", report.to_json()?)?;
    out.flush()?;
    for c in report.failures() {
        eprintln!("FAIL {}: value {:?}, expected {:?}, tol {:?}", c.name, c.value, c.expected, c.tol);
    }
    eprintln!("{} passed, {} failed in {} ms", report.summary.passed, report.summary.failed, report.summary.runtime_ms);
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
