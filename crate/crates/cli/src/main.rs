//! `kondo`: sweeps, single-shot reports and self-verification for
//! impurity-scattering entanglement.
//!
//! Scattering is computed to first order in the exchange coupling, the
//! regime above the Kondo temperature. Any `𝑱 ≥ 0` is accepted and no
//! warning is given when the coupling leaves that regime.

mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use kondo_core::oracle::verify::{run_verification, VerifyOptions};
use kondo_core::{run_sweep, write_csv, ImpurityPreparation, SweepConfig};

use report::{DetectReport, ScatterReport};

#[derive(Parser, Debug)]
#[command(
    name = "kondo",
    version,
    about = "Spin entanglement from magnetic-impurity scattering",
    long_about = "Spin entanglement from magnetic-impurity scattering.\n\n\
                  Scattering is first order in the dimensionless exchange coupling 𝑱 = πJρ, \
                  valid above the Kondo temperature. Any 𝑱 ≥ 0 is accepted without warning."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entanglement and detection observables on a uniform coupling grid, as CSV.
    Sweep(SweepArgs),
    /// Final state, electron density and entanglement at one coupling.
    Scatter(PointArgs),
    /// Beam-splitter outcome probabilities and witness verdict at one coupling.
    Detect(PointArgs),
    /// Run every dual-construction cross-check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Impurity {
    Down,
    Up,
    Random,
}

impl Impurity {
    fn preparation(self) -> ImpurityPreparation {
        match self {
            Impurity::Down => ImpurityPreparation::Down,
            Impurity::Up => ImpurityPreparation::Up,
            Impurity::Random => ImpurityPreparation::Random,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Impurity::Down => "down",
            Impurity::Up => "up",
            Impurity::Random => "random",
        }
    }
}

fn nonnegative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("coupling must be finite and nonnegative, got {s}"));
    }
    Ok(v)
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Smallest coupling on the grid.
    #[arg(long, default_value = "0", value_parser = nonnegative, allow_negative_numbers = true)]
    j_min: f64,
    /// Largest coupling on the grid.
    #[arg(long, default_value = "5", value_parser = nonnegative, allow_negative_numbers = true)]
    j_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    steps: u32,
    /// Preparation for the definite, flip, bunching and correlation columns.
    #[arg(long, value_enum, default_value_t = Impurity::Down)]
    impurity: Impurity,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Dimensionless coupling 𝑱 = πJρ.
    #[arg(long, value_parser = nonnegative, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, value_enum, default_value_t = Impurity::Down)]
    impurity: Impurity,
    /// Emit a single JSON document.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Shift one Born-kernel entry to check that the cross-checks can fail.
    #[arg(
        long,
        hide = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    perturb_kernel: f64,
}

fn open_output(path: &Path) -> io::Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn sweep(args: SweepArgs) -> ExitCode {
    if args.j_min > args.j_max {
        Cli::command()
            .error(
                ErrorKind::ValueValidation,
                format!("--j-min {} exceeds --j-max {}", args.j_min, args.j_max),
            )
            .exit();
    }
    let cfg = SweepConfig {
        j_min: args.j_min,
        j_max: args.j_max,
        steps: args.steps as usize,
        impurity: args.impurity.preparation(),
    };
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => return fail(&e),
    };
    let written = open_output(&args.output).and_then(|out| write_csv(&rows, out));
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&format!("cannot write {}: {e}", args.output.display())),
    }
}

/// Print to standard output. A closed pipe ends output quietly.
fn print(text: &dyn std::fmt::Display) -> ExitCode {
    match writeln!(io::stdout().lock(), "{text}") {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn emit<T: serde::Serialize + std::fmt::Display>(report: &T, json: bool) -> ExitCode {
    if json {
        match serde_json::to_string_pretty(report) {
            Ok(s) => print(&s),
            Err(e) => fail(&e),
        }
    } else {
        print(report)
    }
}

fn fail(e: &dyn std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Scatter(a) => {
            match ScatterReport::compute(a.j, a.impurity.name(), &a.impurity.preparation()) {
                Ok(r) => emit(&r, a.json),
                Err(e) => fail(&e),
            }
        }
        Command::Detect(a) => {
            match DetectReport::compute(a.j, a.impurity.name(), &a.impurity.preparation()) {
                Ok(r) => emit(&r, a.json),
                Err(e) => fail(&e),
            }
        }
        Command::Verify(a) => {
            let report = run_verification(&VerifyOptions {
                kernel_perturbation: a.perturb_kernel,
            });
            let printed = print(&report);
            if report.all_passed() {
                printed
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
