//! Command-line driver: run verification suites and export presentations.
//!
//! Exit status: 0 when every check passes, 1 on check failures, 2 on usage
//! errors, 3 on internal errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use yangian::report::{self, Corruption, Report, SuiteConfig, SuiteKind};

#[derive(Parser)]
#[command(
    name = "yangian",
    version,
    about = "Exact verification of Yangian-type Hopf algebras, their boundary limits, and spectral R-matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
    /// Export a presentation's commutator table and coproducts.
    Export(ExportArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: hopf, limit, cybe, colie, factor, twist, ybe, pqybe, series, gfmodes, all
    suite: String,
    /// Verification depth: Jacobi triples with mode sum <= m+1, relation and
    /// coalgebra data with modes <= m-1, bidegrees with i+j <= m.
    #[arg(long = "max-mode", default_value_t = 3)]
    max_mode: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include wall-clock timings (makes the report non-deterministic).
    #[arg(long)]
    timings: bool,
    /// Deliberately corrupt an input (negative-control fixture):
    /// table, tensor, or exponent.
    #[arg(long, hide = true)]
    corrupt: Option<String>,
}

#[derive(Args)]
struct ExportArgs {
    /// Presentation: y_sl2, boundary, factor
    presentation: String,
    #[arg(long = "max-mode", default_value_t = 3)]
    max_mode: u8,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Export(args) => export(args),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let Some(suite) = SuiteKind::parse(&args.suite) else {
        eprintln!("unknown suite '{}'", args.suite);
        return ExitCode::from(2);
    };
    if args.max_mode < 1 {
        eprintln!("--max-mode must be at least 1");
        return ExitCode::from(2);
    }
    let corrupt = match &args.corrupt {
        None => None,
        Some(name) => match Corruption::parse(name) {
            Some(c) => Some(c),
            None => {
                eprintln!("unknown corruption '{name}'");
                return ExitCode::from(2);
            }
        },
    };
    let report = report::run(SuiteConfig {
        suite,
        max_mode: args.max_mode,
        corrupt,
        timings: args.timings,
    });
    let rendered = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if let Err(err) = emit(&rendered, args.output.as_deref()) {
        eprintln!("cannot write report: {err}");
        return ExitCode::from(3);
    }
    exit_for(&report)
}

fn export(args: ExportArgs) -> ExitCode {
    match report::export_presentation(&args.presentation, args.max_mode) {
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Ok(text) => {
            if let Err(err) = emit(&text, args.output.as_deref()) {
                eprintln!("cannot write export: {err}");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
    }
}

fn emit(text: &str, output: Option<&std::path::Path>) -> std::io::Result<()> {
    match output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
        Some(path) => std::fs::write(path, text),
    }
}

fn exit_for(report: &Report) -> ExitCode {
    if report.any_errored() {
        ExitCode::from(3)
    } else if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
