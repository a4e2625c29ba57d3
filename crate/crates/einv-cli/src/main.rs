use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use einv::run::{run, CheckKind, FamilySel, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Sp,
    Spin,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Runs the exact identity suites, reconstruction round trips and number
/// checks, and prints a report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    #[arg(long, value_enum, default_value = "both")]
    family: FamilyArg,
    /// Repeat for several values.
    #[arg(long = "n", default_values_t = [1u64, 2])]
    n: Vec<u64>,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// identities, reconstruction, numbers, pairing or all; comma separated
    /// or repeated.
    #[arg(long, value_delimiter = ',', default_value = "all", value_parser = parse_checks)]
    checks: Vec<Vec<CheckKind>>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_checks(s: &str) -> Result<Vec<CheckKind>, String> {
    CheckKind::parse(s).map_err(|e| e.to_string())
}

const USAGE: u8 = 2;
const IO: u8 = 3;

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        family: match args.family {
            FamilyArg::Sp => FamilySel::Sp,
            FamilyArg::Spin => FamilySel::Spin,
            FamilyArg::Both => FamilySel::Both,
        },
        n: args.n,
        samples: args.samples,
        seed: args.seed,
        checks: args.checks.into_iter().flatten().collect::<BTreeSet<_>>(),
        output_path: args.output,
    };
    let config = match config.validated() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let report = run(&config);
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &config.output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(IO);
            }
        }
        None => print!("{body}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
