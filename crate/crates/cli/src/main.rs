use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pnev_cli::fixture::parse_rational;
use pnev_cli::{load_fixture, run, CheckId, RunOptions, Selection};
use pnev_core::Rational;

/// Tabulate p-adic Nevanlinna functions of a fixture and run its checks.
#[derive(Parser, Debug)]
#[command(name = "pnev", version)]
struct Args {
    /// Fixture JSON file.
    fixture: PathBuf,
    #[arg(long, default_value = "-8", value_parser = rational, allow_hyphen_values = true)]
    rho_min: Rational,
    #[arg(long, default_value = "32", value_parser = rational, allow_hyphen_values = true)]
    rho_max: Rational,
    #[arg(long, default_value = "1", value_parser = rational)]
    step: Rational,
    /// Write the table as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Write one JSON record per check.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Run checks with this id (repeatable).
    #[arg(long = "check", value_name = "ID", value_parser = check_id)]
    checks: Vec<CheckId>,
    /// Run every check declared by the fixture.
    #[arg(long, conflicts_with = "checks")]
    all_checks: bool,
    /// Show table values in natural-log units.
    #[arg(long)]
    natural_log: bool,
    /// Right end of the interval for empirical constants.
    #[arg(long, default_value = "32", value_parser = rational)]
    interval: Rational,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

fn check_id(s: &str) -> Result<CheckId, String> {
    CheckId::parse(s).ok_or_else(|| {
        let ids: Vec<&str> = CheckId::ALL.iter().map(|c| c.as_str()).collect();
        format!("unknown check `{s}` (one of {})", ids.join(", "))
    })
}

fn main() -> ExitCode {
    // Usage errors share status 1 with fixture errors; 2 is reserved for refusals.
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let fx = match load_fixture(&args.fixture) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", args.fixture.display());
            return ExitCode::from(1);
        }
    };
    let selection = if args.all_checks {
        Selection::All
    } else if args.checks.is_empty() {
        Selection::None
    } else {
        Selection::Ids(args.checks.clone())
    };
    let opts = RunOptions {
        rho_min: args.rho_min,
        rho_max: args.rho_max,
        step: args.step,
        selection,
        natural_log: args.natural_log,
        config: pnev_core::SmtConfig {
            interval_end: args.interval,
        },
    };
    let out = match run(&fx, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    print!("{}", out.text);
    let writes = [(&args.csv, out.csv()), (&args.report, out.jsonl())];
    for (path, body) in writes {
        if let Some(p) = path {
            if let Err(e) = fs::write(p, body) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::from(out.exit_code as u8)
}
