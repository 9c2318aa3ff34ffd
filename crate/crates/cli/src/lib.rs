//! Fixture-driven front end: load a curve and its divisors, tabulate the
//! Nevanlinna functions and run second-main-theorem checks.

pub mod analyze;
pub mod checks;
pub mod fixture;

use std::fmt::Write as _;

use pnev_core::{Rational, SmtConfig};
use thiserror::Error;

pub use analyze::{run_analyze, Table};
pub use checks::{combine_exit_codes, run_check, verify_claims, CheckRecord};
pub use fixture::{load_fixture, CheckId, CheckSpec, Fixture, FixtureFile};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("{0}")]
    Io(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Usage(String),
}

/// Exact rendering: `num/den`, or `num` when the denominator is 1.
pub fn render(q: &Rational) -> String {
    q.to_string()
}

/// Which checks to run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Selection {
    /// Table only.
    #[default]
    None,
    /// Every check declared by the fixture.
    All,
    /// Declared checks with these ids; ids the fixture does not declare run on all divisors.
    Ids(Vec<CheckId>),
}

pub fn selected_checks(fx: &Fixture, sel: &Selection) -> Vec<CheckSpec> {
    match sel {
        Selection::None => Vec::new(),
        Selection::All => fx.checks.clone(),
        Selection::Ids(ids) => {
            let mut out = Vec::new();
            for &id in ids {
                let declared: Vec<CheckSpec> = fx.checks.iter().filter(|c| c.id == id).cloned().collect();
                if declared.is_empty() {
                    out.push(CheckSpec {
                        id,
                        divisors: None,
                        points: None,
                        r: None,
                        expect: None,
                    });
                } else {
                    out.extend(declared);
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub rho_min: Rational,
    pub rho_max: Rational,
    pub step: Rational,
    pub selection: Selection,
    /// Multiply displayed values by `ln p` (human table only).
    pub natural_log: bool,
    pub config: SmtConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            rho_min: pnev_core::int(-8),
            rho_max: pnev_core::int(32),
            step: pnev_core::int(1),
            selection: Selection::None,
            natural_log: false,
            config: SmtConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: Table,
    pub records: Vec<CheckRecord>,
    /// Human-readable text for standard output.
    pub text: String,
    pub exit_code: i32,
}

impl RunOutput {
    pub fn csv(&self) -> String {
        self.table.to_csv()
    }

    pub fn jsonl(&self) -> String {
        self.records.iter().map(|r| r.to_json_line() + "\n").collect()
    }
}

pub fn run(fx: &Fixture, opts: &RunOptions) -> Result<RunOutput, FixtureError> {
    let table = run_analyze(fx, &opts.rho_min, &opts.rho_max, &opts.step)?;
    let scale = opts.natural_log.then(|| fx.prime.ln());
    let mut text = table.to_text(scale);

    let specs = selected_checks(fx, &opts.selection);
    if !specs.is_empty() {
        verify_claims(fx)?;
    }
    let mut records = Vec::new();
    let mut codes = Vec::new();
    for spec in &specs {
        let rec = run_check(fx, spec, &opts.config);
        codes.push(rec.effective_exit_code(spec));
        records.push(rec);
    }
    if !records.is_empty() {
        text.push('\n');
        text.push_str(&summary(&records));
    }
    Ok(RunOutput {
        table,
        records,
        text,
        exit_code: combine_exit_codes(codes),
    })
}

fn summary(records: &[CheckRecord]) -> String {
    let dash = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
    let mut rows = vec![[
        "check".to_string(),
        "status".into(),
        "lhs".into(),
        "rhs".into(),
        "coeff".into(),
        "constant".into(),
    ]];
    for r in records {
        rows.push([
            r.check.clone(),
            r.status.as_str().into(),
            dash(&r.lhs_slope),
            dash(&r.rhs_slope),
            dash(&r.rhs_coefficient),
            dash(&r.empirical_constant),
        ]);
    }
    let widths: Vec<usize> = (0..6).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    for r in records {
        for a in r.hypothesis_audit.iter().filter(|a| !a.passed) {
            let _ = writeln!(
                out,
                "{}: failed {}{}",
                r.check,
                a.name,
                a.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            );
        }
        if let Some(b) = &r.degenerate_branch {
            let _ = writeln!(out, "{}: degenerate branch: {b}", r.check);
        }
        if let Some(m) = &r.expectation_mismatch {
            let _ = writeln!(out, "{}: expectation mismatch: {m}", r.check);
        }
        if r.status == fixture::Status::Error {
            for n in &r.notes {
                let _ = writeln!(out, "{}: error: {n}", r.check);
            }
        }
    }
    out
}
