//! Tabulation of `T_f`, `m_f(·, D)` and `N_f(·, D)` on a grid of log-radii.

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use pnev_core::nevanlinna::{counting, order_function, proximity};
use pnev_core::{PLFunction, Rational};

use crate::fixture::Fixture;
use crate::{render, FixtureError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<(Rational, Vec<Rational>)>,
    /// Divisors containing the image of `f`, with the reason; they get no columns.
    pub skipped: Vec<(String, String)>,
}

/// Rows at `lo, lo + step, …, ≤ hi` plus every breakpoint inside `[lo, hi]`.
pub fn run_analyze(fx: &Fixture, lo: &Rational, hi: &Rational, step: &Rational) -> Result<Table, FixtureError> {
    if !step.is_positive() {
        return Err(FixtureError::Usage(format!("step must be positive, got {step}")));
    }
    if lo > hi {
        return Err(FixtureError::Usage(format!("rho-min {lo} exceeds rho-max {hi}")));
    }
    let core = |e: pnev_core::Error| FixtureError::Semantic(e.to_string());
    let mut columns = vec!["T".to_string()];
    let mut fns: Vec<PLFunction> = vec![order_function(&fx.curve).map_err(core)?];
    let mut skipped = Vec::new();
    for d in &fx.divisors {
        let m = match proximity(&fx.curve, d) {
            Ok(m) => m,
            Err(e @ pnev_core::Error::Containment { .. }) => {
                skipped.push((d.name().to_string(), e.to_string()));
                continue;
            }
            Err(e) => return Err(core(e)),
        };
        let n = counting(&fx.curve, d).map_err(core)?;
        columns.push(format!("{}.m", d.name()));
        columns.push(format!("{}.N", d.name()));
        fns.push(m);
        fns.push(n);
    }

    let mut grid = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        grid.push(x.clone());
        x += step;
    }
    for f in &fns {
        grid.extend(f.breakpoints_in(lo, hi));
    }
    grid.sort();
    grid.dedup();

    let rows = grid
        .into_iter()
        .map(|rho| {
            let vals = fns.iter().map(|f| f.eval(&rho)).collect();
            (rho, vals)
        })
        .collect();
    Ok(Table { columns, rows, skipped })
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (rho, vals) in &self.rows {
            out.push_str(&render(rho));
            for v in vals {
                out.push(',');
                out.push_str(&render(v));
            }
            out.push('\n');
        }
        out
    }

    /// Aligned text. With `scale`, values are multiplied by it and shown as decimals.
    pub fn to_text(&self, scale: Option<f64>) -> String {
        let cell = |v: &Rational| match scale {
            None => render(v),
            Some(s) => {
                let x = v.to_f64().unwrap_or(f64::NAN) * s;
                if x.is_zero() {
                    "0".into()
                } else {
                    format!("{x:.6}")
                }
            }
        };
        let mut header = vec!["rho".to_string()];
        header.extend(self.columns.iter().cloned());
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|(rho, vals)| std::iter::once(render(rho)).chain(vals.iter().map(cell)).collect())
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&body) {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        for (name, why) in &self.skipped {
            let _ = writeln!(out, "{name}: no columns, {why}");
        }
        out
    }
}
