//! Running the checks requested by a fixture.

use pnev_core::geometry::{self, Hypersurface};
use pnev_core::nevanlinna::fmt_verify;
use pnev_core::smt::{self, HypothesisAudit, SmtReport};
use pnev_core::{Error, ProjPoint, Rational, SmtConfig};
use serde::Serialize;

use crate::fixture::{parse_rational, CheckId, CheckSpec, Claim, Fixture, Status};
use crate::{render, FixtureError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One machine-readable report row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub theorem_id: String,
    pub status: Status,
    pub lhs_slope: Option<String>,
    pub rhs_slope: Option<String>,
    pub rhs_coefficient: Option<String>,
    pub satisfied: Option<bool>,
    pub empirical_constant: Option<String>,
    pub interval: Option<[String; 2]>,
    pub hypothesis_audit: Vec<AuditRecord>,
    pub degenerate_branch: Option<String>,
    pub certificates: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sub_reports: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Set when the outcome disagrees with the fixture's `expect` block.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation_mismatch: Option<String>,
}

impl CheckRecord {
    fn bare(check: CheckId, theorem_id: &str, status: Status) -> Self {
        CheckRecord {
            check: check.as_str().into(),
            theorem_id: theorem_id.into(),
            status,
            lhs_slope: None,
            rhs_slope: None,
            rhs_coefficient: None,
            satisfied: None,
            empirical_constant: None,
            interval: None,
            hypothesis_audit: Vec::new(),
            degenerate_branch: None,
            certificates: Vec::new(),
            sub_reports: Vec::new(),
            notes: Vec::new(),
            expectation_mismatch: None,
        }
    }

    fn error(check: CheckId, message: String) -> Self {
        let mut r = Self::bare(check, check.as_str(), Status::Error);
        r.notes.push(message);
        r
    }

    /// Contribution to the process exit status.
    pub fn exit_code(&self) -> i32 {
        if self.expectation_mismatch.is_some() {
            return 3;
        }
        match self.status {
            Status::Pass => 0,
            Status::Refusal => 2,
            Status::Violation => 3,
            Status::Error => 1,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn audit_records(a: &[HypothesisAudit]) -> Vec<AuditRecord> {
    a.iter()
        .map(|h| AuditRecord {
            name: h.name.clone(),
            passed: h.passed,
            detail: h.detail.clone(),
        })
        .collect()
}

fn from_report(check: CheckId, r: &SmtReport) -> CheckRecord {
    let status = match r.satisfied() {
        None => Status::Refusal,
        Some(true) if r.sub_reports.iter().all(|s| s.satisfied() == Some(true)) => Status::Pass,
        Some(true) if r.sub_reports.iter().any(|s| s.satisfied() == Some(false)) => Status::Violation,
        Some(true) => Status::Refusal,
        Some(false) => Status::Violation,
    };
    let mut rec = CheckRecord::bare(check, r.theorem.as_str(), status);
    if let Some(v) = &r.verdict {
        rec.lhs_slope = Some(render(&v.lhs_slope));
        rec.rhs_slope = Some(render(&v.rhs_slope));
        rec.rhs_coefficient = v.rhs_coefficient.as_ref().map(render);
        rec.satisfied = Some(v.satisfied);
        rec.empirical_constant = Some(render(&v.empirical_constant));
        rec.interval = Some([render(&v.interval.0), render(&v.interval.1)]);
    }
    rec.hypothesis_audit = audit_records(&r.audit);
    rec.degenerate_branch = r.degenerate_branch.clone();
    rec.certificates = r.certificates.iter().map(|c| c.to_string()).collect();
    rec.sub_reports = r.sub_reports.iter().map(|s| from_report(check, s)).collect();
    rec.notes = r.notes.clone();
    rec
}

/// Re-verify every claimed property. A false claim is a fixture error.
pub fn verify_claims(fx: &Fixture) -> Result<(), FixtureError> {
    let core = |e: Error| FixtureError::Semantic(e.to_string());
    let with = |claim: Claim| -> Vec<Hypersurface> {
        fx.divisors
            .iter()
            .zip(&fx.claims)
            .filter(|(_, c)| c.contains(&claim))
            .map(|(d, _)| d.clone())
            .collect()
    };
    for d in with(Claim::Smooth) {
        if !geometry::is_smooth(&d).map_err(core)? {
            return Err(FixtureError::Semantic(format!("claim `smooth` is false for {}", d.name())));
        }
    }
    let transversal = with(Claim::Transversal);
    if !transversal.is_empty() && !geometry::intersects_transversally(&transversal).map_err(core)? {
        return Err(FixtureError::Semantic(format!(
            "claim `transversal` is false for {}",
            names(&transversal)
        )));
    }
    let gp = with(Claim::GeneralPosition);
    if !gp.is_empty() && !geometry::general_position_check(&gp).map_err(core)?.holds {
        return Err(FixtureError::Semantic(format!(
            "claim `general_position` is false for {}",
            names(&gp)
        )));
    }
    Ok(())
}

fn names(ds: &[Hypersurface]) -> String {
    ds.iter().map(Hypersurface::name).collect::<Vec<_>>().join(", ")
}

fn selected(fx: &Fixture, spec: &CheckSpec) -> Vec<Hypersurface> {
    match &spec.divisors {
        Some(names) => names.iter().filter_map(|n| fx.divisor(n).cloned()).collect(),
        None => fx.divisors.clone(),
    }
}

fn config(spec: &CheckSpec, default: &SmtConfig) -> SmtConfig {
    match spec.r.as_deref().map(parse_rational) {
        Some(Ok(r)) => SmtConfig { interval_end: r },
        _ => default.clone(),
    }
}

fn line_and_curve(id: CheckId, ds: &[Hypersurface]) -> Result<(&Hypersurface, &Hypersurface), Box<CheckRecord>> {
    match ds {
        [l, c] => Ok((l, c)),
        _ => Err(Box::new(CheckRecord::error(
            id,
            format!("needs exactly two divisors (line, curve), got {}", ds.len()),
        ))),
    }
}

fn fmt_record(fx: &Fixture, ds: &[Hypersurface]) -> CheckRecord {
    let mut rec = CheckRecord::bare(CheckId::Fmt, "fmt", Status::Pass);
    for d in ds {
        let name = format!("m + N - {}·T is the constant v_p(a_k) for {}", d.degree(), d.name());
        let (passed, detail) = match fmt_verify(&fx.curve, d) {
            Ok(c) => (true, Some(format!("constant {}", render(&c)))),
            Err(e @ Error::Containment { .. }) => {
                if rec.status == Status::Pass {
                    rec.status = Status::Refusal;
                }
                (false, Some(e.to_string()))
            }
            Err(e) => {
                rec.status = Status::Violation;
                (false, Some(e.to_string()))
            }
        };
        rec.hypothesis_audit.push(AuditRecord { name, passed, detail });
    }
    rec
}

fn lemma1_record(fx: &Fixture, ds: &[Hypersurface]) -> Result<CheckRecord, Error> {
    let r = smt::lemma1_check(&fx.curve, ds)?;
    let status = match r.passed {
        None => Status::Refusal,
        Some(true) => Status::Pass,
        Some(false) => Status::Violation,
    };
    let mut rec = CheckRecord::bare(CheckId::Lemma1, "lemma1", status);
    rec.hypothesis_audit = audit_records(&r.audit);
    rec.satisfied = r.passed;
    rec.notes.push(format!(
        "bounded proximity: {} of {} (need {})",
        r.bounded.len(),
        r.q,
        r.required.max(0)
    ));
    if !r.bounded.is_empty() {
        rec.notes.push(format!("bounded: {}", r.bounded.join(", ")));
    }
    Ok(rec)
}

/// Run one check. Failures of the core library become `error` records.
pub fn run_check(fx: &Fixture, spec: &CheckSpec, default: &SmtConfig) -> CheckRecord {
    let id = spec.id;
    let ds = selected(fx, spec);
    let cfg = config(spec, default);
    let f = &fx.curve;
    let result = match id {
        CheckId::Fmt => Ok(fmt_record(fx, &ds)),
        CheckId::Lemma1 => lemma1_record(fx, &ds),
        CheckId::Ru => smt::ru_smt_check(f, &ds, &cfg).map(|r| from_report(id, &r)),
        CheckId::Levin => smt::levin_smt_check(f, &ds, &cfg).map(|r| from_report(id, &r)),
        CheckId::NHypersurfaces => smt::n_hypersurfaces_check(f, &ds, &cfg).map(|r| from_report(id, &r)),
        CheckId::LineConic => match line_and_curve(id, &ds) {
            Ok((l, c)) => smt::line_conic_check(f, l, c, &cfg).map(|r| from_report(id, &r)),
            Err(rec) => return *rec,
        },
        CheckId::LineCurve => match line_and_curve(id, &ds) {
            Ok((l, c)) => smt::line_curve_check(f, l, c, &cfg).map(|r| from_report(id, &r)),
            Err(rec) => return *rec,
        },
        CheckId::P1Points => {
            let points: Vec<ProjPoint> = spec
                .points
                .iter()
                .flatten()
                .filter_map(|p| ProjPoint::parse(p).ok())
                .collect();
            smt::p1_points_check(f, &points, &cfg).map(|r| from_report(id, &r))
        }
    };
    let mut rec = result.unwrap_or_else(|e| CheckRecord::error(id, e.to_string()));
    if let Some(exp) = &spec.expect {
        rec.expectation_mismatch = expectation_mismatch(&rec, exp);
    }
    rec
}

fn expectation_mismatch(rec: &CheckRecord, exp: &crate::fixture::Expectation) -> Option<String> {
    let mut bad = Vec::new();
    if let Some(s) = exp.status {
        if s != rec.status {
            bad.push(format!("status {} expected, got {}", s.as_str(), rec.status.as_str()));
        }
    }
    let fields = [
        ("lhs_slope", &exp.lhs_slope, &rec.lhs_slope),
        ("rhs_slope", &exp.rhs_slope, &rec.rhs_slope),
        ("empirical_constant", &exp.empirical_constant, &rec.empirical_constant),
    ];
    for (name, want, got) in fields {
        let Some(want) = want else { continue };
        let want_q: Option<Rational> = parse_rational(want).ok();
        let got_q: Option<Rational> = got.as_deref().and_then(|g| parse_rational(g).ok());
        if want_q.is_none() || want_q != got_q {
            bad.push(format!("{name} {want} expected, got {}", got.as_deref().unwrap_or("none")));
        }
    }
    if bad.is_empty() {
        return None;
    }
    Some(bad.join("; "))
}

impl CheckRecord {
    /// Status after taking a matching `expect` block into account.
    pub fn effective_exit_code(&self, spec: &CheckSpec) -> i32 {
        match (&self.expectation_mismatch, spec.expect.as_ref().and_then(|e| e.status)) {
            (Some(_), _) => 3,
            (None, Some(_)) => 0,
            (None, None) => self.exit_code(),
        }
    }
}

/// Combine per-check codes: violations dominate, then errors, then refusals.
pub fn combine_exit_codes(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes
        .into_iter()
        .max_by_key(|c| match c {
            3 => 3,
            1 => 2,
            2 => 1,
            _ => 0,
        })
        .unwrap_or(0)
}
