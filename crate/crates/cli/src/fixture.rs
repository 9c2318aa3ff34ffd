//! JSON fixtures: a curve, named divisors and the checks to run on them.

use std::fs;
use std::path::Path;

use pnev_core::literal::series_to_string;
use pnev_core::{Hypersurface, Prime, ProjPoint, ProjectiveCurve, Rational};
use serde::{Deserialize, Serialize};

use crate::FixtureError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub prime: u64,
    pub ambient_dim: usize,
    pub curve: Vec<String>,
    #[serde(default)]
    pub divisors: Vec<DivisorSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub name: String,
    pub poly: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
}

/// Properties a fixture may assert. They are re-verified before any check runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Smooth,
    Transversal,
    GeneralPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Fmt,
    Lemma1,
    Ru,
    Levin,
    LineConic,
    LineCurve,
    P1Points,
    NHypersurfaces,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::Fmt,
        CheckId::Lemma1,
        CheckId::Ru,
        CheckId::Levin,
        CheckId::LineConic,
        CheckId::LineCurve,
        CheckId::P1Points,
        CheckId::NHypersurfaces,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Fmt => "fmt",
            CheckId::Lemma1 => "lemma1",
            CheckId::Ru => "ru",
            CheckId::Levin => "levin",
            CheckId::LineConic => "line_conic",
            CheckId::LineCurve => "line_curve",
            CheckId::P1Points => "p1_points",
            CheckId::NHypersurfaces => "n_hypersurfaces",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Refusal,
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Refusal => "refusal",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

/// Expected outcome of a check. Any mismatch is reported as a violation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs_slope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_slope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical_constant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub id: CheckId,
    /// Divisor names in the order the check consumes them; all divisors when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<String>>,
    /// Points for `p1_points`, as `a:b` or `[a:b]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    /// Right end of the interval for empirical constants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

/// A validated fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub prime: Prime,
    pub curve: ProjectiveCurve,
    pub divisors: Vec<Hypersurface>,
    pub claims: Vec<Vec<Claim>>,
    pub checks: Vec<CheckSpec>,
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| format!("`{s}` is not a rational literal"))
}

impl Fixture {
    pub fn from_file(file: FixtureFile) -> Result<Self, FixtureError> {
        let sem = FixtureError::Semantic;
        let prime = Prime::new(file.prime).map_err(|e| sem(e.to_string()))?;
        if file.curve.len() != file.ambient_dim + 1 {
            return Err(sem(format!(
                "curve has {} components, P^{} needs {}",
                file.curve.len(),
                file.ambient_dim,
                file.ambient_dim + 1
            )));
        }
        let curve = ProjectiveCurve::parse(&file.curve, prime).map_err(|e| sem(format!("curve: {e}")))?;
        let mut divisors = Vec::new();
        let mut claims = Vec::new();
        for d in &file.divisors {
            if divisors.iter().any(|h: &Hypersurface| h.name() == d.name) {
                return Err(sem(format!("duplicate divisor name `{}`", d.name)));
            }
            let h = Hypersurface::parse(&d.name, &d.poly, file.ambient_dim)
                .map_err(|e| sem(format!("divisor {}: {e}", d.name)))?;
            divisors.push(h);
            claims.push(d.claims.clone());
        }
        for c in &file.checks {
            for name in c.divisors.iter().flatten() {
                if !divisors.iter().any(|h| h.name() == name) {
                    return Err(sem(format!("check {}: unknown divisor `{name}`", c.id.as_str())));
                }
            }
            for p in c.points.iter().flatten() {
                ProjPoint::parse(p).map_err(|e| sem(format!("check {}: point `{p}`: {e}", c.id.as_str())))?;
            }
            let rationals = c.r.iter().chain(c.expect.iter().flat_map(|e| {
                [&e.lhs_slope, &e.rhs_slope, &e.empirical_constant].into_iter().flatten()
            }));
            for s in rationals {
                parse_rational(s).map_err(|e| sem(format!("check {}: {e}", c.id.as_str())))?;
            }
        }
        Ok(Fixture {
            prime,
            curve,
            divisors,
            claims,
            checks: file.checks,
        })
    }

    pub fn parse_str(src: &str) -> Result<Self, FixtureError> {
        let file: FixtureFile = serde_json::from_str(src).map_err(|e| FixtureError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_file(file)
    }

    pub fn ambient_dim(&self) -> usize {
        self.curve.ambient_dim()
    }

    /// Canonical file form: literals are re-rendered from the parsed values.
    pub fn to_file(&self) -> FixtureFile {
        FixtureFile {
            prime: self.prime.get(),
            ambient_dim: self.ambient_dim(),
            curve: self
                .curve
                .components()
                .iter()
                .map(|c| series_to_string(c.coeffs()))
                .collect(),
            divisors: self
                .divisors
                .iter()
                .zip(&self.claims)
                .map(|(d, c)| DivisorSpec {
                    name: d.name().to_string(),
                    poly: d.poly().to_string(),
                    claims: c.clone(),
                })
                .collect(),
            checks: self.checks.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("fixture serializes");
        s.push('\n');
        s
    }

    pub fn divisor(&self, name: &str) -> Option<&Hypersurface> {
        self.divisors.iter().find(|d| d.name() == name)
    }
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<Fixture, FixtureError> {
    let path = path.as_ref();
    let src = fs::read_to_string(path).map_err(|e| FixtureError::Io(format!("{}: {e}", path.display())))?;
    Fixture::parse_str(&src)
}
