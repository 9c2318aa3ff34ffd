use std::path::{Path, PathBuf};
use std::process::Command;

use pnev_cli::fixture::Status;
use pnev_cli::{run, run_analyze, Fixture, FixtureError, RunOptions, Selection};
use pnev_core::{int, ratio, Rational};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn pnev(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pnev")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const MINIMAL: &str = r#"{"prime": 2, "ambient_dim": 1, "curve": ["1", "z"], "divisors": [{"name": "D", "poly": "x1"}]}"#;

#[test]
fn minimal_fixture_parses() {
    let fx = Fixture::parse_str(MINIMAL).unwrap();
    assert_eq!(fx.prime.get(), 2);
    assert_eq!(fx.divisors.len(), 1);
    assert!(fx.checks.is_empty());
}

#[test]
fn rejections() {
    let nonhom = MINIMAL.replace("\"x1\"", "\"x1 + x0^2\"");
    let err = Fixture::parse_str(&nonhom).unwrap_err().to_string();
    assert!(err.contains("x0^2"), "{err}");

    let four = MINIMAL.replace("\"prime\": 2", "\"prime\": 4");
    assert!(Fixture::parse_str(&four).unwrap_err().to_string().contains("not prime"));

    let unknown = MINIMAL.replace("\"prime\": 2", "\"prime\": 2, \"colour\": 1");
    assert!(matches!(Fixture::parse_str(&unknown), Err(FixtureError::Syntax { .. })));

    let broken = "{\n  \"prime\": 2,\n  \"curve\": [\"1\" \"z\"]\n}";
    match Fixture::parse_str(broken) {
        Err(FixtureError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }

    let arity = MINIMAL.replace("[\"1\", \"z\"]", "[\"1\", \"z\", \"z^2\"]");
    assert!(Fixture::parse_str(&arity).is_err());
}

#[test]
fn analyze_small_grid() {
    let fx = Fixture::parse_str(MINIMAL).unwrap();
    let t = run_analyze(&fx, &int(-1), &int(1), &int(1)).unwrap();
    assert_eq!(t.columns, vec!["T", "D.m", "D.N"]);
    let col = |j: usize| t.rows.iter().map(|(_, v)| v[j].clone()).collect::<Vec<Rational>>();
    assert_eq!(col(0), vec![int(0), int(0), int(1)]);
    assert_eq!(col(1), vec![int(1), int(0), int(0)]);
    assert_eq!(col(2), vec![int(-1), int(0), int(1)]);
}

#[test]
fn analyze_without_divisors_and_with_breakpoints() {
    let fx = Fixture::parse_str(r#"{"prime": 3, "ambient_dim": 1, "curve": ["1", "z"]}"#).unwrap();
    let t = run_analyze(&fx, &int(-2), &int(2), &int(4)).unwrap();
    assert_eq!(t.columns, vec!["T"]);
    let rhos: Vec<Rational> = t.rows.iter().map(|(r, _)| r.clone()).collect();
    assert_eq!(rhos, vec![int(-2), int(0), int(2)]);
    assert!(run_analyze(&fx, &int(0), &int(1), &int(0)).is_err());

    let fx = Fixture::parse_str(r#"{"prime": 2, "ambient_dim": 1, "curve": ["1", "1/2*z^3"]}"#).unwrap();
    let t = run_analyze(&fx, &int(-1), &int(1), &int(2)).unwrap();
    assert!(t.rows.iter().any(|(r, _)| *r == ratio(-1, 3)));
}

#[test]
fn csv_matches_golden_files() {
    for (name, args) in [
        ("line_conic", vec!["--rho-min", "-2", "--rho-max", "3"]),
        ("cubic", vec!["--rho-min", "-1", "--rho-max", "2", "--step", "1/2"]),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("out.csv");
        let fixture = root().join(format!("fixtures/{name}.json"));
        let mut full = vec![fixture.to_str().unwrap(), "--csv", csv.to_str().unwrap()];
        full.extend(args);
        let (code, _, err) = pnev(&full);
        assert_eq!(code, 0, "{err}");
        let golden = std::fs::read_to_string(root().join(format!("crates/cli/tests/golden/{name}.csv"))).unwrap();
        assert_eq!(std::fs::read_to_string(csv).unwrap(), golden, "{name}");
    }
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = |checks: &str| {
        format!(
            r#"{{"prime": 2, "ambient_dim": 2, "curve": ["1", "z", "z^3"],
                "divisors": [{{"name": "L", "poly": "x1"}}, {{"name": "C", "poly": "x1^2 - x0*x2"}}],
                "checks": [{checks}]}}"#
        )
    };
    let pass = write(dir.path(), "pass.json", &fixture(r#"{"id": "line_conic"}, {"id": "fmt"}"#));
    assert_eq!(pnev(&[&pass, "--all-checks"]).0, 0);

    let levin = write(dir.path(), "levin.json", &fixture(r#"{"id": "levin"}"#));
    assert_eq!(pnev(&[&levin, "--all-checks"]).0, 2);

    let corrupted = write(
        dir.path(),
        "corrupt.json",
        &fixture(r#"{"id": "line_conic", "expect": {"empirical_constant": "1/7"}}"#),
    );
    let (code, out, _) = pnev(&[&corrupted, "--all-checks"]);
    assert_eq!(code, 3);
    assert!(out.contains("expectation mismatch"));

    let both = write(
        dir.path(),
        "both.json",
        &fixture(r#"{"id": "levin"}, {"id": "line_conic", "expect": {"status": "refusal"}}"#),
    );
    assert_eq!(pnev(&[&both, "--all-checks"]).0, 3);

    let missing = dir.path().join("missing.json");
    assert_eq!(pnev(&[missing.to_str().unwrap()]).0, 1);

    let claim = write(
        dir.path(),
        "claim.json",
        r#"{"prime": 2, "ambient_dim": 2, "curve": ["1", "z", "z^3"],
            "divisors": [{"name": "P", "poly": "x0*x1", "claims": ["smooth"]}],
            "checks": [{"id": "fmt"}]}"#,
    );
    let (code, _, err) = pnev(&[&claim, "--all-checks"]);
    assert_eq!(code, 1);
    assert!(err.contains("smooth"), "{err}");

    // A check that is not declared runs on every divisor.
    assert_eq!(pnev(&[&pass, "--check", "levin"]).0, 2);
    assert_eq!(pnev(&[&pass, "--check", "nope"]).0, 1);
}

#[test]
fn reports_are_json_lines_with_exact_rationals() {
    let fx = pnev_cli::load_fixture(root().join("fixtures/line_conic.json")).unwrap();
    let out = run(
        &fx,
        &RunOptions {
            selection: Selection::All,
            ..RunOptions::default()
        },
    )
    .unwrap();
    assert_eq!(out.exit_code, 0);
    let lines: Vec<serde_json::Value> = out
        .jsonl()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), fx.checks.len());
    let lc = lines.iter().find(|l| l["theorem_id"] == "line_conic").unwrap();
    assert_eq!(lc["lhs_slope"], "7/2");
    assert_eq!(lc["rhs_slope"], "9/2");
    assert_eq!(lc["rhs_coefficient"], "3/2");
    assert_eq!(lc["satisfied"], true);
    assert_eq!(lc["interval"], serde_json::json!(["0", "32"]));
    assert!(lc["certificates"][0].as_str().unwrap().contains("x1"));
    for key in ["hypothesis_audit", "degenerate_branch", "empirical_constant"] {
        assert!(lc.get(key).is_some(), "{key}");
    }
    assert!(out.records.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn natural_log_only_changes_display() {
    let fx = Fixture::parse_str(MINIMAL).unwrap();
    let opts = RunOptions {
        rho_min: int(0),
        rho_max: int(2),
        ..RunOptions::default()
    };
    let plain = run(&fx, &opts).unwrap();
    let ln = run(&fx, &RunOptions { natural_log: true, ..opts }).unwrap();
    assert_eq!(plain.csv(), ln.csv());
    assert!(ln.text.contains("0.693147"), "{}", ln.text);
}
