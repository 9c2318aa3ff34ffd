//! Verdict engines for second-main-theorem type inequalities.
//!
//! Each check first audits the hypotheses of its theorem. Any failed
//! hypothesis turns the report into a refusal: no verdict is produced, so a
//! badly chosen fixture can never be mistaken for a counterexample. When
//! every hypothesis holds, the inequality `LHS ≤ c·T_f + O(1)` is decided by
//! comparing final slopes, which is exactly the asymptotic content of the
//! `O(1)`. The supremum of `LHS - c·T_f` on `[0, R]` is reported alongside as
//! an empirical constant.

use std::fmt;

use num_traits::{One, Zero};

use crate::geometry::{
    self, intersection_points, noether_decompose, Hypersurface, NoetherDecomposition, ProjPoint,
};
use crate::linalg;
use crate::nevanlinna::{counting, order_function, proximity, ProjectiveCurve};
use crate::plfun::PLFunction;
use crate::poly::Poly;
use crate::{int, ratio, Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Ru,
    Levin,
    LineConic,
    LineCurve,
    NHypersurfaces,
    P1Points,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Ru,
        TheoremId::Levin,
        TheoremId::LineConic,
        TheoremId::LineCurve,
        TheoremId::NHypersurfaces,
        TheoremId::P1Points,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Ru => "ru",
            TheoremId::Levin => "levin",
            TheoremId::LineConic => "line_conic",
            TheoremId::LineCurve => "line_curve_d",
            TheoremId::NHypersurfaces => "n_hypersurfaces",
            TheoremId::P1Points => "p1_points",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisAudit {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Outcome of the slope comparison once every hypothesis has passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeVerdict {
    pub lhs_slope: Rational,
    /// `c` in `LHS ≤ c·T_f + O(1)`; `None` when the right side is not a multiple of `T_f`.
    pub rhs_coefficient: Option<Rational>,
    pub rhs_slope: Rational,
    pub satisfied: bool,
    /// `sup (LHS - RHS)` over `interval`.
    pub empirical_constant: Rational,
    pub interval: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtReport {
    pub theorem: TheoremId,
    pub audit: Vec<HypothesisAudit>,
    /// `None` for a refusal.
    pub verdict: Option<SlopeVerdict>,
    pub degenerate_branch: Option<String>,
    pub certificates: Vec<NoetherDecomposition>,
    pub sub_reports: Vec<SmtReport>,
    pub notes: Vec<String>,
}

impl SmtReport {
    pub fn is_refusal(&self) -> bool {
        self.verdict.is_none()
    }

    /// `Some(satisfied)` for a verdict, `None` for a refusal.
    pub fn satisfied(&self) -> Option<bool> {
        self.verdict.as_ref().map(|v| v.satisfied)
    }

    pub fn failed_hypotheses(&self) -> Vec<&HypothesisAudit> {
        self.audit.iter().filter(|a| !a.passed).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtConfig {
    /// Right end `R` of the interval `[0, R]` for empirical constants.
    pub interval_end: Rational,
}

impl Default for SmtConfig {
    fn default() -> Self {
        SmtConfig {
            interval_end: int(32),
        }
    }
}

impl SmtConfig {
    fn interval(&self) -> (Rational, Rational) {
        (Rational::zero(), self.interval_end.clone())
    }
}

#[derive(Default)]
struct Audit(Vec<HypothesisAudit>);

impl Audit {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.0.push(HypothesisAudit {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    fn skipped(&mut self, name: impl Into<String>, reason: &str) {
        self.check(name, false, Some(format!("not evaluated: {reason}")));
    }
}

fn refusal(theorem: TheoremId, audit: Audit) -> SmtReport {
    SmtReport {
        theorem,
        audit: audit.0,
        verdict: None,
        degenerate_branch: None,
        certificates: Vec::new(),
        sub_reports: Vec::new(),
        notes: Vec::new(),
    }
}

fn audit_curve(audit: &mut Audit, f: &ProjectiveCurve, n: usize, nonconstant: bool) -> bool {
    let mut ok = audit.check(
        format!("curve maps to P^{n}"),
        f.ambient_dim() == n,
        (f.ambient_dim() != n).then(|| format!("curve has {} components", f.ambient_dim() + 1)),
    );
    ok &= audit.check(
        "components are exact polynomials",
        f.is_exact(),
        (!f.is_exact()).then(|| "slopes of truncated series are not certified as ρ → ∞".into()),
    );
    if nonconstant {
        ok &= audit.check("f is nonconstant", f.is_nonconstant(), None);
    }
    ok
}

fn audit_ambient(audit: &mut Audit, divisors: &[Hypersurface], n: usize) -> bool {
    let bad: Vec<&str> = divisors
        .iter()
        .filter(|d| d.ambient_dim() != n)
        .map(|d| d.name())
        .collect();
    audit.check(
        format!("divisors lie in P^{n}"),
        bad.is_empty(),
        (!bad.is_empty()).then(|| format!("wrong ambient: {}", bad.join(", "))),
    )
}

fn audit_not_contained(audit: &mut Audit, f: &ProjectiveCurve, d: &Hypersurface) -> Result<bool> {
    let inside = f.lies_in(d)?;
    Ok(audit.check(
        format!("image of f not in {}", d.name()),
        !inside,
        inside.then(|| format!("{} vanishes identically on f", d.poly())),
    ))
}

fn audit_general_position(audit: &mut Audit, divisors: &[Hypersurface]) -> Result<bool> {
    let gp = geometry::general_position_check(divisors)?;
    let detail = gp.violating_subset.as_ref().map(|s| {
        let names: Vec<&str> = s.iter().map(|&i| divisors[i - 1].name()).collect();
        match &gp.witness {
            Some(w) => format!("{{{}}} meet at {w}", names.join(", ")),
            None => format!("{{{}}} meet in too large a set", names.join(", ")),
        }
    });
    Ok(audit.check("general position", gp.holds, detail))
}

/// Slope verdict for `Σ w_i·m_i ≤ c·T`.
fn slope_verdict(
    lhs: &[(PLFunction, Rational)],
    t: &PLFunction,
    coefficient: Rational,
    cfg: &SmtConfig,
) -> Result<SlopeVerdict> {
    let lhs_fn = lhs
        .iter()
        .fold(PLFunction::constant(Rational::zero()), |acc, (m, w)| {
            PLFunction::combine(&acc, m, &Rational::one(), w)
        });
    let rhs_fn = t.scale(&coefficient);
    compare(&lhs_fn, &rhs_fn, Some(coefficient), cfg)
}

fn compare(lhs: &PLFunction, rhs: &PLFunction, coefficient: Option<Rational>, cfg: &SmtConfig) -> Result<SlopeVerdict> {
    let (lo, hi) = cfg.interval();
    let lhs_slope = lhs.final_slope();
    let rhs_slope = rhs.final_slope();
    Ok(SlopeVerdict {
        satisfied: lhs_slope <= rhs_slope,
        empirical_constant: PLFunction::sup_gap(lhs, rhs, &lo, &hi)?,
        interval: (lo, hi),
        lhs_slope,
        rhs_coefficient: coefficient,
        rhs_slope,
    })
}

fn weighted_proximities(f: &ProjectiveCurve, divisors: &[Hypersurface]) -> Result<Vec<(PLFunction, Rational)>> {
    divisors
        .iter()
        .map(|d| Ok((proximity(f, d)?, ratio(1, d.degree() as i64))))
        .collect()
}

fn common_n(f: &ProjectiveCurve, divisors: &[Hypersurface]) -> usize {
    divisors.first().map_or(f.ambient_dim(), Hypersurface::ambient_dim)
}

/// Result of the proximity-boundedness count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Report {
    pub q: usize,
    pub n: usize,
    /// Names of divisors whose proximity function has final slope 0.
    pub bounded: Vec<String>,
    /// `q - n`, possibly negative.
    pub required: i64,
    /// `None` for a refusal.
    pub passed: Option<bool>,
    pub audit: Vec<HypothesisAudit>,
}

/// At least `q - n` of the proximity functions stay bounded.
pub fn lemma1_check(f: &ProjectiveCurve, divisors: &[Hypersurface]) -> Result<Lemma1Report> {
    let n = common_n(f, divisors);
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, n, false);
    ok &= audit_ambient(&mut audit, divisors, n);
    if ok && !divisors.is_empty() {
        ok &= audit_general_position(&mut audit, divisors)?;
    }
    for d in divisors {
        ok &= audit_not_contained(&mut audit, f, d)?;
    }
    let required = divisors.len() as i64 - n as i64;
    let mut report = Lemma1Report {
        q: divisors.len(),
        n,
        bounded: Vec::new(),
        required,
        passed: None,
        audit: audit.0,
    };
    if !ok {
        return Ok(report);
    }
    for d in divisors {
        if proximity(f, d)?.final_slope().is_zero() {
            report.bounded.push(d.name().to_string());
        }
    }
    report.passed = Some(report.bounded.len() as i64 >= required);
    Ok(report)
}

/// `Σ m_i/d_i ≤ n·T + O(1)` for divisors in general position.
pub fn ru_smt_check(f: &ProjectiveCurve, divisors: &[Hypersurface], cfg: &SmtConfig) -> Result<SmtReport> {
    let n = common_n(f, divisors);
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, n, true);
    ok &= audit_ambient(&mut audit, divisors, n);
    ok &= audit.check("at least one divisor", !divisors.is_empty(), None);
    if ok {
        ok &= audit_general_position(&mut audit, divisors)?;
    }
    for d in divisors {
        ok &= audit_not_contained(&mut audit, f, d)?;
    }
    if !ok {
        return Ok(refusal(TheoremId::Ru, audit));
    }
    let verdict = slope_verdict(&weighted_proximities(f, divisors)?, &order_function(f)?, int(n as i64), cfg)?;
    Ok(SmtReport {
        verdict: Some(verdict),
        ..refusal(TheoremId::Ru, audit)
    })
}

fn subsets(q: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, q: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..q {
            cur.push(i);
            go(i + 1, q, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, q, k, &mut Vec::new(), &mut out);
    out
}

/// `Σ m_i/d_i ≤ (n - 1 + max 1/d_i)·T + O(1)` for smooth hypersurfaces of
/// degree ≥ 2 in general position with transversal intersections.
///
/// Transversality is audited on every subset of `n` divisors, where the
/// intersection is finite.
pub fn levin_smt_check(f: &ProjectiveCurve, divisors: &[Hypersurface], cfg: &SmtConfig) -> Result<SmtReport> {
    let n = common_n(f, divisors);
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, n, true);
    ok &= audit_ambient(&mut audit, divisors, n);
    ok &= audit.check("at least one divisor", !divisors.is_empty(), None);
    for d in divisors {
        ok &= audit.check(
            format!("deg {} ≥ 2", d.name()),
            d.degree() >= 2,
            (d.degree() < 2).then(|| format!("{} has degree {}", d.name(), d.degree())),
        );
    }
    if ok {
        for d in divisors {
            ok &= audit.check(format!("{} is smooth", d.name()), geometry::is_smooth(d)?, None);
        }
        ok &= audit_general_position(&mut audit, divisors)?;
    }
    if ok {
        for subset in subsets(divisors.len(), n.min(divisors.len())) {
            let ds: Vec<Hypersurface> = subset.iter().map(|&i| divisors[i].clone()).collect();
            let names: Vec<&str> = ds.iter().map(Hypersurface::name).collect();
            ok &= audit.check(
                format!("{} intersect transversally", names.join(", ")),
                geometry::intersects_transversally(&ds)?,
                None,
            );
        }
    } else {
        audit.skipped("transversal intersections", "earlier hypotheses failed");
    }
    for d in divisors {
        ok &= audit_not_contained(&mut audit, f, d)?;
    }
    if !ok {
        return Ok(refusal(TheoremId::Levin, audit));
    }
    let max_inv = divisors
        .iter()
        .map(|d| ratio(1, d.degree() as i64))
        .max()
        .expect("nonempty");
    let coefficient = int(n as i64 - 1) + max_inv;
    let verdict = slope_verdict(&weighted_proximities(f, divisors)?, &order_function(f)?, coefficient, cfg)?;
    Ok(SmtReport {
        verdict: Some(verdict),
        ..refusal(TheoremId::Levin, audit)
    })
}

/// Intersection points of `L` and `C`, audited for transversality.
fn transversal_points(audit: &mut Audit, divisors: &[Hypersurface], expected: u32) -> Result<Option<Vec<ProjPoint>>> {
    let names: Vec<&str> = divisors.iter().map(Hypersurface::name).collect();
    let label = format!("{} intersect transversally", names.join(", "));
    let forms: Vec<Poly> = divisors.iter().map(|d| d.poly().clone()).collect();
    let pts = match intersection_points(&forms) {
        Ok(p) => p,
        Err(Error::NotZeroDimensional) => {
            audit.check(label, false, Some("intersection is not finite".into()));
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let mut bad = Vec::new();
    for (p, mult) in &pts {
        if *mult > 1 || !geometry::transversality_check(divisors, p)? {
            bad.push(p.to_string());
        }
    }
    let count = pts.len() as u32;
    let detail = if !bad.is_empty() {
        Some(format!("tangency at {}", bad.join(", ")))
    } else if count != expected {
        Some(format!("{count} points found, {expected} expected"))
    } else {
        None
    };
    let passed = audit.check(label, detail.is_none(), detail);
    Ok(passed.then(|| pts.into_iter().map(|(p, _)| p).collect()))
}

fn tangents(c: &Hypersurface, points: &[ProjPoint]) -> Result<Vec<Hypersurface>> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| Ok(geometry::tangent_hyperplane(c, p)?.renamed(format!("H{}", i + 1))))
        .collect()
}

fn audit_tangent_containment(audit: &mut Audit, f: &ProjectiveCurve, hs: &[Hypersurface], points: &[ProjPoint], owner: &str) -> Result<bool> {
    let mut ok = true;
    for (h, p) in hs.iter().zip(points) {
        let inside = f.lies_in(h)?;
        ok &= audit.check(
            format!("image of f not in tangent {} of {owner} at {p}", h.name()),
            !inside,
            inside.then(|| format!("f lies in the tangent line {}", h.poly())),
        );
    }
    Ok(ok)
}

/// `m(L) + m(C)/2 ≤ (3/2)·T + O(1)` for a line and a smooth conic meeting
/// transversally, provided `f` avoids lying in `L`, `C` and both tangents of
/// `C` at `L ∩ C`.
pub fn line_conic_check(f: &ProjectiveCurve, l: &Hypersurface, c: &Hypersurface, cfg: &SmtConfig) -> Result<SmtReport> {
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, 2, true);
    ok &= audit_ambient(&mut audit, &[l.clone(), c.clone()], 2);
    ok &= audit.check(format!("{} is a line", l.name()), l.degree() == 1, None);
    ok &= audit.check(format!("{} is a conic", c.name()), c.degree() == 2, None);
    if !ok {
        audit.skipped("geometry of L and C", "degree or ambient hypotheses failed");
        return Ok(refusal(TheoremId::LineConic, audit));
    }
    ok &= audit.check(format!("{} is nonsingular", c.name()), geometry::is_smooth(c)?, None);
    let pts = transversal_points(&mut audit, &[l.clone(), c.clone()], 2)?;
    ok &= audit_not_contained(&mut audit, f, l)?;
    ok &= audit_not_contained(&mut audit, f, c)?;
    let Some(pts) = pts else {
        audit.skipped("image of f not in the tangent lines", "no transversal intersection");
        return Ok(refusal(TheoremId::LineConic, audit));
    };
    let hs = tangents(c, &pts)?;
    ok &= audit_tangent_containment(&mut audit, f, &hs, &pts, c.name())?;
    if !ok {
        return Ok(refusal(TheoremId::LineConic, audit));
    }
    let hpolys: Vec<Poly> = hs.iter().map(|h| h.poly().clone()).collect();
    let cert = noether_decompose(&hpolys, &[(c.poly().clone(), 1), (l.poly().clone(), 2)])?;
    let verdict = slope_verdict(
        &[(proximity(f, l)?, Rational::one()), (proximity(f, c)?, ratio(1, 2))],
        &order_function(f)?,
        ratio(3, 2),
        cfg,
    )?;
    Ok(SmtReport {
        verdict: Some(verdict),
        certificates: vec![cert],
        notes: hs.iter().map(|h| format!("{}: {}", h.name(), h.poly())).collect(),
        ..refusal(TheoremId::LineConic, audit)
    })
}

/// `m(L) + m(C)/d ≤ (2 - 1/d)·T + O(1)` for a line and a smooth curve of
/// degree `d ≥ 3` meeting transversally.
///
/// The condition on the point of multiplicity `d` is checked in the form the
/// argument uses: the tangent line at each `A_i ∈ L ∩ C` must meet `C`
/// somewhere else, i.e. its contact order at `A_i` is below `d`. When the
/// image of `f` lies in a tangent line, the one-dimensional estimate on that
/// line is run as a sub-report.
pub fn line_curve_check(f: &ProjectiveCurve, l: &Hypersurface, c: &Hypersurface, cfg: &SmtConfig) -> Result<SmtReport> {
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, 2, true);
    ok &= audit_ambient(&mut audit, &[l.clone(), c.clone()], 2);
    ok &= audit.check(format!("{} is a line", l.name()), l.degree() == 1, None);
    let d = c.degree();
    ok &= audit.check(format!("deg {} ≥ 3", c.name()), d >= 3, Some(format!("degree {d}")));
    if !ok {
        audit.skipped("geometry of L and C", "degree or ambient hypotheses failed");
        return Ok(refusal(TheoremId::LineCurve, audit));
    }
    ok &= audit.check(format!("{} is nonsingular", c.name()), geometry::is_smooth(c)?, None);
    let pts = transversal_points(&mut audit, &[l.clone(), c.clone()], d)?;
    ok &= audit_not_contained(&mut audit, f, l)?;
    ok &= audit_not_contained(&mut audit, f, c)?;
    let Some(pts) = pts else {
        audit.skipped("tangent lines meet C again", "no transversal intersection");
        return Ok(refusal(TheoremId::LineCurve, audit));
    };
    let hs = tangents(c, &pts)?;
    for (h, a) in hs.iter().zip(&pts) {
        let order = geometry::line_contact_order(c, h, a)?;
        ok &= audit.check(
            format!("tangent {} at {a} meets {} again", h.name(), c.name()),
            order < d,
            Some(format!("contact order {order} of {d}")),
        );
    }
    if !ok {
        return Ok(refusal(TheoremId::LineCurve, audit));
    }
    let hpolys: Vec<Poly> = hs.iter().map(|h| h.poly().clone()).collect();
    let cert = noether_decompose(&hpolys, &[(c.poly().clone(), 1), (l.poly().clone(), 2)])?;
    let verdict = slope_verdict(
        &[(proximity(f, l)?, Rational::one()), (proximity(f, c)?, ratio(1, d as i64))],
        &order_function(f)?,
        int(2) - ratio(1, d as i64),
        cfg,
    )?;
    let mut report = SmtReport {
        verdict: Some(verdict),
        certificates: vec![cert],
        notes: hs.iter().map(|h| format!("{}: {}", h.name(), h.poly())).collect(),
        ..refusal(TheoremId::LineCurve, audit)
    };
    for (h, a) in hs.iter().zip(&pts) {
        if f.lies_in(h)? {
            let mut points = vec![a.clone()];
            points.extend(geometry::tangent_line_secondary_intersections(c, h, a)?);
            report.degenerate_branch = Some(format!("image of f in tangent {} at {a}", h.name()));
            report.sub_reports.push(p1_points_check(f, &points, cfg)?);
            break;
        }
    }
    Ok(report)
}

/// Coordinates `(α, β)` of `x = α·u + β·v`, if `x` lies in the span.
fn in_plane(u: &[Rational], v: &[Rational], x: &[Rational]) -> Option<(Rational, Rational)> {
    let a: Vec<Vec<Rational>> = u.iter().zip(v).map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    linalg::solve(&a, x).map(|s| (s[0].clone(), s[1].clone()))
}

/// `T_f ≤ Σ N_f(·, P_i) + O(1)` for a curve inside a line and at least two
/// distinct points of that line.
pub fn p1_points_check(f: &ProjectiveCurve, points: &[ProjPoint], cfg: &SmtConfig) -> Result<SmtReport> {
    let n = f.ambient_dim();
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, n, true);
    ok &= audit.check(
        "at least two distinct points",
        points.len() >= 2 && geometry::all_distinct(points),
        Some(format!("{} point(s) given", points.len())),
    );
    let bad: Vec<String> = points.iter().filter(|p| p.ambient_dim() != n).map(|p| p.to_string()).collect();
    ok &= audit.check(
        format!("points lie in P^{n}"),
        bad.is_empty(),
        (!bad.is_empty()).then(|| bad.join(", ")),
    );
    if !ok {
        return Ok(refusal(TheoremId::P1Points, audit));
    }

    // Basis (u, v) of the line spanned by the image.
    let columns: Vec<Vec<Rational>> = {
        let len = f.components().iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        (0..len)
            .map(|k| f.components().iter().map(|c| c.coeffs().get(k).cloned().unwrap_or_default()).collect())
            .collect()
    };
    let (u, v) = if n == 1 {
        (vec![int(1), int(0)], vec![int(0), int(1)])
    } else {
        let rank = linalg::rank(&columns);
        if !audit.check("image of f lies in a line", rank <= 2, Some(format!("image spans rank {rank}"))) {
            return Ok(refusal(TheoremId::P1Points, audit));
        }
        let u = columns.iter().find(|c| c.iter().any(|x| !x.is_zero())).expect("nonconstant").clone();
        let v = columns
            .iter()
            .find(|c| linalg::rank(&[u.clone(), (*c).clone()]) == 2)
            .expect("nonconstant")
            .clone();
        (u, v)
    };
    // f = a·u + b·v.
    let mut a = Vec::new();
    let mut b = Vec::new();
    for col in &columns {
        let (x, y) = in_plane(&u, &v, col).expect("column in the span");
        a.push(x);
        b.push(y);
    }
    let prime = f.prime();
    let a = crate::series::TruncatedSeries::polynomial(a, prime);
    let b = crate::series::TruncatedSeries::polynomial(b, prime);

    let mut forms = Vec::new();
    for p in points {
        match in_plane(&u, &v, p.coords()) {
            Some((alpha, beta)) => {
                // β·a - α·b vanishes exactly where f passes through p.
                let g = b.scale(&-&alpha).add(&a.scale(&beta));
                let omitted = g.is_zero();
                ok &= audit.check(format!("f is not constantly {p}"), !omitted, None);
                forms.push(g);
            }
            None => {
                ok &= audit.check(format!("{p} lies on the image line"), false, None);
            }
        }
    }
    if !ok {
        return Ok(refusal(TheoremId::P1Points, audit));
    }
    let t = order_function(f)?;
    let total = PLFunction::sum(
        forms
            .iter()
            .map(|g| g.counting_pl())
            .collect::<Result<Vec<_>>>()?
            .iter(),
    );
    let verdict = compare(&t, &total, None, cfg)?;
    Ok(SmtReport {
        verdict: Some(verdict),
        ..refusal(TheoremId::P1Points, audit)
    })
}

/// `Σ m_i/d_i ≤ (n - 1/n)·T + O(1)` for `n` hypersurfaces in `P^n` meeting
/// transversally with total degree at least `n + 1`.
///
/// Divisors are ordered by final proximity slope (ties keep fixture order).
/// When all degrees are at least 2 the Levin estimate is run as a
/// sub-report. Otherwise `i0` is the last position of degree ≥ 2, `H_1..H_t`
/// are the tangent hyperplanes of `D_{i0}` at the intersection points, and for
/// each later hyperplane `D_j` a certificate
/// `H_1⋯H_t = Σ_{i≠j} R_ij·D_i + R_j·D_j²` is produced.
pub fn n_hypersurfaces_check(f: &ProjectiveCurve, divisors: &[Hypersurface], cfg: &SmtConfig) -> Result<SmtReport> {
    let n = common_n(f, divisors);
    let mut audit = Audit::default();
    let mut ok = audit_curve(&mut audit, f, n, true);
    ok &= audit_ambient(&mut audit, divisors, n);
    ok &= audit.check(
        format!("exactly {n} divisors"),
        divisors.len() == n,
        Some(format!("{} given", divisors.len())),
    );
    let total: u32 = divisors.iter().map(Hypersurface::degree).sum();
    ok &= audit.check(
        format!("total degree ≥ {}", n + 1),
        total as usize > n,
        Some(format!("total degree {total}")),
    );
    if !ok {
        audit.skipped("transversal intersection", "counting hypotheses failed");
        return Ok(refusal(TheoremId::NHypersurfaces, audit));
    }
    let bezout: u32 = divisors.iter().map(Hypersurface::degree).product();
    let pts = transversal_points(&mut audit, divisors, bezout)?;
    for d in divisors {
        ok &= audit_not_contained(&mut audit, f, d)?;
    }
    let Some(pts) = pts else {
        audit.skipped("image of f not in tangent hyperplanes", "no transversal intersection");
        return Ok(refusal(TheoremId::NHypersurfaces, audit));
    };
    let mut tangent_planes: Vec<(Hypersurface, ProjPoint, String)> = Vec::new();
    for d in divisors {
        for p in &pts {
            let h = geometry::tangent_hyperplane(d, p)?;
            if !tangent_planes.iter().any(|(g, _, _)| g.poly() == h.poly()) {
                tangent_planes.push((h, p.clone(), d.name().to_string()));
            }
        }
    }
    for (h, p, owner) in &tangent_planes {
        let inside = f.lies_in(h)?;
        ok &= audit.check(
            format!("image of f not in tangent hyperplane of {owner} at {p}"),
            !inside,
            inside.then(|| format!("f lies in {}", h.poly())),
        );
    }
    if !ok {
        return Ok(refusal(TheoremId::NHypersurfaces, audit));
    }

    let weighted = weighted_proximities(f, divisors)?;
    let t = order_function(f)?;
    let coefficient = int(n as i64) - ratio(1, n as i64);
    let verdict = slope_verdict(&weighted, &t, coefficient.clone(), cfg)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| weighted[j].0.final_slope().cmp(&weighted[i].0.final_slope()));
    let names: Vec<&str> = order.iter().map(|&i| divisors[i].name()).collect();
    let mut report = SmtReport {
        verdict: Some(verdict),
        notes: vec![format!("order by proximity slope: {}", names.join(" ≥ "))],
        ..refusal(TheoremId::NHypersurfaces, audit)
    };

    if divisors.iter().all(|d| d.degree() >= 2) {
        let levin = levin_smt_check(f, divisors, cfg)?;
        if let Some(c) = levin.verdict.as_ref().and_then(|v| v.rhs_coefficient.clone()) {
            if c > coefficient {
                return Err(Error::Inconsistent(format!(
                    "Levin coefficient {c} exceeds n - 1/n = {coefficient}"
                )));
            }
        }
        report.notes.push("all degrees ≥ 2: Levin path".into());
        report.sub_reports.push(levin);
        return Ok(report);
    }

    let i0 = *order
        .iter()
        .rev()
        .find(|&&i| divisors[i].degree() >= 2)
        .expect("total degree exceeds n");
    report.notes.push(format!("i0 = {}", divisors[i0].name()));
    let hpolys: Vec<Poly> = pts
        .iter()
        .map(|p| Ok(geometry::tangent_hyperplane(&divisors[i0], p)?.poly().clone()))
        .collect::<Result<_>>()?;
    let pos0 = order.iter().position(|&i| i == i0).expect("present");
    for &j in &order[pos0 + 1..] {
        let basis: Vec<(Poly, u32)> = (0..n)
            .map(|i| (divisors[i].poly().clone(), if i == j { 2 } else { 1 }))
            .collect();
        report.certificates.push(noether_decompose(&hpolys, &basis)?);
        report.notes.push(format!("certificate for j = {}", divisors[j].name()));
    }
    Ok(report)
}

/// `N` slopes, for callers that tabulate the degenerate branch.
pub fn counting_slopes(f: &ProjectiveCurve, divisors: &[Hypersurface]) -> Result<Vec<Rational>> {
    divisors.iter().map(|d| Ok(counting(f, d)?.final_slope())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Prime;

    fn curve(lits: &[&str], p: u64) -> ProjectiveCurve {
        ProjectiveCurve::parse(lits, Prime::new(p).unwrap()).unwrap()
    }

    fn hs(name: &str, src: &str, n: usize) -> Hypersurface {
        Hypersurface::parse(name, src, n).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    fn cfg() -> SmtConfig {
        SmtConfig::default()
    }

    #[test]
    fn lemma1_examples() {
        let f = curve(&["1", "z"], 2);
        let ds = [hs("a", "x0", 1), hs("b", "x1", 1), hs("c", "x0 - x1", 1)];
        let r = lemma1_check(&f, &ds).unwrap();
        assert_eq!(r.bounded, vec!["b", "c"]);
        assert_eq!((r.required, r.passed), (2, Some(true)));

        let r = lemma1_check(&f, &ds[..1]).unwrap();
        assert_eq!((r.required, r.passed), (0, Some(true)));

        let g = curve(&["1", "z", "z^3"], 2);
        let ds = [hs("a", "x0", 2), hs("b", "x1", 2), hs("c", "x2", 2), hs("d", "x0 + x1 + x2", 2)];
        let r = lemma1_check(&g, &ds).unwrap();
        assert_eq!(r.bounded, vec!["c", "d"]);
        assert_eq!(r.passed, Some(true));
    }

    #[test]
    fn ru_examples() {
        let f = curve(&["1", "z"], 2);
        let ds = [hs("a", "x0", 1), hs("b", "x1", 1), hs("c", "x0 - x1", 1)];
        let v = ru_smt_check(&f, &ds, &cfg()).unwrap().verdict.unwrap();
        assert_eq!((v.lhs_slope, v.rhs_slope, v.satisfied), (int(1), int(1), true));

        let v = ru_smt_check(&f, &ds[1..2], &cfg()).unwrap().verdict.unwrap();
        assert_eq!((v.lhs_slope, v.rhs_slope), (int(0), int(1)));

        let g = curve(&["1", "z", "z^3"], 2);
        let ds = [hs("a", "x0", 2), hs("b", "x1", 2), hs("c", "x2", 2)];
        let v = ru_smt_check(&g, &ds, &cfg()).unwrap().verdict.unwrap();
        assert_eq!(v.rhs_slope, int(6));
        assert!(v.satisfied);
    }

    #[test]
    fn ru_refuses_outside_general_position() {
        let f = curve(&["1", "z", "z^2 + 1"], 2);
        let ds = [hs("a", "x0", 2), hs("b", "x1", 2), hs("c", "x0 + x1", 2)];
        let r = ru_smt_check(&f, &ds, &cfg()).unwrap();
        assert!(r.is_refusal());
        assert_eq!(r.failed_hypotheses()[0].name, "general position");
    }

    #[test]
    fn line_conic_examples() {
        let l = hs("L", "x1", 2);
        let c = hs("C", "x1^2 - x0*x2", 2);
        let r = line_conic_check(&curve(&["1", "z", "z^3"], 2), &l, &c, &cfg()).unwrap();
        let v = r.verdict.clone().unwrap();
        assert_eq!((v.lhs_slope, v.rhs_slope), (ratio(7, 2), ratio(9, 2)));
        assert!(v.satisfied);
        assert_eq!(r.certificates[0].scalar(0), Some(int(-1)));
        assert_eq!(r.certificates[0].scalar(1), Some(int(1)));

        let r = line_conic_check(&curve(&["1", "z", "z^2"], 2), &l, &c, &cfg()).unwrap();
        assert!(r.is_refusal());
        assert!(r.failed_hypotheses().iter().any(|a| a.name == "image of f not in C"));

        let r = line_conic_check(&curve(&["1", "z", "0"], 2), &l, &c, &cfg()).unwrap();
        assert!(r.is_refusal());
        let failed = r.failed_hypotheses();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].name.contains("tangent H"));
        assert!(failed[0].detail.as_deref().unwrap().contains("x2"));
    }

    #[test]
    fn p1_examples() {
        let f = curve(&["1", "z"], 2);
        let v = p1_points_check(&f, &[pt("1:0"), pt("0:1")], &cfg()).unwrap().verdict.unwrap();
        assert_eq!((v.lhs_slope, v.rhs_slope, v.satisfied), (int(1), int(1), true));
        assert!(p1_points_check(&f, &[pt("1:0")], &cfg()).unwrap().is_refusal());
        let g = curve(&["1", "z^2"], 2);
        let v = p1_points_check(&g, &[pt("1:0"), pt("1:1")], &cfg()).unwrap().verdict.unwrap();
        assert_eq!((v.lhs_slope, v.rhs_slope), (int(2), int(4)));
    }

    #[test]
    fn n_hypersurfaces_agrees_with_line_conic() {
        let l = hs("L", "x1", 2);
        let c = hs("C", "x1^2 - x0*x2", 2);
        let f = curve(&["1", "z", "z^3"], 2);
        let a = line_conic_check(&f, &l, &c, &cfg()).unwrap().verdict.unwrap();
        let r = n_hypersurfaces_check(&f, &[l, c], &cfg()).unwrap();
        let b = r.verdict.clone().unwrap();
        assert_eq!((a.lhs_slope, a.rhs_slope, a.satisfied), (b.lhs_slope, b.rhs_slope, b.satisfied));
        assert_eq!(b.rhs_coefficient, Some(ratio(3, 2)));
        assert_eq!(r.certificates.len(), 1);
        assert!(r.certificates[0].certified);

        let r = n_hypersurfaces_check(&f, &[hs("a", "x0", 2), hs("b", "x1", 2)], &cfg()).unwrap();
        assert!(r.is_refusal());
    }
}
