//! Projective hypersurfaces over `Q` and the exact decision procedures the
//! verdict engines rely on.
//!
//! Intersections are computed without Gröbner machinery: linear equations are
//! eliminated by a nullspace computation, and what remains is either a set of
//! binary forms on a line (factored over `Q`) or a set of plane curves
//! (projected from a rational centre and resolved through resultants). Any
//! configuration outside that scope, or one with irrational points where
//! rational ones are required, fails with [`Error::Unsupported`].

mod intersect;
mod noether;

use std::fmt;

use num_traits::Zero;

use crate::linalg;
use crate::poly::Poly;
use crate::{Error, Rational, Result};

pub use intersect::{intersection_points, locus_dimension, Locus};
pub use noether::{noether_decompose, NoetherDecomposition, NoetherTerm};

/// A hypersurface `{Q = 0}` of degree `d ≥ 1` in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypersurface {
    name: String,
    poly: Poly,
    degree: u32,
}

impl Hypersurface {
    pub fn new(name: impl Into<String>, poly: Poly) -> Result<Self> {
        let name = name.into();
        if poly.is_zero() {
            return Err(Error::InvalidHypersurface(format!("{name}: zero polynomial")));
        }
        let degree = poly.homogeneous_degree().ok_or_else(|| {
            Error::InvalidHypersurface(format!("{name}: polynomial is not homogeneous"))
        })?;
        if degree == 0 {
            return Err(Error::InvalidHypersurface(format!("{name}: constant polynomial")));
        }
        Ok(Hypersurface { name, poly, degree })
    }

    /// Parse a homogeneous literal in `x0..x{n}`.
    pub fn parse(name: impl Into<String>, src: &str, ambient_dim: usize) -> Result<Self> {
        Self::new(name, crate::literal::parse_homogeneous(src, ambient_dim + 1)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.poly.nvars() - 1
    }

    pub fn is_hyperplane(&self) -> bool {
        self.degree == 1
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Hypersurface {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn contains(&self, point: &ProjPoint) -> bool {
        self.poly.eval(point.coords()).is_zero()
    }

    pub fn gradient_at(&self, point: &ProjPoint) -> Vec<Rational> {
        self.poly.gradient_at(point.coords())
    }
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.poly)
    }
}

/// A rational point of `P^n`, stored with its first nonzero coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidArgument("projective point with all coordinates zero".into()));
        };
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    /// Parse `a:b:c` with rational entries.
    pub fn parse(src: &str) -> Result<Self> {
        let coords = src
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(':')
            .map(|part| {
                let part = part.trim();
                let (neg, body) = match part.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, part),
                };
                let coeffs = crate::literal::parse_series_coeffs(body)
                    .ok()
                    .filter(|c| c.len() <= 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad point coordinate `{part}`")))?;
                let v = coeffs.into_iter().next().unwrap_or_else(Rational::zero);
                Ok(if neg { -v } else { v })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Outcome of a general-position test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPosition {
    pub holds: bool,
    /// 1-based indexes of a violating subset.
    pub violating_subset: Option<Vec<usize>>,
    pub witness: Option<ProjPoint>,
}

fn common_ambient(divisors: &[Hypersurface]) -> Result<usize> {
    let n = divisors
        .first()
        .ok_or_else(|| Error::InvalidArgument("no divisors given".into()))?
        .ambient_dim();
    for d in divisors {
        if d.ambient_dim() != n {
            return Err(Error::MixedAmbient(n, d.ambient_dim()));
        }
    }
    Ok(n)
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

/// Every subset `I` with `|I| ≤ n+1` must meet in dimension `≤ n - |I|`
/// (the empty set has dimension `-1`).
pub fn general_position_check(divisors: &[Hypersurface]) -> Result<GeneralPosition> {
    let n = common_ambient(divisors)?;
    for k in 1..=divisors.len().min(n + 1) {
        for subset in subsets(divisors.len(), k) {
            let forms: Vec<Poly> = subset.iter().map(|&i| divisors[i].poly().clone()).collect();
            let locus = locus_dimension(&forms, n + 1)?;
            if locus.dim > n as i64 - k as i64 {
                return Ok(GeneralPosition {
                    holds: false,
                    violating_subset: Some(subset.iter().map(|i| i + 1).collect()),
                    witness: locus.witness,
                });
            }
        }
    }
    Ok(GeneralPosition {
        holds: true,
        violating_subset: None,
        witness: None,
    })
}

/// Gradients of the defining polynomials at `point` are linearly independent.
pub fn transversality_check(divisors: &[Hypersurface], point: &ProjPoint) -> Result<bool> {
    common_ambient(divisors)?;
    let mut rows = Vec::with_capacity(divisors.len());
    for d in divisors {
        if point.ambient_dim() != d.ambient_dim() {
            return Err(Error::MixedAmbient(d.ambient_dim(), point.ambient_dim()));
        }
        if !d.contains(point) {
            return Err(Error::PointNotOnDivisor {
                point: point.to_string(),
                divisor: d.name().to_string(),
            });
        }
        rows.push(d.gradient_at(point));
    }
    Ok(linalg::rank(&rows) == divisors.len())
}

/// Every common point of the divisors is transversal: the divisors together
/// with all maximal minors of their Jacobian have no common zero. Works
/// whether or not the intersection points are rational.
pub fn intersects_transversally(divisors: &[Hypersurface]) -> Result<bool> {
    let n = common_ambient(divisors)?;
    let k = divisors.len();
    let jac: Vec<Vec<Poly>> = divisors
        .iter()
        .map(|d| (0..=n).map(|i| d.poly().partial(i)).collect())
        .collect();
    let mut forms: Vec<Poly> = divisors.iter().map(|d| d.poly().clone()).collect();
    for cols in subsets(n + 1, k) {
        let m: Vec<Vec<Poly>> = jac
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        forms.push(poly_det(&m, n + 1));
    }
    let locus = locus_dimension(&forms, n + 1)?;
    match locus {
        Locus { dim, .. } if dim < 0 => Ok(true),
        Locus { exact: true, .. } | Locus { witness: Some(_), .. } => Ok(false),
        _ => Err(Error::Unsupported(
            "could not decide transversality of the intersection".into(),
        )),
    }
}

fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    match m.len() {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        len => {
            let mut acc = Poly::zero(nvars);
            for j in 0..len {
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &poly_det(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// The hyperplane `Σ ∂D/∂x_i(P)·x_i`, scaled to coprime integers with a
/// positive first nonzero coefficient.
pub fn tangent_hyperplane(d: &Hypersurface, point: &ProjPoint) -> Result<Hypersurface> {
    if !d.contains(point) {
        return Err(Error::PointNotOnDivisor {
            point: point.to_string(),
            divisor: d.name().to_string(),
        });
    }
    let grad = d.gradient_at(point);
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint {
            point: point.to_string(),
            divisor: d.name().to_string(),
        });
    }
    Hypersurface::new(format!("T({},{})", d.name(), point), Poly::linear(&grad).primitive())
}

/// Points of `H ∩ C` other than `a`, for a tangent line `H` of a plane curve `C` at `a`.
pub fn tangent_line_secondary_intersections(
    c: &Hypersurface,
    h: &Hypersurface,
    a: &ProjPoint,
) -> Result<Vec<ProjPoint>> {
    if c.ambient_dim() != 2 || !h.is_hyperplane() {
        return Err(Error::InvalidArgument("expected a plane curve and a line".into()));
    }
    if !h.contains(a) {
        return Err(Error::PointNotOnDivisor {
            point: a.to_string(),
            divisor: h.name().to_string(),
        });
    }
    Ok(intersection_points(&[h.poly().clone(), c.poly().clone()])?
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| p != a)
        .collect())
}

/// Intersection multiplicity of the line `H` with `C` at `a` (the order of
/// vanishing of `C` restricted to `H`).
pub fn line_contact_order(c: &Hypersurface, h: &Hypersurface, a: &ProjPoint) -> Result<u32> {
    intersect::contact_order_on_line(c.poly(), h.poly(), a)
}

/// No common zero of all partial derivatives.
pub fn is_smooth(d: &Hypersurface) -> Result<bool> {
    let nvars = d.poly().nvars();
    let partials: Vec<Poly> = (0..nvars).map(|i| d.poly().partial(i)).collect();
    if partials.iter().any(|p| p.homogeneous_degree() == Some(0) && !p.is_zero()) {
        return Ok(true);
    }
    Ok(locus_dimension(&partials, nvars)?.dim < 0)
}

/// `true` if every element of `points` is distinct.
pub(crate) fn all_distinct(points: &[ProjPoint]) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, p)| points[i + 1..].iter().all(|q| q != p))
}

/// Product of several polynomials.
pub(crate) fn product(polys: &[Poly], nvars: usize) -> Poly {
    polys.iter().fold(Poly::one(nvars), |acc, p| &acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn hs(name: &str, src: &str, n: usize) -> Hypersurface {
        Hypersurface::parse(name, src, n).unwrap()
    }

    fn pt(src: &str) -> ProjPoint {
        ProjPoint::parse(src).unwrap()
    }

    #[test]
    fn points_are_canonical() {
        let p = ProjPoint::new(vec![int(0), int(2), int(-4)]).unwrap();
        assert_eq!(p, pt("0:1:-2"));
        assert_eq!(p.to_string(), "[0:1:-2]");
        assert_eq!(pt("[1/2:1]"), pt("1:2"));
        assert!(ProjPoint::new(vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn general_position_examples() {
        let coords = [hs("a", "x0", 2), hs("b", "x1", 2), hs("c", "x2", 2)];
        assert!(general_position_check(&coords).unwrap().holds);

        let pencil = [hs("a", "x0", 2), hs("b", "x1", 2), hs("c", "x0 + x1", 2)];
        let gp = general_position_check(&pencil).unwrap();
        assert!(!gp.holds);
        assert_eq!(gp.violating_subset, Some(vec![1, 2, 3]));
        assert_eq!(gp.witness, Some(pt("0:0:1")));

        let lc = [hs("L", "x1", 2), hs("C", "x1^2 - x0*x2", 2)];
        assert!(general_position_check(&lc).unwrap().holds);

        let mixed = [hs("a", "x0", 2), hs("b", "x0", 1)];
        assert_eq!(general_position_check(&mixed), Err(Error::MixedAmbient(2, 1)));
    }

    #[test]
    fn transversality_examples() {
        let c = hs("C", "x1^2 - x0*x2", 2);
        assert!(transversality_check(&[hs("L", "x1", 2), c.clone()], &pt("1:0:0")).unwrap());
        assert!(!transversality_check(&[hs("H", "x2", 2), c.clone()], &pt("1:0:0")).unwrap());
        assert!(transversality_check(&[hs("a", "x0", 2), hs("b", "x1", 2)], &pt("0:0:1")).unwrap());
        assert!(matches!(
            transversality_check(&[c], &pt("1:1:0")),
            Err(Error::PointNotOnDivisor { .. })
        ));
    }

    #[test]
    fn transversality_ignores_rescaling() {
        let c = hs("C", "x1^2 - x0*x2", 2);
        let c3 = Hypersurface::new("C3", c.poly().scale(&int(-3))).unwrap();
        let l = hs("L", "x1", 2);
        for p in [pt("1:0:0"), ProjPoint::new(vec![int(5), int(0), int(0)]).unwrap()] {
            assert_eq!(
                transversality_check(&[l.clone(), c.clone()], &p).unwrap(),
                transversality_check(&[l.clone(), c3.clone()], &p).unwrap()
            );
        }
    }

    #[test]
    fn tangent_examples() {
        let c = hs("C", "x1^2 - x0*x2", 2);
        assert_eq!(tangent_hyperplane(&c, &pt("1:0:0")).unwrap().poly(), hs("", "x2", 2).poly());
        assert_eq!(tangent_hyperplane(&c, &pt("0:0:1")).unwrap().poly(), hs("", "x0", 2).poly());
        let d = hs("D", "x0", 2);
        assert_eq!(tangent_hyperplane(&d, &pt("0:3:1")).unwrap().poly(), d.poly());
        let nodal = hs("N", "x1^2*x2 - x0^3 - x0^2*x2", 2);
        assert!(matches!(tangent_hyperplane(&nodal, &pt("0:0:1")), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn tangent_is_tangent() {
        let c = hs("C", "x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2", 2);
        for p in ["1:0:0", "0:0:1", "1:0:1"] {
            let p = pt(p);
            let h = tangent_hyperplane(&c, &p).unwrap();
            assert!(h.contains(&p));
            assert!(!transversality_check(&[h, c.clone()], &p).unwrap());
        }
    }

    #[test]
    fn secondary_intersections() {
        let conic = hs("C", "x1^2 - x0*x2", 2);
        let a = pt("1:0:0");
        let h = tangent_hyperplane(&conic, &a).unwrap();
        assert!(tangent_line_secondary_intersections(&conic, &h, &a).unwrap().is_empty());

        let cubic = hs("C", "x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2", 2);
        let h = tangent_hyperplane(&cubic, &a).unwrap();
        let b = tangent_line_secondary_intersections(&cubic, &h, &a).unwrap();
        assert_eq!(b, vec![pt("1:-1:0")]);
        assert_eq!(line_contact_order(&cubic, &h, &a).unwrap(), 2);

        let flexed = hs("C", "x0^2*x2 - x0*x2^2 + x1^3", 2);
        let h = tangent_hyperplane(&flexed, &a).unwrap();
        assert!(tangent_line_secondary_intersections(&flexed, &h, &a).unwrap().is_empty());
        assert_eq!(line_contact_order(&flexed, &h, &a).unwrap(), 3);
    }

    #[test]
    fn transversal_everywhere() {
        let c = hs("C", "x1^2 - x0*x2", 2);
        assert!(intersects_transversally(&[hs("L", "x1", 2), c.clone()]).unwrap());
        assert!(!intersects_transversally(&[hs("H", "x2", 2), c.clone()]).unwrap());
        // Irrational intersection points are handled.
        assert!(intersects_transversally(&[hs("L", "x1", 2), hs("Q", "x0^2 - 2*x2^2 + x1*x2", 2)]).unwrap());
        let c2 = hs("C2", "2*x1^2 - 3*x0*x2 + 2*x0*x1 - 2*x1*x2 + x2^2", 2);
        assert!(intersects_transversally(&[c, c2]).unwrap());
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&hs("C", "x1^2 - x0*x2", 2)).unwrap());
        assert!(!is_smooth(&hs("N", "x1^2*x2 - x0^3 - x0^2*x2", 2)).unwrap());
        assert!(is_smooth(&hs("C", "x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2", 2)).unwrap());
        assert!(is_smooth(&hs("Q", "x0^2 - x2^2 + x1*x3", 3)).unwrap());
        assert!(!is_smooth(&hs("K", "x0*x1", 2)).unwrap());
        assert!(is_smooth(&hs("L", "x0 + 2*x1", 1)).unwrap());
    }
}
