//! Common zeros of homogeneous forms.
//!
//! Linear equations cut the ambient space down to a linear subspace `P^k`;
//! the remaining forms are restricted to it. On a line they become binary
//! forms. In a plane, two curves are projected from a centre `O` lying on
//! neither of them: the resultant in the fibre coordinate is a binary form of
//! degree `d·e` whose roots are the lines through `O` that carry intersection
//! points, and each such line is then solved with a univariate gcd.

use num_traits::{One, Zero};

use super::ProjPoint;
use crate::linalg;
use crate::poly::Poly;
use crate::upoly::{BinaryForm, UniPoly};
use crate::{int, Error, Rational, Result};

/// Dimension information for a set of common zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locus {
    /// Certified upper bound on the dimension; `-1` means empty.
    pub dim: i64,
    /// Whether `dim` is known to be attained.
    pub exact: bool,
    /// A rational point of the locus, when one was found.
    pub witness: Option<ProjPoint>,
}

impl Locus {
    fn empty() -> Self {
        Locus {
            dim: -1,
            exact: true,
            witness: None,
        }
    }
}

/// Forms restricted to the linear subspace cut out by the linear ones.
struct Reduced {
    /// Spanning vectors of the subspace; a point `t` maps to `Σ t_j basis[j]`.
    basis: Vec<Vec<Rational>>,
    /// Nonzero restrictions of degree ≥ 2, in `basis.len()` variables.
    forms: Vec<Poly>,
}

impl Reduced {
    fn k(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    fn lift(&self, t: &[Rational]) -> ProjPoint {
        let n = self.basis[0].len();
        let coords = (0..n)
            .map(|i| self.basis.iter().zip(t).map(|(b, tj)| &b[i] * tj).sum())
            .collect();
        ProjPoint::new(coords).expect("basis vectors are independent")
    }
}

fn reduce(forms: &[Poly], nvars: usize) -> Option<Reduced> {
    let mut rows = Vec::new();
    let mut higher = Vec::new();
    for f in forms.iter().filter(|f| !f.is_zero()) {
        match f.homogeneous_degree() {
            Some(0) => return None,
            Some(1) => rows.push((0..nvars).map(|i| f.coeff(&unit_exp(nvars, i))).collect()),
            _ => higher.push(f),
        }
    }
    let basis = if rows.is_empty() {
        (0..nvars).map(|i| unit(nvars, i)).collect()
    } else {
        linalg::nullspace(&rows, nvars)
    };
    if basis.is_empty() {
        return None;
    }
    let images: Vec<Poly> = (0..nvars)
        .map(|i| Poly::linear(&basis.iter().map(|b| b[i].clone()).collect::<Vec<_>>()))
        .collect();
    let forms = higher
        .into_iter()
        .map(|f| f.substitute(&images))
        .filter(|f| !f.is_zero())
        .collect();
    Some(Reduced { basis, forms })
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn unit_exp(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// A form in two variables `(t0, t1)` as a binary form.
fn binary_form(p: &Poly) -> BinaryForm {
    let degree = p.homogeneous_degree().expect("homogeneous");
    let mut coeffs = vec![Rational::zero(); degree as usize + 1];
    for (e, c) in p.terms() {
        coeffs[e[1] as usize] += c;
    }
    BinaryForm {
        degree,
        dehomogenized: UniPoly::new(coeffs),
    }
}

fn squarefree(p: &UniPoly) -> UniPoly {
    let g = UniPoly::gcd(p, &p.derivative());
    p.div_rem(&g).0
}

/// Projection of the plane from a centre `o`, with coordinates `(s, t, w)`
/// meaning the point `s·e1 + t·e2 + w·o`.
struct Projection {
    o: Vec<Rational>,
    e1: Vec<Rational>,
    e2: Vec<Rational>,
    /// Input forms rewritten in `(s, t, w)`.
    forms: Vec<Poly>,
}

fn centres() -> Vec<Vec<Rational>> {
    let mut out: Vec<[i64; 3]> = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                if (a, b, c) != (0, 0, 0) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.map(|x| -x)));
    out.into_iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect()
}

impl Projection {
    fn new(o: Vec<Rational>, forms: &[Poly]) -> Self {
        let pivot = o.iter().position(|c| !c.is_zero()).expect("nonzero centre");
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let (e1, e2) = (unit(3, others[0]), unit(3, others[1]));
        let images: Vec<Poly> = (0..3)
            .map(|i| Poly::linear(&[e1[i].clone(), e2[i].clone(), o[i].clone()]))
            .collect();
        let forms = forms.iter().map(|f| f.substitute(&images)).collect();
        Projection { o, e1, e2, forms }
    }

    /// The first usable centre after skipping `skip` of them.
    fn find(forms: &[Poly], skip: usize) -> Option<Self> {
        centres()
            .into_iter()
            .filter(|o| forms.iter().all(|f| !f.eval(o).is_zero()))
            .nth(skip)
            .map(|o| Projection::new(o, forms))
    }

    fn point(&self, s: &Rational, t: &Rational, w: &Rational) -> Vec<Rational> {
        (0..3)
            .map(|i| s * &self.e1[i] + t * &self.e2[i] + w * &self.o[i])
            .collect()
    }

    /// Form `i` on the line through `o` and `s·e1 + t·e2`, as a polynomial in `w`.
    fn on_line(&self, i: usize, s: &Rational, t: &Rational) -> UniPoly {
        let f = &self.forms[i];
        let mut coeffs = vec![Rational::zero(); f.degree_in(2) as usize + 1];
        for (e, c) in f.terms() {
            coeffs[e[2] as usize] += c * pow(s, e[0]) * pow(t, e[1]);
        }
        UniPoly::new(coeffs)
    }

    /// `Res_w(F_i, F_j)` as a binary form in `(s, t)`.
    fn resultant(&self, i: usize, j: usize) -> BinaryForm {
        let di = self.forms[i].homogeneous_degree().expect("homogeneous");
        let dj = self.forms[j].homogeneous_degree().expect("homogeneous");
        let degree = di * dj;
        let one = Rational::one();
        let samples: Vec<(Rational, Rational)> = (0..=degree as i64)
            .map(|k| {
                let t = int(k);
                let r = UniPoly::resultant(&self.on_line(i, &one, &t), &self.on_line(j, &one, &t));
                (t, r)
            })
            .collect();
        BinaryForm {
            degree,
            dehomogenized: interpolate(&samples),
        }
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
fn interpolate(samples: &[(Rational, Rational)]) -> UniPoly {
    let n = samples.len();
    let xs: Vec<Rational> = samples.iter().map(|(x, _)| x.clone()).collect();
    let mut dd: Vec<Rational> = samples.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = &(&acc * &UniPoly::linear_factor(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

enum PairPoints {
    CommonComponent,
    Points(Vec<(Vec<Rational>, u32)>),
}

/// Intersection of two plane curves with multiplicities; every point must be rational.
fn plane_pair_points(f: &Poly, g: &Poly) -> Result<PairPoints> {
    let forms = [f.clone(), g.clone()];
    'centre: for skip in 0..24 {
        let Some(proj) = Projection::find(&forms, skip) else {
            break;
        };
        let res = proj.resultant(0, 1);
        if res.is_zero() {
            return Ok(PairPoints::CommonComponent);
        }
        let (roots, missing) = res.rational_roots()?;
        if missing > 0 {
            return Err(Error::Unsupported(format!(
                "{missing} intersection point(s) are not rational"
            )));
        }
        let mut points = Vec::new();
        for (root, mult) in roots {
            let [s, t] = root.coords();
            let h = UniPoly::gcd(&proj.on_line(0, &s, &t), &proj.on_line(1, &s, &t));
            let sf = squarefree(&h);
            if sf.degree() != Some(1) {
                continue 'centre;
            }
            let w = -&sf.coeffs()[0] / &sf.coeffs()[1];
            points.push((proj.point(&s, &t, &w), mult));
        }
        return Ok(PairPoints::Points(points));
    }
    Err(Error::Unsupported(
        "no projection centre separates the intersection points".into(),
    ))
}

/// Dimension of the common zeros of at least two plane curves.
fn plane_locus(forms: &[Poly]) -> Result<Locus> {
    let proj = Projection::find(forms, 0)
        .ok_or_else(|| Error::Unsupported("no projection centre off all curves".into()))?;
    let mut resultants = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let r = proj.resultant(i, j);
            if !r.is_zero() {
                resultants.push(r);
            }
        }
    }
    if resultants.is_empty() {
        return Ok(Locus {
            dim: 1,
            exact: forms.len() == 2,
            witness: None,
        });
    }
    let g = BinaryForm::gcd(&resultants);
    if g.degree == 0 {
        return Ok(Locus::empty());
    }
    let (roots, missing) = g.rational_roots()?;
    let mut nonempty = false;
    for (root, _) in roots {
        let [s, t] = root.coords();
        let h = (0..forms.len()).fold(UniPoly::zero(), |acc, i| UniPoly::gcd(&acc, &proj.on_line(i, &s, &t)));
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        if let Some((w, _)) = h.rational_roots()?.into_iter().next() {
            let witness = ProjPoint::new(proj.point(&s, &t, &w)).expect("point off the centre");
            return Ok(Locus {
                dim: 0,
                exact: true,
                witness: Some(witness),
            });
        }
        nonempty = true;
    }
    Ok(Locus {
        dim: if nonempty || missing > 0 { 0 } else { -1 },
        exact: nonempty || missing == 0,
        witness: None,
    })
}

/// Small deterministic coefficients for slicing hyperplanes.
fn slice_coeff(attempt: usize, row: usize, col: usize) -> i64 {
    let h = (attempt * 131 + row * 37 + col * 17 + 11) % 7;
    h as i64 - 3
}

/// Dimension of `{f = 0 for all f in forms}` in `P^{nvars-1}`.
///
/// Exact for linear subspaces, lines and planes. In higher dimension the
/// locus is sliced down to a plane by hyperplanes, which only ever certifies
/// an upper bound.
pub fn locus_dimension(forms: &[Poly], nvars: usize) -> Result<Locus> {
    let Some(red) = reduce(forms, nvars) else {
        return Ok(Locus::empty());
    };
    let k = red.k();
    let m = red.forms.len();
    if m == 0 {
        return Ok(Locus {
            dim: k,
            exact: true,
            witness: Some(red.lift(&unit(red.basis.len(), 0))),
        });
    }
    match k {
        0 => Ok(Locus::empty()),
        1 => {
            let forms: Vec<BinaryForm> = red.forms.iter().map(binary_form).collect();
            let g = BinaryForm::gcd(&forms);
            if g.degree == 0 {
                return Ok(Locus::empty());
            }
            let (roots, _) = g.rational_roots()?;
            Ok(Locus {
                dim: 0,
                exact: true,
                witness: roots.first().map(|(r, _)| red.lift(&r.coords())),
            })
        }
        2 if m == 1 => Ok(Locus {
            dim: 1,
            exact: true,
            witness: None,
        }),
        2 => {
            let loc = plane_locus(&red.forms)?;
            Ok(Locus {
                witness: loc.witness.map(|w| red.lift(w.coords())),
                ..loc
            })
        }
        _ if m == 1 => Ok(Locus {
            dim: k - 1,
            exact: true,
            witness: None,
        }),
        _ => {
            let vars = red.basis.len();
            let lower = k - m as i64;
            let mut best: Option<Locus> = None;
            for attempt in 0..3 {
                let mut sliced = red.forms.clone();
                for row in 0..(k - 2) as usize {
                    let coeffs: Vec<Rational> = (0..vars).map(|c| int(slice_coeff(attempt, row, c))).collect();
                    sliced.push(Poly::linear(&coeffs));
                }
                let slice = match locus_dimension(&sliced, vars) {
                    Ok(s) => s,
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                };
                let ub = if slice.dim >= 0 { slice.dim + k - 2 } else { k - 3 };
                let cand = Locus {
                    dim: ub,
                    exact: slice.dim >= 0 && ub == lower,
                    witness: slice.witness.map(|w| red.lift(w.coords())),
                };
                if best.as_ref().is_none_or(|b| cand.dim < b.dim) {
                    best = Some(cand);
                }
            }
            best.ok_or_else(|| Error::Unsupported("could not slice the locus down to a plane".into()))
        }
    }
}

/// Distinct common zeros of `forms` with intersection multiplicities.
///
/// Requires a zero-dimensional, fully rational intersection; multiplicities
/// come from the line or plane-curve pair that determines the points.
pub fn intersection_points(forms: &[Poly]) -> Result<Vec<(ProjPoint, u32)>> {
    let nvars = forms
        .first()
        .ok_or_else(|| Error::InvalidArgument("no equations given".into()))?
        .nvars();
    let Some(red) = reduce(forms, nvars) else {
        return Ok(Vec::new());
    };
    let k = red.k();
    let m = red.forms.len();
    let mut out: Vec<(ProjPoint, u32)> = match (k, m) {
        (0, 0) => vec![(red.lift(&[Rational::one()]), 1)],
        (_, 0) => return Err(Error::NotZeroDimensional),
        (0, _) => Vec::new(),
        (1, _) => {
            let forms: Vec<BinaryForm> = red.forms.iter().map(binary_form).collect();
            let g = BinaryForm::gcd(&forms);
            if g.degree == 0 {
                return Ok(Vec::new());
            }
            let (roots, missing) = g.rational_roots()?;
            if missing > 0 {
                return Err(Error::Unsupported(format!(
                    "{missing} intersection point(s) are not rational"
                )));
            }
            roots.into_iter().map(|(r, mult)| (red.lift(&r.coords()), mult)).collect()
        }
        (2, 1) => return Err(Error::NotZeroDimensional),
        (2, _) => {
            let mut found = None;
            'pairs: for a in 0..m {
                for b in a + 1..m {
                    if let PairPoints::Points(pts) = plane_pair_points(&red.forms[a], &red.forms[b])? {
                        let others: Vec<&Poly> = (0..m).filter(|&i| i != a && i != b).map(|i| &red.forms[i]).collect();
                        found = Some(
                            pts.into_iter()
                                .filter(|(p, _)| others.iter().all(|f| f.eval(p).is_zero()))
                                .map(|(p, mult)| (red.lift(&p), mult))
                                .collect(),
                        );
                        break 'pairs;
                    }
                }
            }
            found.ok_or(Error::NotZeroDimensional)?
        }
        _ if (m as i64) < k => return Err(Error::NotZeroDimensional),
        _ => {
            return Err(Error::Unsupported(
                "zero-dimensional intersections in P^k with k ≥ 3 need linear equations to reach a plane".into(),
            ))
        }
    };
    out.sort();
    Ok(out)
}

/// Order of vanishing of `c` restricted to the line `h = 0` at the point `a`.
pub(crate) fn contact_order_on_line(c: &Poly, h: &Poly, a: &ProjPoint) -> Result<u32> {
    let nvars = c.nvars();
    let red = reduce(std::slice::from_ref(h), nvars)
        .filter(|r| r.basis.len() == 2)
        .ok_or_else(|| Error::InvalidArgument("expected a line".into()))?;
    let images: Vec<Poly> = (0..nvars)
        .map(|i| Poly::linear(&[red.basis[0][i].clone(), red.basis[1][i].clone()]))
        .collect();
    let restricted = c.substitute(&images);
    if restricted.is_zero() {
        return Err(Error::InvalidArgument("the line lies on the curve".into()));
    }
    let cols: Vec<Vec<Rational>> = (0..nvars)
        .map(|i| vec![red.basis[0][i].clone(), red.basis[1][i].clone()])
        .collect();
    let Some(t) = linalg::solve(&cols, a.coords()) else {
        return Ok(0);
    };
    let form = binary_form(&restricted);
    if t[0].is_zero() {
        let deg_t = form.dehomogenized.degree().unwrap_or(0) as u32;
        return Ok(form.degree - deg_t);
    }
    let r = &t[1] / &t[0];
    let lin = UniPoly::linear_factor(&r);
    let mut p = form.dehomogenized;
    let mut order = 0;
    while p.eval(&r).is_zero() {
        p = p.div_rem(&lin).0;
        order += 1;
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str, nvars: usize) -> Poly {
        Poly::parse(src, nvars).unwrap()
    }

    fn pt(src: &str) -> ProjPoint {
        ProjPoint::parse(src).unwrap()
    }

    #[test]
    fn line_conic_points() {
        let pts = intersection_points(&[p("x1", 3), p("x1^2 - x0*x2", 3)]).unwrap();
        assert_eq!(pts, vec![(pt("0:0:1"), 1), (pt("1:0:0"), 1)]);
        let pts = intersection_points(&[p("x0", 3), p("x1", 3)]).unwrap();
        assert_eq!(pts, vec![(pt("0:0:1"), 1)]);
        let pts = intersection_points(&[p("x2", 3), p("x1^2 - x0*x2", 3)]).unwrap();
        assert_eq!(pts, vec![(pt("1:0:0"), 2)]);
    }

    #[test]
    fn conic_pair_points() {
        // Two conics through the four points [±1:±1:1].
        let c1 = p("x0^2 - x2^2", 3);
        let c2 = p("x1^2 - x2^2", 3);
        let pts = intersection_points(&[c1, c2]).unwrap();
        let expected: Vec<(ProjPoint, u32)> = ["1:-1:-1", "1:-1:1", "1:1:-1", "1:1:1"]
            .iter()
            .map(|s| (pt(s), 1))
            .collect();
        assert_eq!(pts, expected);
    }

    #[test]
    fn tangent_conics_carry_multiplicity() {
        // x1^2 = x0 x2 and x1^2 = x0 x2 + x2^2 meet only at [1:0:0], with multiplicity 4.
        let pts = intersection_points(&[p("x1^2 - x0*x2", 3), p("x1^2 - x0*x2 - x2^2", 3)]).unwrap();
        assert_eq!(pts, vec![(pt("1:0:0"), 4)]);
    }

    #[test]
    fn irrational_points_are_unsupported() {
        let r = intersection_points(&[p("x1", 3), p("x0^2 - 2*x2^2", 3)]);
        assert!(matches!(r, Err(Error::Unsupported(_))));
        let r = intersection_points(&[p("x0^2 + x1^2 - x2^2", 3), p("x0^2 - 3*x1^2", 3)]);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn three_space_with_a_plane() {
        let pts = intersection_points(&[
            p("x3", 4),
            p("x0^2 - x2^2 + x1*x3", 4),
            p("x1^2 - x2^2 + x0*x3", 4),
        ])
        .unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|(_, m)| *m == 1));
        assert!(pts.contains(&(pt("1:1:1:0"), 1)));
    }

    #[test]
    fn dimensions() {
        assert_eq!(locus_dimension(&[p("x0", 3)], 3).unwrap().dim, 1);
        assert_eq!(locus_dimension(&[p("x0", 3), p("x1", 3), p("x2", 3)], 3).unwrap().dim, -1);
        assert_eq!(locus_dimension(&[p("x1^2 - x0*x2", 3), p("x1", 3)], 3).unwrap().dim, 0);
        let shared = locus_dimension(&[p("x0*x1", 3), p("x0*x2", 3)], 3).unwrap();
        assert_eq!((shared.dim, shared.exact), (1, true));
        // Two quadrics in P^3 meet in a curve.
        let q = locus_dimension(&[p("x0^2 - x2^2 + x1*x3", 4), p("x1^2 - x2^2 + x0*x3", 4)], 4).unwrap();
        assert_eq!(q.dim, 1);
        // Three conics with no common zero: the partials of a smooth cubic.
        let f = p("x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2", 3);
        let partials: Vec<Poly> = (0..3).map(|i| f.partial(i)).collect();
        assert_eq!(locus_dimension(&partials, 3).unwrap().dim, -1);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let target = UniPoly::new(vec![int(3), int(-1), int(0), int(2)]);
        let samples: Vec<_> = (0..4).map(|k| (int(k), target.eval(&int(k)))).collect();
        assert_eq!(interpolate(&samples), target);
    }
}
