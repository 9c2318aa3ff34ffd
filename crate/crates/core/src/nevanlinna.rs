//! Order, proximity and counting functions of an analytic curve `f: K → P^n`.
//!
//! With `ρ = log_p r` and a reduced representation `(f_0, …, f_n)`:
//!
//! * `T_f(ρ) = max_i log_p |f_i|_r`
//! * `m_f(ρ, D) = d·T_f(ρ) - log_p |Q∘f|_r`
//! * `N_f(ρ, D)` is the logarithmic zero count of `Q∘f`
//!
//! Jensen's formula on the Newton polygon gives `N_f - log_p|Q∘f|_r = v_p(a_k)`
//! for the first nonzero coefficient `a_k` of `Q∘f`, so the First Main
//! Theorem `m + N = d·T + c` holds with the exact constant `c = v_p(a_k)`.

use num_traits::Zero;

use crate::geometry::Hypersurface;
use crate::plfun::PLFunction;
use crate::series::{compose_homogeneous, TruncatedSeries};
use crate::upoly::UniPoly;
use crate::{int, Error, Prime, Rational, Result};

/// A reduced representation `(f_0, …, f_n)` of a curve in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveCurve {
    components: Vec<TruncatedSeries>,
    prime: Prime,
    nonconstant: bool,
}

impl ProjectiveCurve {
    /// Validate a component tuple.
    ///
    /// Components must not all vanish and must share no zero. For exact
    /// polynomials the gcd is computed; truncated series are only required
    /// not to vanish together at the origin.
    pub fn new(components: Vec<TruncatedSeries>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidCurve("a curve in P^n needs n+1 ≥ 2 components".into()));
        }
        let prime = components[0].prime();
        if components.iter().any(|c| c.prime() != prime) {
            return Err(Error::InvalidCurve("components use different primes".into()));
        }
        if components.iter().all(TruncatedSeries::is_zero) {
            return Err(Error::InvalidCurve("all components vanish".into()));
        }
        if components.iter().all(TruncatedSeries::is_exact) {
            let g = components.iter().fold(UniPoly::zero(), |acc, c| {
                UniPoly::gcd(&acc, &UniPoly::new(c.coeffs().to_vec()))
            });
            if g.degree().unwrap_or(0) > 0 {
                return Err(Error::InvalidCurve(format!(
                    "components share the factor {g}, so the representation is not reduced"
                )));
            }
        } else if components.iter().all(|c| c.coeffs().first().is_none_or(Zero::is_zero)) {
            return Err(Error::InvalidCurve("components share a zero at the origin".into()));
        }
        let nonzero: Vec<&TruncatedSeries> = components.iter().filter(|c| !c.is_zero()).collect();
        let nonconstant = nonzero.iter().any(|c| !nonzero[0].proportional_to(c));
        Ok(ProjectiveCurve {
            components,
            prime,
            nonconstant,
        })
    }

    /// Parse one series literal per component.
    pub fn parse<S: AsRef<str>>(literals: &[S], prime: Prime) -> Result<Self> {
        Self::new(
            literals
                .iter()
                .map(|s| TruncatedSeries::parse(s.as_ref(), prime))
                .collect::<Result<_>>()?,
        )
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn is_nonconstant(&self) -> bool {
        self.nonconstant
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(TruncatedSeries::is_exact)
    }

    /// Same curve with every component multiplied by `c ≠ 0`.
    pub fn rescaled(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("rescaling by zero".into()));
        }
        Self::new(self.components.iter().map(|f| f.scale(c)).collect())
    }

    /// `Q∘f`, or a containment error when it vanishes identically.
    pub fn compose(&self, d: &Hypersurface) -> Result<TruncatedSeries> {
        let qf = compose_homogeneous(d.poly(), &self.components)?;
        if qf.is_zero() {
            let note = match qf.truncation_degree() {
                Some(n) => format!("Q∘f vanishes up to degree {n}"),
                None => "Q∘f vanishes identically".into(),
            };
            return Err(Error::Containment {
                divisor: d.name().to_string(),
                note,
            });
        }
        Ok(qf)
    }

    /// Whether the image lies in `D` (exactly for polynomials, up to the
    /// truncation degree otherwise).
    pub fn lies_in(&self, d: &Hypersurface) -> Result<bool> {
        match self.compose(d) {
            Ok(_) => Ok(false),
            Err(Error::Containment { .. }) => Ok(true),
            Err(e) => Err(e),
        }
    }

    /// Smallest reliability bound among the components.
    pub fn reliable_below(&self) -> Result<Option<Rational>> {
        let mut bound: Option<Rational> = None;
        for c in self.components.iter().filter(|c| !c.is_zero()) {
            if let Some(b) = c.reliable_below()? {
                bound = Some(bound.map_or(b.clone(), |a| a.min(b)));
            }
        }
        Ok(bound)
    }
}

/// `T_f = max_i G(f_i)`.
pub fn order_function(f: &ProjectiveCurve) -> Result<PLFunction> {
    let norms = f
        .components
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| Ok(c.gauss_norm()?.function))
        .collect::<Result<Vec<_>>>()?;
    PLFunction::max_of(&norms)
}

/// `m_f(·, D) = d·T_f - G(Q∘f)`.
pub fn proximity(f: &ProjectiveCurve, d: &Hypersurface) -> Result<PLFunction> {
    proximity_from(&order_function(f)?, &f.compose(d)?, d)
}

fn proximity_from(t: &PLFunction, qf: &TruncatedSeries, d: &Hypersurface) -> Result<PLFunction> {
    Ok(PLFunction::combine(t, &qf.gauss_norm()?.function, &int(d.degree() as i64), &int(-1)))
}

/// `N_f(·, D)` from the Newton polygon of `Q∘f`.
pub fn counting(f: &ProjectiveCurve, d: &Hypersurface) -> Result<PLFunction> {
    f.compose(d)?.counting_pl()
}

/// The exact First Main Theorem constant `m + N - d·T`.
pub fn fmt_verify(f: &ProjectiveCurve, d: &Hypersurface) -> Result<Rational> {
    let qf = f.compose(d)?;
    let t = order_function(f)?;
    let m = proximity_from(&t, &qf, d)?;
    let n = qf.counting_pl()?;
    let diff = &(&m + &n) - &t.scale(&int(d.degree() as i64));
    let c = diff.as_constant().cloned().ok_or_else(|| {
        Error::Inconsistent(format!("m + N - d·T is not constant for {}: {diff}", d.name()))
    })?;
    let expected = int(qf.leading_valuation()?);
    if c != expected {
        return Err(Error::Inconsistent(format!(
            "First Main Theorem constant {c} differs from the leading valuation {expected}"
        )));
    }
    Ok(c)
}

/// `m_f(·, D)` stays bounded as `ρ → ∞`.
pub fn is_bounded_proximity(f: &ProjectiveCurve, d: &Hypersurface) -> Result<bool> {
    Ok(proximity(f, d)?.final_slope().is_zero())
}

/// Slope comparison behind `N_f(r, D) ≤ d·T_f(r) + O(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingBound {
    pub counting_slope: Rational,
    pub bound_slope: Rational,
    pub holds: bool,
    /// `sup (N - d·T)` over `[0, R]`.
    pub gap: Rational,
}

pub fn fmt_counting_bound(f: &ProjectiveCurve, d: &Hypersurface, r: &Rational) -> Result<CountingBound> {
    let n = counting(f, d)?;
    let dt = order_function(f)?.scale(&int(d.degree() as i64));
    let counting_slope = n.final_slope();
    let bound_slope = dt.final_slope();
    Ok(CountingBound {
        holds: counting_slope <= bound_slope,
        gap: PLFunction::sup_gap(&n, &dt, &Rational::zero(), r)?,
        counting_slope,
        bound_slope,
    })
}

/// Nevanlinna data of one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorProfile {
    pub name: String,
    pub degree: u32,
    pub proximity: PLFunction,
    pub counting: PLFunction,
    pub fmt_constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NevanlinnaProfile {
    pub order: PLFunction,
    pub divisors: Vec<DivisorProfile>,
    /// Exclusive bound on `ρ` for truncated components; `None` when exact.
    pub reliable_below: Option<Rational>,
}

pub fn profile(f: &ProjectiveCurve, divisors: &[Hypersurface]) -> Result<NevanlinnaProfile> {
    Ok(NevanlinnaProfile {
        order: order_function(f)?,
        divisors: divisors
            .iter()
            .map(|d| {
                Ok(DivisorProfile {
                    name: d.name().to_string(),
                    degree: d.degree(),
                    proximity: proximity(f, d)?,
                    counting: counting(f, d)?,
                    fmt_constant: fmt_verify(f, d)?,
                })
            })
            .collect::<Result<_>>()?,
        reliable_below: f.reliable_below()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn curve(lits: &[&str], p: u64) -> ProjectiveCurve {
        ProjectiveCurve::parse(lits, Prime::new(p).unwrap()).unwrap()
    }

    fn hs(src: &str, n: usize) -> Hypersurface {
        Hypersurface::parse("D", src, n).unwrap()
    }

    fn pl_max(lines: &[(i64, i64)]) -> PLFunction {
        PLFunction::max_of(
            &lines
                .iter()
                .map(|&(a, b)| PLFunction::affine(int(a), int(b)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_function(&curve(&["1", "z"], 2)).unwrap(), pl_max(&[(0, 0), (1, 0)]));
        assert_eq!(order_function(&curve(&["1", "z", "z^3"], 2)).unwrap(), pl_max(&[(0, 0), (3, 0)]));
        assert_eq!(order_function(&curve(&["2", "z"], 2)).unwrap(), pl_max(&[(0, -1), (1, 0)]));
    }

    #[test]
    fn proximity_examples() {
        let f = curve(&["1", "z"], 2);
        assert_eq!(proximity(&f, &hs("x1", 1)).unwrap(), pl_max(&[(-1, 0), (0, 0)]));
        assert_eq!(proximity(&f, &hs("x0", 1)).unwrap(), pl_max(&[(0, 0), (1, 0)]));
        let g = curve(&["1", "z", "z^3"], 2);
        let expected = &pl_max(&[(0, 0), (6, 0)]) - &pl_max(&[(2, 0), (3, 0)]);
        assert_eq!(proximity(&g, &hs("x1^2 - x0*x2", 2)).unwrap(), expected);
    }

    #[test]
    fn counting_examples() {
        let f = curve(&["1", "z"], 2);
        assert_eq!(counting(&f, &hs("x1", 1)).unwrap(), PLFunction::identity());
        assert_eq!(counting(&f, &hs("x0 - x1", 1)).unwrap(), pl_max(&[(0, 0), (1, 0)]));
        let g = curve(&["1", "z", "z^3"], 2);
        let expected = &PLFunction::affine(int(2), int(0)) + &pl_max(&[(0, 0), (1, 0)]);
        assert_eq!(counting(&g, &hs("x1^2 - x0*x2", 2)).unwrap(), expected);
    }

    #[test]
    fn fmt_examples() {
        let f = curve(&["1", "z"], 2);
        assert_eq!(fmt_verify(&f, &hs("x1", 1)).unwrap(), int(0));
        assert_eq!(fmt_verify(&f, &hs("x0 - x1", 1)).unwrap(), int(0));
        assert_eq!(fmt_verify(&f, &hs("2*x0", 1)).unwrap(), int(1));
    }

    #[test]
    fn boundedness_examples() {
        let f = curve(&["1", "z"], 2);
        assert!(is_bounded_proximity(&f, &hs("x1", 1)).unwrap());
        assert!(!is_bounded_proximity(&f, &hs("x0", 1)).unwrap());
        assert!(is_bounded_proximity(&f, &hs("x0 - x1", 1)).unwrap());
    }

    #[test]
    fn counting_bound_examples() {
        let r = int(32);
        let f = curve(&["1", "z"], 2);
        let b = fmt_counting_bound(&f, &hs("x1", 1), &r).unwrap();
        assert_eq!((b.counting_slope, b.bound_slope, b.gap), (int(1), int(1), int(0)));
        let g = curve(&["1", "z", "z^3"], 2);
        let b = fmt_counting_bound(&g, &hs("x1^2 - x0*x2", 2), &r).unwrap();
        assert_eq!((b.counting_slope.clone(), b.bound_slope.clone()), (int(3), int(6)));
        assert!(b.holds);
        let b = fmt_counting_bound(&f, &hs("x0", 1), &r).unwrap();
        assert_eq!((b.counting_slope, b.bound_slope), (int(0), int(1)));
    }

    #[test]
    fn containment_and_validation() {
        let f = curve(&["1", "z", "z^2"], 3);
        assert!(matches!(proximity(&f, &hs("x1^2 - x0*x2", 2)), Err(Error::Containment { .. })));
        let p = Prime::new(2).unwrap();
        assert!(ProjectiveCurve::parse(&["z", "z^2"], p).is_err());
        assert!(ProjectiveCurve::parse(&["0", "0"], p).is_err());
        assert!(!ProjectiveCurve::parse(&["1", "2"], p).unwrap().is_nonconstant());
        assert!(ProjectiveCurve::parse(&["1", "0", "z"], p).unwrap().is_nonconstant());
    }

    #[test]
    fn rescaling_shifts_by_constants() {
        let f = curve(&["1 + z", "z^2", "3 - z^3"], 3);
        let g = f.rescaled(&ratio(9, 2)).unwrap();
        let d = hs("x0*x1 - x2^2", 2);
        for (a, b) in [
            (order_function(&f).unwrap(), order_function(&g).unwrap()),
            (proximity(&f, &d).unwrap(), proximity(&g, &d).unwrap()),
            (counting(&f, &d).unwrap(), counting(&g, &d).unwrap()),
        ] {
            assert!((&a - &b).as_constant().is_some());
        }
    }
}
