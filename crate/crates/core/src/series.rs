//! Entire functions as polynomials or truncated power series.
//!
//! For `φ = Σ a_i z^i` the Gauss norm in log coordinates is
//! `G(ρ) = max_i (i·ρ - v_p(a_i))`. Its Legendre dual is the Newton polygon,
//! the lower convex hull of the points `(i, v_p(a_i))`: an edge of slope `σ`
//! and horizontal length `ℓ` carries exactly `ℓ` zeros of absolute value
//! `p^σ` (counted in the algebraic closure, so irrational roots are counted
//! correctly without ever being computed).
//!
//! A truncated series knows `a_0..a_N` exactly and a linear lower bound on the
//! valuations of the unknown tail. Every query is certified only for `ρ`
//! strictly below [`TruncatedSeries::reliable_below`]; beyond that the tail
//! could dominate and queries fail with [`Error::Reliability`].

use std::fmt;

use num_traits::{One, Zero};

use crate::field::{valuation, Prime};
use crate::plfun::PLFunction;
use crate::poly::Poly;
use crate::{int, Error, Rational, Result};

/// `v_p(a_i) ≥ slope·i + offset` for every index beyond the truncation degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TailBound {
    pub slope: Rational,
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    /// `None` for an exact polynomial.
    tail: Option<TailBound>,
    prime: Prime,
}

/// Lower convex hull of `(i, v_p(a_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
}

impl NewtonPolygon {
    /// `(slope, horizontal length)` of each edge, slopes strictly increasing.
    pub fn edges(&self) -> Vec<(Rational, usize)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                ((&w[1].1 - &w[0].1) / int(len as i64), len)
            })
            .collect()
    }
}

/// The Gauss norm together with its certified range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussNorm {
    pub function: PLFunction,
    /// Exclusive upper bound on `ρ`; `None` means certified everywhere.
    pub reliable_below: Option<Rational>,
}

impl TruncatedSeries {
    pub fn polynomial(mut coeffs: Vec<Rational>, prime: Prime) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TruncatedSeries {
            coeffs,
            tail: None,
            prime,
        }
    }

    /// Known coefficients `a_0..a_N` with `N = coeffs.len() - 1`, plus a tail bound.
    pub fn truncated(coeffs: Vec<Rational>, tail: TailBound, prime: Prime) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated series needs at least one known coefficient".into(),
            ));
        }
        Ok(TruncatedSeries {
            coeffs,
            tail: Some(tail),
            prime,
        })
    }

    pub fn zero(prime: Prime) -> Self {
        Self::polynomial(Vec::new(), prime)
    }

    pub fn constant(c: Rational, prime: Prime) -> Self {
        Self::polynomial(vec![c], prime)
    }

    /// Parse a literal such as `1 - 3/2*z^2 + z^5` into an exact polynomial.
    pub fn parse(src: &str, prime: Prime) -> Result<Self> {
        Ok(Self::polynomial(crate::literal::parse_series_coeffs(src)?, prime))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn tail(&self) -> Option<&TailBound> {
        self.tail.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.tail.is_none()
    }

    /// `N`; `None` for exact polynomials.
    pub fn truncation_degree(&self) -> Option<usize> {
        self.tail.as_ref().map(|_| self.coeffs.len() - 1)
    }

    /// True if every known coefficient vanishes. For exact polynomials this
    /// means the function is identically zero; for truncated series it means
    /// it cannot be distinguished from zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Order of vanishing at the origin.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `v_p(a_k)` for the first nonzero coefficient `a_k`.
    pub fn leading_valuation(&self) -> Result<i64> {
        let k = self.ord0().ok_or(Error::ZeroSeries)?;
        Ok(valuation(&self.coeffs[k], self.prime).finite().expect("nonzero"))
    }

    /// Indexed valuations of the nonzero known coefficients.
    fn points(&self) -> Vec<(usize, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| valuation(c, self.prime).finite().map(|v| (i, int(v))))
            .collect()
    }

    /// Gauss norm as the maximum of the lines `i·ρ - v_p(a_i)`.
    pub fn gauss_norm(&self) -> Result<GaussNorm> {
        let lines: Vec<PLFunction> = self
            .points()
            .into_iter()
            .map(|(i, v)| PLFunction::affine(int(i as i64), -v))
            .collect();
        if lines.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let function = PLFunction::max_of(&lines)?;
        let reliable_below = self.bound_from(&function);
        Ok(GaussNorm {
            function,
            reliable_below,
        })
    }

    fn bound_from(&self, known: &PLFunction) -> Option<Rational> {
        let tail = self.tail.as_ref()?;
        let n1 = int(self.coeffs.len() as i64);
        // For ρ < slope the tail is dominated by (N+1)(ρ - slope) - offset.
        let tail_line = PLFunction::affine(n1.clone(), -(&n1 * &tail.slope) - &tail.offset);
        let root = (known - &tail_line)
            .decreasing_root()
            .expect("known part grows slower than the tail bound");
        Some(root.min(tail.slope.clone()))
    }

    /// Exclusive bound on `ρ` below which every query is certified.
    pub fn reliable_below(&self) -> Result<Option<Rational>> {
        Ok(self.gauss_norm()?.reliable_below)
    }

    fn check_reliable(&self, rho: &Rational) -> Result<()> {
        if self.tail.is_none() {
            return Ok(());
        }
        if let Some(bound) = self.reliable_below()? {
            if rho >= &bound {
                return Err(Error::Reliability {
                    rho: Box::new(rho.clone()),
                    bound: Box::new(bound),
                });
            }
        }
        Ok(())
    }

    pub fn newton_polygon(&self) -> Result<NewtonPolygon> {
        let pts = self.points();
        if pts.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let mut hull: Vec<(usize, Rational)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                // Drop b unless it lies strictly below the segment a -> p.
                let lhs = (&b.1 - &a.1) * int((p.0 - a.0) as i64);
                let rhs = (&p.1 - &a.1) * int((b.0 - a.0) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(NewtonPolygon { vertices: hull })
    }

    /// Number of zeros (with multiplicity) in the closed disc `|z| ≤ p^ρ`:
    /// the largest index attaining `max_i (iρ - v_p(a_i))`.
    pub fn zero_count(&self, rho: &Rational) -> Result<usize> {
        self.check_reliable(rho)?;
        let pts = self.points();
        let mut best: Option<(Rational, usize)> = None;
        for (i, v) in pts {
            let val = int(i as i64) * rho - v;
            if best.as_ref().is_none_or(|(b, _)| &val >= b) {
                best = Some((val, i));
            }
        }
        best.map(|(_, i)| i).ok_or(Error::ZeroSeries)
    }

    /// `N(ρ) = ord_0·ρ + Σ_edges ℓ·max(0, ρ - σ)`, the logarithmic counting
    /// function built from the Newton polygon.
    pub fn counting_pl(&self) -> Result<PLFunction> {
        let poly = self.newton_polygon()?;
        let ord = poly.vertices[0].0;
        let mut breakpoints = Vec::new();
        let mut slopes = vec![int(ord as i64)];
        let mut acc = ord;
        for (sigma, len) in poly.edges() {
            acc += len;
            breakpoints.push(sigma);
            slopes.push(int(acc as i64));
        }
        let anchor = match breakpoints.first() {
            Some(b) => (b.clone(), int(ord as i64) * b),
            None => (Rational::zero(), Rational::zero()),
        };
        PLFunction::from_parts(breakpoints, slopes, anchor)
    }

    /// Global bound `v_p(a_i) ≥ slope·i + c` over all indices, known or not.
    fn global_offset(&self, slope: &Rational) -> Rational {
        let known = self
            .points()
            .into_iter()
            .map(|(i, v)| v - slope * int(i as i64))
            .min();
        match (&self.tail, known) {
            (Some(t), Some(k)) => t.offset.clone().min(k),
            (Some(t), None) => t.offset.clone(),
            (None, Some(k)) => k,
            (None, None) => Rational::zero(),
        }
    }

    fn combined_tail(&self, other: &Self) -> Option<(usize, Rational)> {
        let n = match (self.truncation_degree(), other.truncation_degree()) {
            (None, None) => return None,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let slope = match (&self.tail, &other.tail) {
            (Some(a), Some(b)) => a.slope.clone().min(b.slope.clone()),
            (Some(a), None) | (None, Some(a)) => a.slope.clone(),
            (None, None) => unreachable!(),
        };
        Some((n, slope))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixing different primes");
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |s: &Self, i: usize| s.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        match self.combined_tail(other) {
            None => Self::polynomial(
                (0..len).map(|i| get(self, i) + get(other, i)).collect(),
                self.prime,
            ),
            Some((n, slope)) => {
                let offset = self.global_offset(&slope).min(other.global_offset(&slope));
                TruncatedSeries {
                    coeffs: (0..=n).map(|i| get(self, i) + get(other, i)).collect(),
                    tail: Some(TailBound { slope, offset }),
                    prime: self.prime,
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixing different primes");
        let conv = |n: usize| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); n];
            for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in other.coeffs.iter().enumerate() {
                    if i + j < n {
                        out[i + j] += a * b;
                    }
                }
            }
            out
        };
        match self.combined_tail(other) {
            None => {
                if self.coeffs.is_empty() || other.coeffs.is_empty() {
                    return Self::zero(self.prime);
                }
                Self::polynomial(conv(self.coeffs.len() + other.coeffs.len() - 1), self.prime)
            }
            Some((n, slope)) => {
                let offset = self.global_offset(&slope) + other.global_offset(&slope);
                TruncatedSeries {
                    coeffs: conv(n + 1),
                    tail: Some(TailBound { slope, offset }),
                    prime: self.prime,
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.prime);
        }
        let v = int(valuation(c, self.prime).finite().expect("nonzero"));
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            tail: self.tail.as_ref().map(|t| TailBound {
                slope: t.slope.clone(),
                offset: &t.offset + v,
            }),
            prime: self.prime,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rational::one(), self.prime);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `true` if `other = λ·self` for some rational `λ` (over known coefficients).
    pub fn proportional_to(&self, other: &Self) -> bool {
        let Some(k) = self.ord0() else {
            return other.is_zero();
        };
        let lambda = match other.coeffs.get(k) {
            Some(c) if !c.is_zero() => c / &self.coeffs[k],
            _ => return false,
        };
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = other.coeffs.get(i).cloned().unwrap_or_default();
            a * &lambda == b
        })
    }
}

/// `Q(f_0, …, f_n)` for a homogeneous polynomial `Q` and entire components `f_i`.
pub fn compose_homogeneous(q: &Poly, components: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    if q.nvars() != components.len() {
        return Err(Error::ArityMismatch {
            expected: q.nvars(),
            found: components.len(),
        });
    }
    let prime = components
        .first()
        .ok_or_else(|| Error::InvalidArgument("no components".into()))?
        .prime();
    let mut powers: Vec<Vec<TruncatedSeries>> = components
        .iter()
        .map(|f| vec![TruncatedSeries::constant(Rational::one(), f.prime())])
        .collect();
    let mut acc = TruncatedSeries::zero(prime);
    for (exps, c) in q.terms() {
        let mut term = TruncatedSeries::constant(c.clone(), prime);
        for (i, &k) in exps.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&components[i]);
                powers[i].push(next);
            }
            term = term.mul(&powers[i][k as usize]);
        }
        acc = acc.add(&term);
    }
    if acc.tail.is_none() {
        acc = TruncatedSeries::polynomial(acc.coeffs, prime);
    }
    Ok(acc)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::series_to_string(&self.coeffs))?;
        if let Some(n) = self.truncation_degree() {
            write!(f, " + O(z^{})", n + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn s(lit: &str, p: u64) -> TruncatedSeries {
        TruncatedSeries::parse(lit, pr(p)).unwrap()
    }

    fn lines(spec: &[(i64, i64)]) -> PLFunction {
        PLFunction::max_of(
            &spec
                .iter()
                .map(|&(a, b)| PLFunction::affine(int(a), int(b)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn gauss_norm_examples() {
        assert_eq!(s("z", 2).gauss_norm().unwrap().function, PLFunction::identity());
        assert_eq!(s("1 + z", 2).gauss_norm().unwrap().function, lines(&[(0, 0), (1, 0)]));
        let g = s("2 + z + 4*z^2", 2).gauss_norm().unwrap();
        assert_eq!(g.function, lines(&[(0, -1), (1, 0), (2, -2)]));
        assert_eq!(g.function.breakpoints(), &[int(-1), int(2)]);
        assert_eq!(g.reliable_below, None);
        assert_eq!(s("0", 2).gauss_norm(), Err(Error::ZeroSeries));
    }

    #[test]
    fn newton_polygon_examples() {
        assert_eq!(s("z^3", 2).newton_polygon().unwrap().vertices, vec![(3, int(0))]);
        assert_eq!(
            s("z^2 - 3*z + 2", 2).newton_polygon().unwrap().vertices,
            vec![(0, int(1)), (1, int(0)), (2, int(0))]
        );
        let np = s("2 + z + 4*z^2", 2).newton_polygon().unwrap();
        assert_eq!(np.vertices, vec![(0, int(1)), (1, int(0)), (2, int(2))]);
        assert_eq!(np.edges(), vec![(int(-1), 1), (int(2), 1)]);
        // collinear middle point is not a vertex
        assert_eq!(
            s("1 + 2*z + 4*z^2", 2).newton_polygon().unwrap().vertices,
            vec![(0, int(0)), (2, int(2))]
        );
    }

    #[test]
    fn zero_count_examples() {
        let cube = s("z^3", 2);
        for rho in [-5, 0, 7] {
            assert_eq!(cube.zero_count(&int(rho)).unwrap(), 3);
        }
        let q = s("z^2 - 3*z + 2", 2);
        assert_eq!(q.zero_count(&int(-2)).unwrap(), 0);
        assert_eq!(q.zero_count(&int(-1)).unwrap(), 1);
        assert_eq!(q.zero_count(&ratio(-1, 2)).unwrap(), 1);
        assert_eq!(q.zero_count(&int(0)).unwrap(), 2);
        assert_eq!(s("1", 3).zero_count(&int(100)).unwrap(), 0);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(s("z", 2).counting_pl().unwrap(), PLFunction::identity());
        let n = s("z^2 - 3*z + 2", 2).counting_pl().unwrap();
        assert_eq!(n, &PLFunction::hinge(int(-1)) + &PLFunction::hinge(int(0)));
        assert_eq!(s("1 + z", 2).counting_pl().unwrap(), PLFunction::hinge(int(0)));
        assert_eq!(s("7", 5).counting_pl().unwrap(), PLFunction::constant(int(0)));
    }

    #[test]
    fn compose_examples() {
        let p2 = pr(2);
        let f = [s("1", 2), s("z", 2)];
        assert_eq!(compose_homogeneous(&Poly::parse("x1", 2).unwrap(), &f).unwrap(), s("z", 2));
        assert_eq!(compose_homogeneous(&Poly::parse("x0 - x1", 2).unwrap(), &f).unwrap(), s("1 - z", 2));
        let g = [s("1", 2), s("z", 2), s("z^3", 2)];
        let c = Poly::parse("x1^2 - x0*x2", 3).unwrap();
        assert_eq!(compose_homogeneous(&c, &g).unwrap(), s("z^2 - z^3", 2));
        assert_eq!(
            compose_homogeneous(&c, &f),
            Err(Error::ArityMismatch { expected: 3, found: 2 })
        );
        let _ = p2;
    }

    fn exp_like(n: usize) -> TruncatedSeries {
        // a_i = p^(i^2)-ish decay: a_i = 2^(2i), tail bound v ≥ 2i.
        let coeffs: Vec<Rational> = (0..=n).map(|i| Rational::from_integer(num_bigint::BigInt::from(4u32).pow(i as u32))).collect();
        TruncatedSeries::truncated(
            coeffs,
            TailBound {
                slope: int(2),
                offset: int(0),
            },
            pr(2),
        )
        .unwrap()
    }

    #[test]
    fn truncated_series_reliability() {
        // All |a_i| r^i lines meet at ρ = 2: certified strictly below 2.
        let f = exp_like(5);
        let g = f.gauss_norm().unwrap();
        assert_eq!(g.reliable_below, Some(int(2)));
        assert_eq!(f.zero_count(&int(1)).unwrap(), 0);
        assert!(matches!(f.zero_count(&int(2)), Err(Error::Reliability { .. })));

        // 1 + z + (tail with v ≥ 10 i): zero at ρ = 0 is certified.
        let h = TruncatedSeries::truncated(
            vec![int(1), int(1)],
            TailBound {
                slope: int(10),
                offset: int(0),
            },
            pr(3),
        )
        .unwrap();
        let b = h.reliable_below().unwrap().unwrap();
        assert!(b > int(0));
        assert_eq!(h.zero_count(&int(0)).unwrap(), 1);
        assert_eq!(h.zero_count(&int(-1)).unwrap(), 0);
    }

    #[test]
    fn truncated_arithmetic_propagates_bounds() {
        let f = exp_like(4);
        let one_plus_z = s("1 + z", 2);
        let prod = f.mul(&one_plus_z);
        assert_eq!(prod.truncation_degree(), Some(4));
        // Known coefficients agree with the exact product up to degree 4.
        let exact = exp_like(10).mul(&one_plus_z);
        assert_eq!(&prod.coeffs()[..5], &exact.coeffs()[..5]);
        let bound = prod.reliable_below().unwrap().unwrap();
        assert!(bound <= int(2));
        // Counts agree with the longer truncation wherever certified.
        for k in -6..4 {
            let rho = ratio(k, 2);
            if rho < bound {
                assert_eq!(prod.zero_count(&rho).unwrap(), exact.zero_count(&rho).unwrap());
            }
        }
        let sum = f.add(&one_plus_z);
        assert_eq!(sum.truncation_degree(), Some(4));
        assert_eq!(f.scale(&int(2)).tail().unwrap().offset, int(1));
    }

    #[test]
    fn proportionality() {
        assert!(s("1 + z", 2).proportional_to(&s("3 + 3*z", 2)));
        assert!(!s("1 + z", 2).proportional_to(&s("1 - z", 2)));
        assert!(!s("1", 2).proportional_to(&s("z", 2)));
    }
}
