//! Dense univariate polynomials over `Q`: gcd, resultant, rational roots.
//!
//! These are the elimination primitives behind the geometry module: line
//! sections of hypersurfaces become binary forms, and plane-curve
//! intersections are projected to resultants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{linalg, Error, Rational, Result};

/// Coefficients in ascending order; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - r`.
    pub fn linear_factor(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let inv = Rational::one() / d.lead();
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &inv;
            if !q.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; the gcd of two zeros is zero.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Resultant via the Sylvester determinant. Both inputs must be nonzero.
    pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rational {
        let (m, n) = (f.degree().expect("nonzero"), g.degree().expect("nonzero"));
        if m + n == 0 {
            return Rational::one();
        }
        let size = m + n;
        let mut rows = vec![vec![Rational::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs.iter().rev().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs.iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        linalg::determinant(&rows)
    }

    /// Rational roots with multiplicities, in increasing order.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
        }
        let sqfree = {
            let g = UniPoly::gcd(self, &self.derivative());
            self.div_rem(&g).0
        };
        let mut roots = Vec::new();
        for r in candidate_roots(&sqfree)? {
            if sqfree.eval(&r).is_zero() {
                let mut m = 0;
                let mut rest = self.clone();
                let lin = UniPoly::linear_factor(&r);
                loop {
                    let (q, rem) = rest.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    m += 1;
                }
                roots.push((r, m));
            }
        }
        roots.sort();
        Ok(roots)
    }
}

fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const MAX_FACTOR: u128 = 1 << 80;

fn divisors(n: &BigInt) -> Result<Vec<u128>> {
    let n = n
        .abs()
        .to_u128()
        .filter(|&v| v <= MAX_FACTOR)
        .ok_or_else(|| Error::Unsupported("coefficient too large for rational root search".into()))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
        if d > 50_000_000 {
            return Err(Error::Unsupported("coefficient too large for rational root search".into()));
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Candidates `±a/b` with `a | a_0` and `b | a_n` (rational root theorem),
/// after removing the root at zero.
fn candidate_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    let ints = integer_coeffs(p);
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rational::zero());
    }
    let a0 = &ints[low];
    let an = ints.last().expect("nonzero");
    if ints.len() - low <= 1 {
        return Ok(out);
    }
    let num_divs = divisors(a0)?;
    let den_divs = divisors(an)?;
    for a in &num_divs {
        for b in &den_divs {
            let r = Rational::new(BigInt::from(*a), BigInt::from(*b));
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &-rhs
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::series_to_string(&self.coeffs))
    }
}

/// A binary form `Σ c_k x^{d-k} y^k` of fixed degree `d`, stored through its
/// dehomogenization `Σ c_k t^k` at `x = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub dehomogenized: UniPoly,
}

/// A root `[x : y]` of a binary form, `[1 : t]` or the point `[0 : 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BinaryRoot {
    Finite(Rational),
    AtInfinity,
}

impl BinaryRoot {
    pub fn coords(&self) -> [Rational; 2] {
        match self {
            BinaryRoot::Finite(t) => [Rational::one(), t.clone()],
            BinaryRoot::AtInfinity => [Rational::zero(), Rational::one()],
        }
    }
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.dehomogenized.is_zero()
    }

    /// Rational roots with multiplicity plus the number of roots (with
    /// multiplicity) that are not rational.
    pub fn rational_roots(&self) -> Result<(Vec<(BinaryRoot, u32)>, u32)> {
        let mut roots: Vec<(BinaryRoot, u32)> = self
            .dehomogenized
            .rational_roots()?
            .into_iter()
            .map(|(r, m)| (BinaryRoot::Finite(r), m))
            .collect();
        let deg_t = self.dehomogenized.degree().expect("nonzero") as u32;
        if deg_t < self.degree {
            roots.push((BinaryRoot::AtInfinity, self.degree - deg_t));
        }
        let found: u32 = roots.iter().map(|(_, m)| m).sum();
        Ok((roots, self.degree - found))
    }

    /// The gcd of several binary forms, as a form of the appropriate degree.
    pub fn gcd(forms: &[BinaryForm]) -> BinaryForm {
        let mut g = UniPoly::zero();
        let mut inf = u32::MAX;
        for f in forms {
            g = UniPoly::gcd(&g, &f.dehomogenized);
            let deg_t = f.dehomogenized.degree().map_or(0, |d| d as u32);
            inf = inf.min(if f.is_zero() { u32::MAX } else { f.degree - deg_t });
        }
        if inf == u32::MAX {
            inf = 0;
        }
        let deg = g.degree().map_or(0, |d| d as u32) + inf;
        BinaryForm {
            degree: deg,
            dehomogenized: g,
        }
    }
}
