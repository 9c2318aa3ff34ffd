//! Sparse multivariate polynomials over `Q` in variables `x0, …, x{n-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{Rational, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, exps: Monomial, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Degree in the single variable `x_i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn gradient_at(&self, point: &[Rational]) -> Vec<Rational> {
        (0..self.nvars).map(|i| self.partial(i).eval(point)).collect()
    }

    /// Substitute `x_i ↦ images[i]`, where all images share a variable set.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Coefficients as a polynomial in `x_i` (ascending powers); each
    /// coefficient keeps all variables, with `x_i` absent.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::take(&mut e2[i]);
            out[k as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Multiply by the least common multiple of denominators and divide by
    /// the integer content; the sign makes the leading term positive.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        let lead_neg = self.leading_coeff().is_negative();
        let factor = Rational::new(
            if lead_neg { -lcm } else { lcm },
            g,
        );
        self.scale(&factor)
    }

    /// Coefficient of the largest monomial in the internal order.
    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// All exponent vectors of total degree `d` in `nvars` variables, in a
    /// fixed order.
    pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for k in (0..=d).rev() {
                prefix.push(k);
                rec(nvars, d - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(nvars, d, &mut Vec::new(), &mut out);
        out
    }

    /// Parse a literal such as `x1^2 - 3/2*x0*x2`. Variables beyond
    /// `nvars` are rejected.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        crate::literal::parse_poly(s, nvars)
    }
}

fn write_term(f: &mut impl fmt::Write, exps: &[u32], c: &Rational, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let mut factors: Vec<String> = Vec::new();
    let is_const = exps.iter().all(|&k| k == 0);
    if !abs.is_one() || is_const {
        factors.push(abs.to_string());
    }
    for (i, &k) in exps.iter().enumerate() {
        match k {
            0 => {}
            1 => factors.push(format!("x{i}")),
            _ => factors.push(format!("x{i}^{k}")),
        }
    }
    f.write_str(&factors.join("*"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, e, c, i == 0)?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &-rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let c = p("x1^2 - x0*x2");
        assert_eq!(c.to_string(), "-x0*x2 + x1^2");
        assert_eq!(Poly::parse(&c.to_string(), 3).unwrap(), c);
        let sq = &p("x0 + x1") * &p("x0 - x1");
        assert_eq!(sq, p("x0^2 - x1^2"));
        assert!((&c - &c).is_zero());
        assert_eq!(p("3/2*x0").to_string(), "3/2*x0");
        assert_eq!(p("-2").to_string(), "-2");
    }

    #[test]
    fn degrees() {
        assert_eq!(p("x1^2 - x0*x2").homogeneous_degree(), Some(2));
        assert_eq!(p("x1 + x0^2").homogeneous_degree(), None);
        assert_eq!(p("x1 + x0^2").total_degree(), Some(2));
        assert_eq!(Poly::zero(3).total_degree(), None);
        assert_eq!(p("x0*x2^3 + x2").degree_in(2), 3);
    }

    #[test]
    fn gradient_and_eval() {
        let c = p("x1^2 - x0*x2");
        assert_eq!(c.gradient_at(&[int(1), int(0), int(0)]), vec![int(0), int(0), int(-1)]);
        assert_eq!(c.eval(&[int(1), int(2), int(4)]), int(0));
    }

    #[test]
    fn substitution() {
        // x = s*(1,0,0) + t*(0,0,1) restricted to x1^2 - x0*x2 gives -s*t.
        let s = Poly::var(2, 0);
        let t = Poly::var(2, 1);
        let zero = Poly::zero(2);
        let r = p("x1^2 - x0*x2").substitute(&[s.clone(), zero, t.clone()]);
        assert_eq!(r, (&s * &t).scale(&int(-1)));
    }

    #[test]
    fn monomial_enumeration() {
        let m = Poly::monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert!(m.iter().all(|e| e.iter().sum::<u32>() == 2));
        assert_eq!(Poly::monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn primitive_clears_denominators() {
        assert_eq!(p("-1/2*x0 + 3/4*x1").primitive(), p("2*x0 - 3*x1"));
        assert_eq!(p("1/3*x2").primitive(), p("x2"));
        assert_eq!(p("6*x0 + 4*x1").primitive(), p("3*x0 + 2*x1"));
        assert_eq!(p("x0*x1").scale(&ratio(-2, 7)).primitive(), p("x0*x1"));
    }

    #[test]
    fn coefficients_in_variable() {
        let cs = p("x0*x2^2 + x1*x2 + x0^2").coefficients_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], p("x0^2"));
        assert_eq!(cs[1], p("x1"));
        assert_eq!(cs[2], p("x0"));
    }
}
