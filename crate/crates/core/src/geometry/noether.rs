//! Exact solver for identities `Π H_k = Σ_i R_i · D_i^{e_i}`.
//!
//! The cofactors `R_i` are unknown homogeneous polynomials whose degrees are
//! forced by the left-hand side. Their coefficients enter linearly, so the
//! identity becomes one linear equation per monomial of the target degree.

use std::fmt;

use num_traits::Zero;

use super::product;
use crate::linalg;
use crate::poly::Poly;
use crate::{Error, Rational, Result};

/// One summand `cofactor · generator^power` of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherTerm {
    pub generator: Poly,
    pub power: u32,
    pub cofactor: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherDecomposition {
    /// The left-hand product.
    pub lhs: Poly,
    pub terms: Vec<NoetherTerm>,
    /// Set once substituting back leaves a zero residual.
    pub certified: bool,
}

impl NoetherDecomposition {
    /// The cofactor of term `i` when it is a constant.
    pub fn scalar(&self, i: usize) -> Option<Rational> {
        let c = &self.terms.get(i)?.cofactor;
        match c.homogeneous_degree() {
            Some(0) => Some(c.coeff(&vec![0; c.nvars()])),
            None if c.is_zero() => Some(Rational::zero()),
            _ => None,
        }
    }

    /// `lhs - Σ cofactor·generator^power`.
    pub fn residual(&self) -> Poly {
        self.terms.iter().fold(self.lhs.clone(), |acc, t| {
            &acc - &(&t.cofactor * &t.generator.pow(t.power))
        })
    }
}

impl fmt::Display for NoetherDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let pow = if t.power == 1 { String::new() } else { format!("^{}", t.power) };
                format!("({})*({}){pow}", t.cofactor, t.generator)
            })
            .collect();
        write!(f, "{} = {}", self.lhs, rhs.join(" + "))
    }
}

/// Find cofactors with `Π lhs = Σ R_i·basis_i^{e_i}` exactly.
///
/// Free unknowns are set to zero. Fails with [`Error::NoDecomposition`] when
/// the linear system is inconsistent.
pub fn noether_decompose(lhs: &[Poly], basis: &[(Poly, u32)]) -> Result<NoetherDecomposition> {
    let nvars = lhs
        .first()
        .or(basis.first().map(|(p, _)| p))
        .ok_or_else(|| Error::InvalidArgument("empty decomposition request".into()))?
        .nvars();
    let target = product(lhs, nvars);
    let t = target
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("left-hand side is zero or not homogeneous".into()))?;

    // Columns: (term index, cofactor monomial, expanded polynomial).
    let mut columns: Vec<(usize, Vec<u32>, Poly)> = Vec::new();
    for (idx, (g, e)) in basis.iter().enumerate() {
        let gd = g
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidArgument("basis polynomial is not homogeneous".into()))?;
        let Some(cdeg) = t.checked_sub(gd * e) else {
            continue;
        };
        let ge = g.pow(*e);
        for mono in Poly::monomials_of_degree(nvars, cdeg) {
            let col = &Poly::monomial(nvars, mono.clone(), Rational::from_integer(1.into())) * &ge;
            columns.push((idx, mono, col));
        }
    }
    let rows = Poly::monomials_of_degree(nvars, t);
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| columns.iter().map(|(_, _, col)| col.coeff(m)).collect())
        .collect();
    let b: Vec<Rational> = rows.iter().map(|m| target.coeff(m)).collect();
    let x = if columns.is_empty() {
        target.is_zero().then(Vec::new)
    } else {
        linalg::solve(&a, &b)
    }
    .ok_or_else(|| {
        Error::NoDecomposition(format!("no cofactors of the forced degrees reach degree {t}"))
    })?;

    let mut cofactors: Vec<Poly> = vec![Poly::zero(nvars); basis.len()];
    for ((idx, mono, _), c) in columns.iter().zip(&x) {
        cofactors[*idx] = &cofactors[*idx] + &Poly::monomial(nvars, mono.clone(), c.clone());
    }
    let mut dec = NoetherDecomposition {
        lhs: target,
        terms: basis
            .iter()
            .zip(cofactors)
            .map(|((g, e), cofactor)| NoetherTerm {
                generator: g.clone(),
                power: *e,
                cofactor,
            })
            .collect(),
        certified: false,
    };
    if !dec.residual().is_zero() {
        return Err(Error::Inconsistent("decomposition residual is nonzero".into()));
    }
    dec.certified = true;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn p(src: &str) -> Poly {
        Poly::parse(src, 3).unwrap()
    }

    #[test]
    fn line_conic_multipliers() {
        let dec = noether_decompose(&[p("x2"), p("x0")], &[(p("x1^2 - x0*x2"), 1), (p("x1"), 2)]).unwrap();
        assert!(dec.certified);
        assert_eq!(dec.scalar(0), Some(int(-1)));
        assert_eq!(dec.scalar(1), Some(int(1)));

        let flipped = noether_decompose(&[p("x2"), p("x0")], &[(p("x0*x2 - x1^2"), 1), (p("x1"), 2)]).unwrap();
        assert_eq!(flipped.scalar(0), Some(int(1)));
        assert_eq!(flipped.scalar(1), Some(int(1)));
    }

    #[test]
    fn cubic_recovers_linear_cofactor() {
        let c = p("x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2");
        let tangents = [p("x2"), p("x0 - x1"), p("x0 + x1 - x2")];
        let dec = noether_decompose(&tangents, &[(c, 1), (p("x1"), 2)]).unwrap();
        assert!(dec.certified && dec.residual().is_zero());
        assert_eq!(dec.terms[1].cofactor.homogeneous_degree(), Some(1));
        assert!(!dec.scalar(0).unwrap().is_zero());
    }

    #[test]
    fn inconsistent_system_is_reported() {
        // x0^2 does not vanish at [1:0:0], unlike everything in (x1, x2^2).
        let r = noether_decompose(&[p("x0"), p("x0")], &[(p("x1"), 1), (p("x2"), 2)]);
        assert!(matches!(r, Err(Error::NoDecomposition(_))));
    }
}
