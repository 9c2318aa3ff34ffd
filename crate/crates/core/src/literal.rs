//! Parsers for the two literal grammars used by fixtures and the CLI.
//!
//! * series literals: `1 - 3/2*z^2 + z^5`
//! * homogeneous polynomial literals: `x1^2 - x0*x2`
//!
//! A literal is a signed sum of terms; a term is a `*`-separated product of
//! rational numbers (`num` or `num/den`) and powers of variables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    /// The single series variable `z`.
    Z,
    /// Indexed projective coordinates `x0, x1, …`.
    X { nvars: usize },
}

/// A parsed term: coefficient, exponent vector, and the source slice it came from.
pub(crate) struct RawTerm {
    pub coeff: Rational,
    pub exps: Monomial,
    pub text: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.src[..self.pos].chars().count() + 1,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Rational> {
        let num = match self.digits() {
            Some(n) => n,
            None => return self.err("expected a number"),
        };
        if self.peek() == Some('/') {
            self.bump();
            let den = match self.digits() {
                Some(d) => d,
                None => return self.err("expected a denominator after `/`"),
            };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        match self.digits() {
            Some(n) => match u32::try_from(n) {
                Ok(k) => Ok(k),
                Err(_) => self.err("exponent too large"),
            },
            None => self.err("expected an exponent after `^`"),
        }
    }

    /// One factor: a number or a variable power; multiplies into the term.
    fn factor(&mut self, kind: VarKind, coeff: &mut Rational, exps: &mut Monomial) -> Result<()> {
        self.skip_ws();
        match (self.peek(), kind) {
            (Some(c), _) if c.is_ascii_digit() => {
                *coeff *= self.number()?;
                Ok(())
            }
            (Some('z'), VarKind::Z) => {
                self.bump();
                exps[0] += self.exponent()?;
                Ok(())
            }
            (Some('x'), VarKind::X { nvars }) => {
                self.bump();
                let at = self.pos;
                let idx = match self.digits() {
                    Some(i) => i,
                    None => return self.err("expected a variable index after `x`"),
                };
                let idx = usize::try_from(idx).ok().filter(|&i| i < nvars);
                let Some(idx) = idx else {
                    self.pos = at;
                    return self.err(format!("variable index out of range (ambient has x0..x{})", nvars - 1));
                };
                exps[idx] += self.exponent()?;
                Ok(())
            }
            (Some(c), _) => self.err(format!("unexpected character `{c}`")),
            (None, _) => self.err("unexpected end of input"),
        }
    }
}

fn parse_terms(src: &str, kind: VarKind) -> Result<Vec<RawTerm>> {
    let nvars = match kind {
        VarKind::Z => 1,
        VarKind::X { nvars } => nvars,
    };
    let mut cur = Cursor { src, pos: 0 };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return cur.err("empty literal");
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let mut coeff = Rational::one();
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                coeff = -coeff;
            }
            _ if first => {}
            Some(c) => return cur.err(format!("expected `+` or `-`, found `{c}`")),
            None => break,
        }
        let mut exps = vec![0; nvars];
        cur.factor(kind, &mut coeff, &mut exps)?;
        loop {
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.bump();
                cur.factor(kind, &mut coeff, &mut exps)?;
            } else {
                break;
            }
        }
        terms.push(RawTerm {
            coeff,
            exps,
            text: src[start..cur.pos].trim().trim_start_matches('+').trim().to_string(),
        });
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}

/// Coefficients `a_0, …, a_N` of a series literal in `z`.
pub fn parse_series_coeffs(src: &str) -> Result<Vec<Rational>> {
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in parse_terms(src, VarKind::Z)? {
        let k = t.exps[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += t.coeff;
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly> {
    if nvars == 0 {
        return Err(Error::InvalidArgument("polynomial needs at least one variable".into()));
    }
    Ok(Poly::from_terms(
        nvars,
        parse_terms(src, VarKind::X { nvars })?
            .into_iter()
            .map(|t| (t.exps, t.coeff)),
    ))
}

/// Parse and require every written term to have the same degree as the first.
pub fn parse_homogeneous(src: &str, nvars: usize) -> Result<Poly> {
    if nvars == 0 {
        return Err(Error::InvalidArgument("polynomial needs at least one variable".into()));
    }
    let terms = parse_terms(src, VarKind::X { nvars })?;
    let expected: u32 = terms[0].exps.iter().sum();
    for t in &terms {
        let found: u32 = t.exps.iter().sum();
        if found != expected {
            return Err(Error::NotHomogeneous {
                term: t.text.clone(),
                found,
                expected,
            });
        }
    }
    Ok(Poly::from_terms(nvars, terms.into_iter().map(|t| (t.exps, t.coeff))))
}

/// Render series coefficients back into the literal grammar.
pub fn series_to_string(coeffs: &[Rational]) -> String {
    use num_traits::Signed;
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let abs = c.abs();
        match (k, abs.is_one()) {
            (0, _) => out.push_str(&abs.to_string()),
            (1, true) => out.push('z'),
            (1, false) => out.push_str(&format!("{abs}*z")),
            (_, true) => out.push_str(&format!("z^{k}")),
            (_, false) => out.push_str(&format!("{abs}*z^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    #[test]
    fn series_literals() {
        assert_eq!(
            parse_series_coeffs("1 - 3/2*z^2 + z^5").unwrap(),
            vec![int(1), int(0), ratio(-3, 2), int(0), int(0), int(1)]
        );
        assert_eq!(parse_series_coeffs("z").unwrap(), vec![int(0), int(1)]);
        assert_eq!(parse_series_coeffs("-z + z").unwrap(), Vec::<Rational>::new());
        assert_eq!(parse_series_coeffs("2*z*z").unwrap(), vec![int(0), int(0), int(2)]);
        assert_eq!(parse_series_coeffs("  4*z^2+2 +z ").unwrap(), vec![int(2), int(1), int(4)]);
    }

    #[test]
    fn series_errors_carry_columns() {
        match parse_series_coeffs("1 + y") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_series_coeffs("").is_err());
        assert!(parse_series_coeffs("1/0").is_err());
        assert!(parse_series_coeffs("z^").is_err());
        assert!(parse_series_coeffs("1 2").is_err());
        assert!(parse_series_coeffs("x0").is_err());
    }

    #[test]
    fn series_render_roundtrip() {
        for s in ["1 - 3/2*z^2 + z^5", "-z", "2 + z + 4*z^2", "0", "-7/3*z^4"] {
            let c = parse_series_coeffs(s).unwrap();
            assert_eq!(series_to_string(&c), s);
        }
    }

    #[test]
    fn homogeneous_check_names_offending_term() {
        match parse_homogeneous("x1 + x0^2", 3) {
            Err(Error::NotHomogeneous { term, found, expected }) => {
                assert_eq!(term, "x0^2");
                assert_eq!((found, expected), (2, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_homogeneous("x1^2 - x0*x2", 3).is_ok());
        assert!(parse_homogeneous("x3", 3).is_err());
    }
}
