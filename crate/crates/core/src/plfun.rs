//! Exact piecewise-linear functions of the log-radius.
//!
//! A [`PLFunction`] is continuous on the whole line. It is stored as a
//! strictly increasing list of breakpoints `b_1 < … < b_k` together with one
//! affine piece per segment `(-∞, b_1], [b_1, b_2], …, [b_k, ∞)`. Adjacent
//! pieces always differ, so two functions are equal iff their representations
//! are equal.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::{int, Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Affine {
    slope: Rational,
    intercept: Rational,
}

impl Affine {
    fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    fn combine(&self, other: &Affine, cf: &Rational, cg: &Rational) -> Affine {
        Affine {
            slope: cf * &self.slope + cg * &other.slope,
            intercept: cf * &self.intercept + cg * &other.intercept,
        }
    }

    /// Abscissa where the two lines meet, if they are not parallel.
    fn crossing(&self, other: &Affine) -> Option<Rational> {
        if self.slope == other.slope {
            None
        } else {
            Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    breakpoints: Vec<Rational>,
    pieces: Vec<Affine>,
}

/// A point inside the `i`-th open segment cut out by `cuts`.
fn sample(cuts: &[Rational], i: usize) -> Rational {
    match (i.checked_sub(1).and_then(|j| cuts.get(j)), cuts.get(i)) {
        (None, None) => Rational::zero(),
        (None, Some(hi)) => hi - Rational::one(),
        (Some(lo), None) => lo + Rational::one(),
        (Some(lo), Some(hi)) => (lo + hi) / int(2),
    }
}

/// Upper envelope of lines on the whole axis: crossing points and the
/// dominating line between consecutive ones.
fn upper_envelope(lines: &[&Affine]) -> (Vec<Rational>, Vec<Affine>) {
    let mut sorted: Vec<&Affine> = lines.to_vec();
    sorted.sort_by(|a, b| a.slope.cmp(&b.slope).then_with(|| a.intercept.cmp(&b.intercept)));
    let mut stack: Vec<&Affine> = Vec::new();
    for l in sorted {
        if stack.last().is_some_and(|t| t.slope == l.slope) {
            stack.pop();
        }
        while stack.len() >= 2 {
            let (a, b) = (stack[stack.len() - 2], stack[stack.len() - 1]);
            if a.crossing(l) <= a.crossing(b) {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(l);
    }
    let cuts = stack.windows(2).map(|w| w[0].crossing(w[1]).expect("distinct slopes")).collect();
    (cuts, stack.into_iter().cloned().collect())
}

fn merge_cuts<'a>(lists: impl IntoIterator<Item = &'a [Rational]>) -> Vec<Rational> {
    let mut all: Vec<Rational> = lists.into_iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    all
}

impl PLFunction {
    pub fn constant(c: Rational) -> Self {
        Self::affine(Rational::zero(), c)
    }

    /// `slope·ρ + intercept`.
    pub fn affine(slope: Rational, intercept: Rational) -> Self {
        PLFunction {
            breakpoints: Vec::new(),
            pieces: vec![Affine { slope, intercept }],
        }
    }

    /// The identity `ρ ↦ ρ`.
    pub fn identity() -> Self {
        Self::affine(Rational::one(), Rational::zero())
    }

    /// `max(0, ρ - at)`: the hinge used by counting functions.
    pub fn hinge(at: Rational) -> Self {
        PLFunction {
            pieces: vec![
                Affine {
                    slope: Rational::zero(),
                    intercept: Rational::zero(),
                },
                Affine {
                    slope: Rational::one(),
                    intercept: -&at,
                },
            ],
            breakpoints: vec![at],
        }
    }

    /// Build from breakpoints, one slope per segment, and an anchor
    /// `(ρ₀, value)` fixing the additive level.
    pub fn from_parts(
        breakpoints: Vec<Rational>,
        slopes: Vec<Rational>,
        anchor: (Rational, Rational),
    ) -> Result<Self> {
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::MalformedPL(format!(
                "{} breakpoints need {} slopes, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                slopes.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedPL(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        let (rho0, value0) = anchor;
        let seg0 = breakpoints.partition_point(|b| b < &rho0);
        let mut intercepts = vec![Rational::zero(); slopes.len()];
        intercepts[seg0] = &value0 - &slopes[seg0] * &rho0;
        for i in seg0 + 1..slopes.len() {
            let b = &breakpoints[i - 1];
            let v = &slopes[i - 1] * b + &intercepts[i - 1];
            intercepts[i] = v - &slopes[i] * b;
        }
        for i in (0..seg0).rev() {
            let b = &breakpoints[i];
            let v = &slopes[i + 1] * b + &intercepts[i + 1];
            intercepts[i] = v - &slopes[i] * b;
        }
        let pieces = slopes
            .into_iter()
            .zip(intercepts)
            .map(|(slope, intercept)| Affine { slope, intercept })
            .collect();
        Ok(PLFunction {
            breakpoints,
            pieces,
        }
        .canonical())
    }

    fn from_pieces(breakpoints: Vec<Rational>, pieces: Vec<Affine>) -> Self {
        debug_assert_eq!(breakpoints.len() + 1, pieces.len());
        PLFunction {
            breakpoints,
            pieces,
        }
        .canonical()
    }

    /// Merge adjacent identical pieces.
    fn canonical(self) -> Self {
        let mut breakpoints = Vec::with_capacity(self.breakpoints.len());
        let mut pieces: Vec<Affine> = Vec::with_capacity(self.pieces.len());
        let mut it = self.pieces.into_iter();
        pieces.push(it.next().expect("at least one piece"));
        for (b, piece) in self.breakpoints.into_iter().zip(it) {
            if pieces.last() != Some(&piece) {
                breakpoints.push(b);
                pieces.push(piece);
            }
        }
        PLFunction {
            breakpoints,
            pieces,
        }
    }

    fn piece_at(&self, rho: &Rational) -> &Affine {
        &self.pieces[self.breakpoints.partition_point(|b| b < rho)]
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.pieces.iter().map(|p| p.slope.clone()).collect()
    }

    /// `(ρ₀, f(ρ₀))` with `ρ₀` the first breakpoint, or `0` when there is none.
    pub fn anchor(&self) -> (Rational, Rational) {
        let rho0 = self.breakpoints.first().cloned().unwrap_or_else(Rational::zero);
        let value = self.eval(&rho0);
        (rho0, value)
    }

    pub fn eval(&self, rho: &Rational) -> Rational {
        self.piece_at(rho).at(rho)
    }

    pub fn final_slope(&self) -> Rational {
        self.pieces.last().expect("nonempty").slope.clone()
    }

    pub fn initial_slope(&self) -> Rational {
        self.pieces[0].slope.clone()
    }

    /// Slope on the segment just to the right of `rho`.
    pub fn right_slope(&self, rho: &Rational) -> Rational {
        self.pieces[self.breakpoints.partition_point(|b| b <= rho)]
            .slope
            .clone()
    }

    pub fn is_convex(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].slope <= w[1].slope)
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<&Rational> {
        match self.pieces.as_slice() {
            [p] if p.slope.is_zero() => Some(&p.intercept),
            _ => None,
        }
    }

    /// Breakpoints inside the closed interval `[lo, hi]`.
    pub fn breakpoints_in(&self, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        self.breakpoints
            .iter()
            .filter(|b| *b >= lo && *b <= hi)
            .cloned()
            .collect()
    }

    /// Pointwise maximum.
    pub fn max_of(fs: &[PLFunction]) -> Result<PLFunction> {
        let (first, rest) = fs.split_first().ok_or(Error::EmptyMax)?;
        if rest.is_empty() {
            return Ok(first.clone());
        }
        let cuts = merge_cuts(fs.iter().map(|f| f.breakpoints.as_slice()));
        let mut out_cuts = Vec::new();
        let mut out_pieces = Vec::new();
        for seg in 0..=cuts.len() {
            let lo = seg.checked_sub(1).map(|j| &cuts[j]);
            let hi = cuts.get(seg);
            let lines: Vec<&Affine> = fs.iter().map(|f| f.piece_at(&sample(&cuts, seg))).collect();
            let (env_cuts, env_pieces) = upper_envelope(&lines);
            let mut kept = 0;
            for (j, piece) in env_pieces.into_iter().enumerate() {
                let start = j.checked_sub(1).map(|i| &env_cuts[i]);
                let end = env_cuts.get(j);
                let after_lo = match (lo, end) {
                    (Some(l), Some(e)) => e > l,
                    _ => true,
                };
                let before_hi = match (hi, start) {
                    (Some(h), Some(s)) => s < h,
                    _ => true,
                };
                if after_lo && before_hi {
                    if kept > 0 {
                        out_cuts.push(start.expect("interior cut").clone());
                    }
                    out_pieces.push(piece);
                    kept += 1;
                }
            }
            if let Some(h) = hi {
                out_cuts.push(h.clone());
            }
        }
        Ok(PLFunction::from_pieces(out_cuts, out_pieces))
    }

    /// `cf·f + cg·g`.
    pub fn combine(f: &PLFunction, g: &PLFunction, cf: &Rational, cg: &Rational) -> PLFunction {
        let cuts = merge_cuts([f.breakpoints.as_slice(), g.breakpoints.as_slice()]);
        let pieces = (0..=cuts.len())
            .map(|seg| {
                let x = sample(&cuts, seg);
                f.piece_at(&x).combine(g.piece_at(&x), cf, cg)
            })
            .collect();
        PLFunction::from_pieces(cuts, pieces)
    }

    pub fn scale(&self, c: &Rational) -> PLFunction {
        if c.is_zero() {
            return PLFunction::constant(Rational::zero());
        }
        PLFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Affine {
                    slope: &p.slope * c,
                    intercept: &p.intercept * c,
                })
                .collect(),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> PLFunction {
        PLFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Affine {
                    slope: p.slope.clone(),
                    intercept: &p.intercept + c,
                })
                .collect(),
        }
    }

    /// Sum of a list of functions; the zero function for an empty list.
    pub fn sum<'a>(fs: impl IntoIterator<Item = &'a PLFunction>) -> PLFunction {
        fs.into_iter()
            .fold(PLFunction::constant(Rational::zero()), |acc, f| &acc + f)
    }

    /// Exact supremum of `f - g` over `[lo, hi]`.
    pub fn sup_gap(f: &PLFunction, g: &PLFunction, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return Err(Error::InvertedInterval {
                lo: Box::new(lo.clone()),
                hi: Box::new(hi.clone()),
            });
        }
        let h = f - g;
        let mut best = h.eval(lo).max(h.eval(hi));
        for b in h.breakpoints_in(lo, hi) {
            best = best.max(h.eval(&b));
        }
        Ok(best)
    }

    /// Root of a strictly decreasing function.
    pub(crate) fn decreasing_root(&self) -> Option<Rational> {
        if self.pieces.iter().any(|p| p.slope >= Rational::zero()) {
            return None;
        }
        let seg = self
            .breakpoints
            .partition_point(|b| self.eval(b) > Rational::zero());
        let p = &self.pieces[seg];
        Some(-&p.intercept / &p.slope)
    }
}

impl Add for &PLFunction {
    type Output = PLFunction;
    fn add(self, rhs: &PLFunction) -> PLFunction {
        PLFunction::combine(self, rhs, &Rational::one(), &Rational::one())
    }
}

impl Sub for &PLFunction {
    type Output = PLFunction;
    fn sub(self, rhs: &PLFunction) -> PLFunction {
        PLFunction::combine(self, rhs, &Rational::one(), &-Rational::one())
    }
}

impl Neg for &PLFunction {
    type Output = PLFunction;
    fn neg(self) -> PLFunction {
        self.scale(&-Rational::one())
    }
}

fn fmt_affine(f: &mut fmt::Formatter<'_>, a: &Affine) -> fmt::Result {
    match (a.slope.is_zero(), a.intercept.is_zero()) {
        (true, _) => write!(f, "{}", a.intercept),
        (false, true) => write!(f, "{}ρ", a.slope),
        (false, false) => write!(f, "{}ρ + {}", a.slope, a.intercept),
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.breakpoints.is_empty() {
            return fmt_affine(f, &self.pieces[0]);
        }
        f.write_str("{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match (i.checked_sub(1).map(|j| &self.breakpoints[j]), self.breakpoints.get(i)) {
                (None, Some(h)) => write!(f, "ρ ≤ {h}: ")?,
                (Some(l), None) => write!(f, "ρ ≥ {l}: ")?,
                (Some(l), Some(h)) => write!(f, "{l} ≤ ρ ≤ {h}: ")?,
                (None, None) => unreachable!(),
            }
            fmt_affine(f, p)?;
        }
        f.write_str("}")
    }
}
