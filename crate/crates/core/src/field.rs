//! `p`-adic valuations on the rationals.
//!
//! All norms are computed in base-`p` logarithms: `log_p |x| = -v_p(x)`, so
//! every quantity the crate produces stays an exact rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// Log-radius `ρ = log_p r`.
pub type LogRadius = Rational;

/// A prime modulus, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Natural logarithm of `p`, used only to rescale base-`p` values for display.
    pub fn ln(self) -> f64 {
        (self.0 as f64).ln()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `v_p(x)`, with `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinity => f.write_str("+inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a rational.
pub fn valuation(x: &Rational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let pb = BigInt::from(p.0);
    Valuation::Finite(int_valuation(x.numer(), &pb) - int_valuation(x.denom(), &pb))
}

/// `log_p |x|_p = -v_p(x)`; `None` stands for `-∞` (the value at zero).
pub fn log_abs(x: &Rational, p: Prime) -> Option<i64> {
    valuation(x, p).finite().map(|v| -v)
}

/// A rational read through the `p`-adic absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicRational {
    pub value: Rational,
    pub prime: Prime,
}

impl PAdicRational {
    pub fn new(value: Rational, prime: Prime) -> Self {
        PAdicRational { value, prime }
    }

    pub fn valuation(&self) -> Valuation {
        valuation(&self.value, self.prime)
    }

    pub fn log_abs(&self) -> Option<i64> {
        log_abs(&self.value, self.prime)
    }

    fn same_prime(&self, other: &Self) {
        assert_eq!(self.prime, other.prime, "mixing different primes");
    }
}

impl Add for &PAdicRational {
    type Output = PAdicRational;
    fn add(self, rhs: Self) -> PAdicRational {
        self.same_prime(rhs);
        PAdicRational::new(&self.value + &rhs.value, self.prime)
    }
}

impl Sub for &PAdicRational {
    type Output = PAdicRational;
    fn sub(self, rhs: Self) -> PAdicRational {
        self.same_prime(rhs);
        PAdicRational::new(&self.value - &rhs.value, self.prime)
    }
}

impl Mul for &PAdicRational {
    type Output = PAdicRational;
    fn mul(self, rhs: Self) -> PAdicRational {
        self.same_prime(rhs);
        PAdicRational::new(&self.value * &rhs.value, self.prime)
    }
}

impl Neg for &PAdicRational {
    type Output = PAdicRational;
    fn neg(self) -> PAdicRational {
        PAdicRational::new(-&self.value, self.prime)
    }
}

impl fmt::Display for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", self.value, self.prime)
    }
}
