//! Exact rationals, multiplicative heights, and enumeration of rationals of
//! bounded height.
//!
//! Heights here are multiplicative integers; conversion to log space happens
//! in [`crate::bounds`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den` in lowest terms. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| Rat(self.0.recip()))
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `a` or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            None => Ok(Rat::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((a, b)) => {
                let a = a.trim().parse::<BigInt>().map_err(|_| bad())?;
                let b = b.trim().parse::<BigInt>().map_err(|_| bad())?;
                Rat::new(a, b)
            }
        }
    }
}

/// `H(t) = max(|num|, den)` for `t` in lowest terms.
pub fn mult_height(t: &Rat) -> BigUint {
    let n = t.numer().magnitude();
    let d = t.denom().magnitude();
    n.max(d).clone()
}

/// A point of projective space over the rationals.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(Rat::is_zero) {
            return Err(Error::invalid("projective point with all coordinates zero"));
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Primitive integer representative with first nonzero entry positive.
    pub fn canonical(&self) -> Vec<BigInt> {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead_negative = ints
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if lead_negative {
                *c = -&*c;
            }
        }
        ints
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for ProjPoint {}

/// Height of a projective point: clear denominators, divide by the gcd, take
/// the largest absolute coordinate.
pub fn proj_height(p: &ProjPoint) -> BigUint {
    p.canonical()
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .expect("projective point has coordinates")
}

/// Convenience wrapper building the point first.
pub fn proj_height_of(coords: Vec<Rat>) -> Result<BigUint> {
    Ok(proj_height(&ProjPoint::new(coords)?))
}

/// Every rational of height at most `bound`, sorted by
/// `(height, numerator, denominator)`.
pub fn enumerate_rationals(bound: u64) -> Result<Vec<Rat>> {
    if bound == 0 {
        return Err(Error::invalid("height bound must be at least 1"));
    }
    let b = bound as i64;
    let mut items: Vec<(i64, i64, i64)> = Vec::new();
    for den in 1..=b {
        for num in -b..=b {
            if num.gcd(&den) == 1 {
                items.push((num.abs().max(den), num, den));
            }
        }
    }
    items.sort_unstable();
    Ok(items
        .into_iter()
        .map(|(_, n, d)| Rat(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        .collect())
}

/// The `(height, numerator, denominator)` ordering used by scans.
pub fn height_order(a: &Rat, b: &Rat) -> Ordering {
    mult_height(a)
        .cmp(&mult_height(b))
        .then_with(|| a.numer().cmp(b.numer()))
        .then_with(|| a.denom().cmp(b.denom()))
}
