//! Per-parameter decision between "certified geometrically simple" and
//! "candidate non-simple".
//!
//! A certificate is one good ordinary prime `p` at which every power `P_k` of
//! the Frobenius polynomial, for `k = 1` and all `k` in the test set, is
//! irreducible over the rationals. Then the reduction stays simple over every
//! extension of F_p, so it is geometrically simple, and a geometric splitting
//! of the fiber would reduce to one of the reduction.
//!
//! If the reduction first splits over F_{p^k}, a ratio of two Frobenius
//! eigenvalues is a primitive k-th root of unity inside a field of degree at
//! most 16. That forces `phi(k) <= 16`, so `k <= 60` and the default test set
//! `{2, ..., 60}` covers every case.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::heights::Rat;
use crate::hyperelliptic::{
    charpoly_powers, frobenius_record, good_reduction, specialize, FamilySpec, FrobeniusRecord,
    GenusTwoCurve, DEFAULT_LOOP_BOUND,
};
use crate::poly::IntPoly;
use crate::primes::{odd_primes_up_to, signed_divisors};

/// Extension degrees checked by default: `2..=60`.
pub fn default_k_test() -> Vec<u32> {
    (2..=60).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: u64,
    pub c1: i64,
    pub c2: i64,
    /// Always starts with 1, followed by the test set in order.
    pub k_checked: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    CertifiedSimple(Certificate),
    CandidateNonSimple(Vec<FrobeniusRecord>),
    Degenerate,
}

impl Classification {
    pub fn status(&self) -> Status {
        match self {
            Classification::CertifiedSimple(_) => Status::Simple,
            Classification::CandidateNonSimple(_) => Status::Candidate,
            Classification::Degenerate => Status::Degenerate,
        }
    }

    pub fn certifying_prime(&self) -> Option<u64> {
        match self {
            Classification::CertifiedSimple(c) => Some(c.p),
            _ => None,
        }
    }
}

/// Serialized status column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Simple,
    Candidate,
    Degenerate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Simple => "simple",
            Status::Candidate => "candidate",
            Status::Degenerate => "degenerate",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Status::Simple),
            "candidate" => Ok(Status::Candidate),
            "degenerate" => Ok(Status::Degenerate),
            _ => Err(Error::invalid(format!("unknown status {s:?}"))),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Newton polygon test for abelian surfaces: ordinary iff `p` does not divide
/// the middle coefficient.
pub fn is_ordinary(_c1: i64, c2: i64, p: u64) -> bool {
    c2.rem_euclid(p as i64) != 0
}

/// Irreducibility over the rationals of a monic integer quartic.
///
/// Linear factors are excluded by the rational root test. A quadratic split
/// `(T^2 + aT + b)(T^2 + cT + d)` needs `bd = a0`; for each divisor `b` the
/// conditions `a + c = a3` and `ad + bc = a1` pin down `a` whenever `b != d`,
/// and otherwise `a, c` are the roots of `X^2 - a3 X + (a2 - 2b)`.
pub fn quartic_irreducible(poly: &IntPoly) -> bool {
    assert_eq!(poly.degree(), Some(4), "expected a quartic");
    assert!(poly.leading().is_one(), "expected a monic quartic");
    let a0 = poly.coeff(0);
    let a1 = poly.coeff(1);
    let a2 = poly.coeff(2);
    let a3 = poly.coeff(3);
    if a0.is_zero() {
        return false;
    }
    let divs = signed_divisors(&a0);
    if divs.iter().any(|r| poly.eval(r).is_zero()) {
        return false;
    }
    for b in &divs {
        let d = &a0 / b;
        if b > &d {
            // (b, d) and (d, b) describe the same factorization
            continue;
        }
        let ac = &a2 - b - &d;
        if b == &d {
            if a1 != b * &a3 {
                continue;
            }
            let disc = &a3 * &a3 - BigInt::from(4) * &ac;
            if disc.is_negative() {
                continue;
            }
            let r = disc.sqrt();
            if &r * &r == disc && (&a3 + &r).is_even() {
                return false;
            }
        } else {
            let num = &a1 - b * &a3;
            let den = &d - b;
            if !num.is_multiple_of(&den) {
                continue;
            }
            let a = num / den;
            let c = &a3 - &a;
            if &a * &c == ac {
                return false;
            }
        }
    }
    true
}

/// Internal result of examining one prime.
enum PrimeOutcome {
    Bad,
    Record(FrobeniusRecord, Option<Certificate>),
}

fn examine_prime(curve: &GenusTwoCurve, p: u64, k_test: &[u32]) -> Result<PrimeOutcome> {
    if !good_reduction(curve, p)? {
        return Ok(PrimeOutcome::Bad);
    }
    let rec = frobenius_record(curve, p)?;
    if !is_ordinary(rec.c1, rec.c2, p) {
        return Ok(PrimeOutcome::Record(rec, None));
    }
    let mut ks = vec![1u32];
    ks.extend(k_test.iter().copied().filter(|&k| k != 1));
    let certified = charpoly_powers(rec.c1, rec.c2, p, &ks)
        .iter()
        .all(|(_, pk)| quartic_irreducible(pk));
    let cert = certified.then(|| Certificate {
        p,
        c1: rec.c1,
        c2: rec.c2,
        k_checked: ks,
    });
    Ok(PrimeOutcome::Record(rec, cert))
}

/// Certificate of geometric simplicity at `p`, or `None` when `p` has bad
/// reduction, is not ordinary, or some tested `P_k` factors.
pub fn certify_geometrically_simple(
    curve: &GenusTwoCurve,
    p: u64,
    k_test: &[u32],
) -> Result<Option<Certificate>> {
    if curve.genus() != 2 {
        return Err(Error::invalid("certificates are only defined for genus 2"));
    }
    match examine_prime(curve, p, k_test)? {
        PrimeOutcome::Bad => Ok(None),
        PrimeOutcome::Record(_, cert) => Ok(cert),
    }
}

/// Classifies the fiber at `t` using odd primes `p <= p_max` in increasing
/// order; the first certificate wins.
pub fn classify_parameter(
    family: &FamilySpec,
    t: &Rat,
    p_max: u64,
    k_test: &[u32],
) -> Result<Classification> {
    classify_parameter_counted(family, t, p_max, k_test).map(|(c, _)| c)
}

/// Like [`classify_parameter`], also returning how many good primes were
/// examined (the certifying prime included).
pub fn classify_parameter_counted(
    family: &FamilySpec,
    t: &Rat,
    p_max: u64,
    k_test: &[u32],
) -> Result<(Classification, usize)> {
    if p_max < 3 {
        return Err(Error::invalid("prime bound must be at least 3"));
    }
    let primes = odd_primes_up_to(p_max);
    if let Some(&largest) = primes.last() {
        if largest.saturating_mul(largest) > DEFAULT_LOOP_BOUND {
            return Err(Error::Resource(format!(
                "prime bound {p_max} needs F_{{p^2}} counts beyond the loop bound {DEFAULT_LOOP_BOUND}"
            )));
        }
    }
    let curve = match specialize(family, t) {
        Ok(c) => c,
        Err(Error::DegenerateParameter(_)) => return Ok((Classification::Degenerate, 0)),
        Err(e) => return Err(e),
    };
    if curve.genus() != 2 {
        return Err(Error::invalid(
            "classification needs a genus-2 family (deg f = 4 or 5)",
        ));
    }
    let mut records = Vec::new();
    for p in primes {
        match examine_prime(&curve, p, k_test)? {
            PrimeOutcome::Bad => {}
            PrimeOutcome::Record(_, Some(cert)) => {
                return Ok((Classification::CertifiedSimple(cert), records.len() + 1))
            }
            PrimeOutcome::Record(rec, None) => records.push(rec),
        }
    }
    let n = records.len();
    Ok((Classification::CandidateNonSimple(records), n))
}
