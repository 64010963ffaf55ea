//! Hyperelliptic families `y^2 = f(x)(x - t)`, naive point counting over
//! F_p and F_{p^2}, and genus-2 Frobenius characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite_field::{quadratic_character, QuadraticExtension};
use crate::heights::Rat;
use crate::poly::IntPoly;
use crate::primes::is_prime;

/// Largest field size `p^k` the naive counter will enumerate.
pub const DEFAULT_LOOP_BOUND: u64 = 250_000;

/// The fixed squarefree polynomial `f` of a family `y^2 = f(x)(x - t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    f: IntPoly,
    label: String,
}

impl FamilySpec {
    pub fn new(f: IntPoly, label: impl Into<String>) -> Result<Self> {
        match f.degree() {
            None | Some(0) => return Err(Error::invalid("family polynomial must be nonconstant")),
            Some(_) => {}
        }
        if !f.is_squarefree() {
            return Err(Error::invalid(format!(
                "family polynomial {f} is not squarefree"
            )));
        }
        Ok(FamilySpec {
            f,
            label: label.into(),
        })
    }

    /// Parses a family file: a `f = c4,c3,c2,c1,c0` line (highest degree
    /// first) and an optional `label = ...` line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let kv = crate::harness::parse_key_values(text)?;
        let mut f = None;
        let mut label = None;
        for (k, v) in kv {
            match k.as_str() {
                "f" => f = Some(IntPoly::parse_descending(&v)?),
                "label" => label = Some(v),
                other => return Err(Error::invalid(format!("unknown family key {other:?}"))),
            }
        }
        let f = f.ok_or_else(|| Error::invalid("family file has no `f = ...` line"))?;
        let label = label.unwrap_or_else(|| f.to_string());
        FamilySpec::new(f, label)
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_root(&self, t: &Rat) -> bool {
        self.f.eval_rational(t.as_rational()).is_zero()
    }
}

/// An integral model `y^2 = F(x)` with `F` squarefree of degree 3, 5 or 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTwoCurve {
    poly: IntPoly,
    disc: BigInt,
    y_scale: BigInt,
}

impl GenusTwoCurve {
    pub fn new(poly: IntPoly) -> Result<Self> {
        match poly.degree() {
            Some(3 | 5 | 6) => {}
            d => {
                return Err(Error::invalid(format!(
                    "curve polynomial must have degree 3, 5 or 6, got {d:?}"
                )))
            }
        }
        let disc = poly.discriminant();
        if disc.is_zero() {
            return Err(Error::invalid(format!(
                "curve polynomial {poly} is not squarefree"
            )));
        }
        Ok(GenusTwoCurve {
            poly,
            disc,
            y_scale: BigInt::one(),
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        GenusTwoCurve::new(IntPoly::from_i64(coeffs))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("curve polynomial is nonzero")
    }

    pub fn genus(&self) -> usize {
        (self.degree() - 1) / 2
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// The factor `s` with `y_model = s * y_fiber` relating this integral
    /// model to the fiber it was specialized from. Always 1 for curves built
    /// directly.
    pub fn y_scale(&self) -> &BigInt {
        &self.y_scale
    }
}

impl fmt::Display for GenusTwoCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.poly)
    }
}

/// The fiber at `t = a/b`: `y^2 = f(x)(x - a/b)` is isomorphic over the
/// rationals to `y^2 = b f(x)(b x - a)` via `y -> b y`, so no twist is
/// introduced and counts and invariants belong to the fiber itself.
pub fn specialize(family: &FamilySpec, t: &Rat) -> Result<GenusTwoCurve> {
    if family.is_root(t) {
        return Err(Error::DegenerateParameter(t.to_string()));
    }
    let b = t.denom();
    let poly = family.f.mul_linear(b, t.numer()).scale(b);
    let mut curve = GenusTwoCurve::new(poly)?;
    curve.y_scale = b.clone();
    Ok(curve)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(())
}

/// Good reduction at an odd prime: `p` divides neither the leading
/// coefficient nor the discriminant.
pub fn good_reduction(curve: &GenusTwoCurve, p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let m = BigInt::from(p);
    Ok(!(curve.poly.leading().is_multiple_of(&m) || curve.disc.is_multiple_of(&m)))
}

/// `#C(F_{p^k})` for `k` in `{1, 2}` on the smooth projective model, using the
/// default loop bound.
pub fn count_points(curve: &GenusTwoCurve, p: u64, k: u32) -> Result<u64> {
    count_points_bounded(curve, p, k, DEFAULT_LOOP_BOUND)
}

pub fn count_points_bounded(curve: &GenusTwoCurve, p: u64, k: u32, loop_bound: u64) -> Result<u64> {
    if !(1..=2).contains(&k) {
        return Err(Error::invalid(format!(
            "extension degree must be 1 or 2, got {k}"
        )));
    }
    if !good_reduction(curve, p)? {
        return Err(Error::BadReduction(p));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= loop_bound)
        .ok_or_else(|| Error::Resource(format!("{p}^{k} exceeds the loop bound {loop_bound}")))?;
    let coeffs = curve.poly.reduce_mod(p);
    let deg = curve.degree();

    let (affine, at_infinity) = if k == 1 {
        let chi = quadratic_character(p);
        let mut total: i64 = 0;
        for x in 0..p {
            let v = coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
            total += 1 + chi[v as usize] as i64;
        }
        let inf = if deg % 2 == 1 {
            1
        } else {
            1 + chi[coeffs[deg] as usize] as i64
        };
        (total, inf)
    } else {
        let field = QuadraticExtension::new(p);
        let mut total: i64 = 0;
        for x in field.elements() {
            total += 1 + field.character(field.eval(&coeffs, x)) as i64;
        }
        let inf = if deg % 2 == 1 {
            1
        } else {
            1 + field.character(field.from_base(coeffs[deg])) as i64
        };
        (total, inf)
    };
    let n = (affine + at_infinity) as u64;

    // |N - q - 1| <= 2 g sqrt(q)
    let g = curve.genus() as u64;
    let dev = (n as i128 - q as i128 - 1).unsigned_abs();
    if dev * dev > (4 * g * g * q) as u128 {
        return Err(Error::Internal(format!(
            "count {n} over F_{p}^{k} violates the Weil bound for genus {g}"
        )));
    }
    Ok(n)
}

/// Frobenius data of a genus-2 curve at one good prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusRecord {
    pub p: u64,
    pub n1: u64,
    pub n2: u64,
    pub c1: i64,
    pub c2: i64,
}

impl FrobeniusRecord {
    /// `P(T) = T^4 - c1 T^3 + c2 T^2 - p c1 T + p^2`, lowest degree first.
    pub fn charpoly(&self) -> IntPoly {
        charpoly_power(self.c1, self.c2, self.p, 1)
    }

    /// `P(1)`, the order of the Jacobian over F_p.
    pub fn jacobian_order(&self) -> i64 {
        let p = self.p as i64;
        1 - self.c1 + self.c2 - p * self.c1 + p * p
    }
}

/// `(c1, c2)` from the counts over F_p and F_{p^2}.
pub fn frobenius_charpoly(n1: u64, n2: u64, p: u64) -> Result<(i64, i64)> {
    let p_i = p as i64;
    let c1 = p_i + 1 - n1 as i64;
    let s2 = p_i * p_i + 1 - n2 as i64;
    let twice_c2 = c1 * c1 - s2;
    if twice_c2 % 2 != 0 {
        return Err(Error::Internal(format!(
            "odd c1^2 - s2 = {twice_c2} for N1 = {n1}, N2 = {n2}, p = {p}"
        )));
    }
    if (c1 * c1) as u64 > 16 * p {
        return Err(Error::Internal(format!(
            "|c1| = {} exceeds 4 sqrt({p})",
            c1.abs()
        )));
    }
    let c2 = twice_c2 / 2;
    let rec = FrobeniusRecord { p, n1, n2, c1, c2 };
    if rec.jacobian_order() <= 0 {
        return Err(Error::Internal(format!(
            "P(1) = {} is not positive",
            rec.jacobian_order()
        )));
    }
    Ok((c1, c2))
}

/// Counts over F_p and F_{p^2} and assembles the record. The curve must be
/// genus 2 with good reduction at `p`.
pub fn frobenius_record(curve: &GenusTwoCurve, p: u64) -> Result<FrobeniusRecord> {
    if curve.genus() != 2 {
        return Err(Error::invalid(
            "Frobenius records are only defined for genus 2",
        ));
    }
    let n1 = count_points(curve, p, 1)?;
    let n2 = count_points(curve, p, 2)?;
    let (c1, c2) = frobenius_charpoly(n1, n2, p)?;
    Ok(FrobeniusRecord { p, n1, n2, c1, c2 })
}

/// Power sums `s_0..=s_n` of the roots of `T^4 - c1 T^3 + c2 T^2 - p c1 T + p^2`.
pub fn power_sums(c1: i64, c2: i64, p: u64, n: usize) -> Vec<BigInt> {
    let e1 = BigInt::from(c1);
    let e2 = BigInt::from(c2);
    let pe1 = BigInt::from(p) * &e1;
    let p2 = BigInt::from(p) * BigInt::from(p);
    let mut s: Vec<BigInt> = Vec::with_capacity(n + 1);
    s.push(BigInt::from(4));
    // Newton's identities for the first four, then the linear recurrence.
    for j in 1..=n {
        let v = match j {
            1 => e1.clone(),
            2 => &e1 * &s[1] - BigInt::from(2) * &e2,
            3 => &e1 * &s[2] - &e2 * &s[1] + BigInt::from(3) * &pe1,
            4 => &e1 * &s[3] - &e2 * &s[2] + &pe1 * &s[1] - BigInt::from(4) * &p2,
            _ => &e1 * &s[j - 1] - &e2 * &s[j - 2] + &pe1 * &s[j - 3] - &p2 * &s[j - 4],
        };
        s.push(v);
    }
    s
}

/// Quartic with power sums `t1..t4`, lowest degree first.
pub(crate) fn quartic_from_power_sums(t: [&BigInt; 4]) -> IntPoly {
    let [t1, t2, t3, t4] = t;
    let e1 = t1.clone();
    let e2 = (&e1 * t1 - t2) / BigInt::from(2);
    let e3 = (&e2 * t1 - &e1 * t2 + t3) / BigInt::from(3);
    let e4 = (&e3 * t1 - &e2 * t2 + &e1 * t3 - t4) / BigInt::from(4);
    IntPoly::new(vec![e4, -e3, e2, -e1, BigInt::one()])
}

/// `prod (T - alpha_i^k)` over the roots of the Frobenius polynomial.
pub fn charpoly_power(c1: i64, c2: i64, p: u64, k: u32) -> IntPoly {
    let k = k.max(1) as usize;
    let s = power_sums(c1, c2, p, 4 * k);
    quartic_from_power_sums([&s[k], &s[2 * k], &s[3 * k], &s[4 * k]])
}

/// Every `P_k` for `k` in `ks`, sharing one power-sum table.
pub(crate) fn charpoly_powers(c1: i64, c2: i64, p: u64, ks: &[u32]) -> Vec<(u32, IntPoly)> {
    let kmax = ks.iter().copied().max().unwrap_or(1).max(1) as usize;
    let s = power_sums(c1, c2, p, 4 * kmax);
    ks.iter()
        .map(|&k| {
            let k_us = k.max(1) as usize;
            (
                k,
                quartic_from_power_sums([&s[k_us], &s[2 * k_us], &s[3 * k_us], &s[4 * k_us]]),
            )
        })
        .collect()
}
