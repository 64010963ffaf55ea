//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first and never carry trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from coefficients listed highest degree first.
    pub fn from_descending(coeffs: Vec<BigInt>) -> Self {
        let mut c = coeffs;
        c.reverse();
        IntPoly::new(c)
    }

    /// Parses a comma separated coefficient list, highest degree first,
    /// e.g. `"1,0,0,0,1"` for `x^4 + 1`.
    pub fn parse_descending(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<BigInt>()
                    .map_err(|_| Error::invalid(format!("bad coefficient {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::invalid("empty coefficient list"));
        }
        Ok(IntPoly::from_descending(coeffs))
    }

    /// Coefficients highest degree first, comma separated.
    pub fn to_descending_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Coefficients reduced into `[0, p)`, lowest degree first.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&m);
                u64::try_from(r).expect("residue fits in u64")
            })
            .collect()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for (r, row) in rows.iter_mut().enumerate().take(n) {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                row[r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + r][r + k] = c.clone();
            }
        }
        bareiss_determinant(rows)
    }

    /// `(-1)^(n(n-1)/2) Res(F, F') / lc(F)`.
    pub fn discriminant(&self) -> BigInt {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return BigInt::zero(),
        };
        let res = self.resultant(&self.derivative());
        let disc = res / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -disc
        } else {
            disc
        }
    }

    /// True iff `gcd(F, F')` over the rationals is a nonzero constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => rational_gcd(self, &self.derivative()).len() == 1,
        }
    }

    /// Multiplies by the linear factor `(b x - a)`.
    pub fn mul_linear(&self, b: &BigInt, a: &BigInt) -> IntPoly {
        self.mul(&IntPoly::new(vec![-a.clone(), b.clone()]))
    }

    /// `(c x + d)^n F((a x + b)/(c x + d))` for an integer matrix and a
    /// target binary degree `n >= deg F`.
    pub fn mobius(&self, n: usize, a: i64, b: i64, c: i64, d: i64) -> IntPoly {
        let num = IntPoly::from_i64(&[b, a]);
        let den = IntPoly::from_i64(&[d, c]);
        let mut out = IntPoly::new(Vec::new());
        for (i, coef) in self.coeffs.iter().enumerate() {
            let mut term = IntPoly::new(vec![coef.clone()]);
            for _ in 0..i {
                term = term.mul(&num);
            }
            for _ in i..n {
                term = term.mul(&den);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

/// Fraction-free Gaussian elimination; exact for integer matrices.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Monic gcd over the rationals, coefficients lowest degree first.
fn rational_gcd(f: &IntPoly, g: &IntPoly) -> Vec<BigRational> {
    let to_q = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    let mut a = to_q(f);
    let mut b = to_q(g);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let mut r = a.clone();
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let q = r.last().unwrap() / &lb;
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &q * c;
            }
            r.pop();
            trim(&mut r);
        }
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &l;
        }
    }
    a
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
