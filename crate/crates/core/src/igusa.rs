//! Igusa-Clebsch invariants of genus-2 curves and the height of the
//! associated point `(j1 : j2 : j3 : 1)`.
//!
//! The invariants come from the Clebsch invariants of the binary sextic
//! `F(x, y) = sum a_i x^i y^(6-i)`, built out of transvectants.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::heights::{proj_height_of, Rat};
use crate::hyperelliptic::GenusTwoCurve;
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaInvariants {
    pub i2: Rat,
    pub i4: Rat,
    pub i6: Rat,
    pub i10: Rat,
    /// `(I2 I4 - 3 I6) / 2`.
    pub i6_prime: Rat,
    /// `I2 I10`.
    pub i12: Rat,
    pub j1: Rat,
    pub j2: Rat,
    pub j3: Rat,
}

/// Binary form of degree `n`; `c[i]` is the coefficient of `x^i y^(n-i)`.
#[derive(Clone, Debug)]
struct Form {
    c: Vec<BigRational>,
}

impl Form {
    fn degree(&self) -> usize {
        self.c.len() - 1
    }

    fn dx(&self) -> Form {
        let n = self.degree();
        if n == 0 {
            return Form {
                c: vec![BigRational::zero()],
            };
        }
        Form {
            c: (1..=n).map(|i| &self.c[i] * BigInt::from(i)).collect(),
        }
    }

    fn dy(&self) -> Form {
        let n = self.degree();
        if n == 0 {
            return Form {
                c: vec![BigRational::zero()],
            };
        }
        Form {
            c: (0..n).map(|i| &self.c[i] * BigInt::from(n - i)).collect(),
        }
    }

    fn mul(&self, other: &Form) -> Form {
        let mut c = vec![BigRational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Form { c }
    }

    fn constant(&self) -> BigRational {
        assert_eq!(self.degree(), 0);
        self.c[0].clone()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(f, g)_k = (n-k)!(m-k)!/(n!m!) sum_j (-1)^j C(k,j) f_{x^(k-j) y^j} g_{x^j y^(k-j)}`.
fn transvectant(f: &Form, g: &Form, k: usize) -> Form {
    let n = f.degree();
    let m = g.degree();
    assert!(k <= n && k <= m);
    let mut acc = Form {
        c: vec![BigRational::zero(); n + m - 2 * k + 1],
    };
    for j in 0..=k {
        let mut fd = f.clone();
        for _ in 0..k - j {
            fd = fd.dx();
        }
        for _ in 0..j {
            fd = fd.dy();
        }
        let mut gd = g.clone();
        for _ in 0..j {
            gd = gd.dx();
        }
        for _ in 0..k - j {
            gd = gd.dy();
        }
        let term = fd.mul(&gd);
        let coef = if j % 2 == 0 {
            binomial(k, j)
        } else {
            -binomial(k, j)
        };
        for (a, b) in acc.c.iter_mut().zip(term.c) {
            *a += b * &coef;
        }
    }
    let norm = BigRational::new(
        factorial(n - k) * factorial(m - k),
        factorial(n) * factorial(m),
    );
    for a in acc.c.iter_mut() {
        *a *= &norm;
    }
    acc
}

/// Clebsch invariants `(A, B, C, D)` of a binary sextic.
fn clebsch(f: &Form) -> [BigRational; 4] {
    let i = transvectant(f, f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    [
        transvectant(f, f, 6).constant(),
        transvectant(&i, &i, 4).constant(),
        transvectant(&i, &delta, 4).constant(),
        transvectant(&y3, &y1, 2).constant(),
    ]
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(I2, I4, I6, I10)` of `y^2 = F` with `F` read as a binary sextic.
pub fn igusa_clebsch(f: &IntPoly) -> Result<[Rat; 4]> {
    match f.degree() {
        Some(5) | Some(6) => {}
        _ => {
            return Err(Error::invalid(
                "Igusa-Clebsch invariants need a quintic or sextic",
            ))
        }
    }
    let form = Form {
        c: (0..=6)
            .map(|i| BigRational::from_integer(f.coeff(i)))
            .collect(),
    };
    let [a, b, c, d] = clebsch(&form);
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let i2 = q(-120) * &a;
    let i4 = q(-720) * &a2 + q(6750) * &b;
    let i6 = q(8640) * &a3 - q(108000) * &a * &b + q(202500) * &c;
    let i10 = q(-62208) * &a3 * &a2 + q(972000) * &a3 * &b + q(1620000) * &a2 * &c
        - q(3037500) * &a * &b * &b
        - q(6075000) * &b * &c
        - q(4556250) * &d;
    Ok([i2.into(), i4.into(), i6.into(), i10.into()])
}

/// Invariants and `(j1, j2, j3)` for a quintic or sextic; errors when `F`
/// is not squarefree.
pub fn igusa_from_poly(f: &IntPoly) -> Result<IgusaInvariants> {
    let [i2, i4, i6, i10] = igusa_clebsch(f)?;
    if i10.is_zero() {
        return Err(Error::invalid(format!("{f} is not squarefree (I10 = 0)")));
    }
    let (r2, r4, r6, r10) = (
        i2.as_rational(),
        i4.as_rational(),
        i6.as_rational(),
        i10.as_rational(),
    );
    let i6p = (r2 * r4 - q(3) * r6) / q(2);
    let i12 = r2 * r10;
    let r10sq = r10 * r10;
    let j1 = r4 * &i6p / r10;
    let j2 = r4 * r4 * &i12 / &r10sq;
    let j3 = (0..5).fold(BigRational::one(), |acc, _| acc * r4) / &r10sq;
    Ok(IgusaInvariants {
        i2,
        i4,
        i6,
        i10,
        i6_prime: i6p.into(),
        i12: i12.into(),
        j1: j1.into(),
        j2: j2.into(),
        j3: j3.into(),
    })
}

pub fn igusa_invariants(curve: &GenusTwoCurve) -> Result<IgusaInvariants> {
    if curve.genus() != 2 {
        return Err(Error::invalid(
            "Igusa invariants are defined for genus 2 only",
        ));
    }
    igusa_from_poly(curve.poly())
}

/// Height of `(j1 : j2 : j3 : 1)`.
pub fn j_height(curve: &GenusTwoCurve) -> Result<BigUint> {
    let inv = igusa_invariants(curve)?;
    j_height_of(&inv)
}

pub fn j_height_of(inv: &IgusaInvariants) -> Result<BigUint> {
    proj_height_of(vec![
        inv.j1.clone(),
        inv.j2.clone(),
        inv.j3.clone(),
        Rat::from_integer(1),
    ])
}
