//! Arithmetic in F_p and F_{p^2} for odd primes small enough that products fit
//! in a u64.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::primes::pow_mod;

/// Quadratic character of F_p as a table indexed by residue; `chi[0] = 0`.
pub type CharTable = Arc<[i8]>;

fn table_cache() -> &'static RwLock<HashMap<u64, CharTable>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, CharTable>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Euler's criterion for every residue, built once per prime and shared.
pub fn quadratic_character(p: u64) -> CharTable {
    if let Some(t) = table_cache()
        .read()
        .expect("character cache poisoned")
        .get(&p)
    {
        return Arc::clone(t);
    }
    let half = (p - 1) / 2;
    let table: CharTable = (0..p)
        .map(|x| match pow_mod(x, half, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        })
        .collect();
    table_cache()
        .write()
        .expect("character cache poisoned")
        .entry(p)
        .or_insert(table)
        .clone()
}

/// Smallest quadratic non-residue mod `p`.
pub fn smallest_nonresidue(p: u64) -> u64 {
    let chi = quadratic_character(p);
    (2..p)
        .find(|&r| chi[r as usize] == -1)
        .expect("odd prime has a non-residue")
}

/// F_{p^2} realized as F_p[s]/(s^2 - r) with `r` the smallest non-residue.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    pub p: u64,
    pub r: u64,
    chi: CharTable,
}

/// `a + b s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl QuadraticExtension {
    pub fn new(p: u64) -> Self {
        QuadraticExtension {
            p,
            r: smallest_nonresidue(p),
            chi: quadratic_character(p),
        }
    }

    pub fn from_base(&self, x: u64) -> Fp2 {
        Fp2 {
            a: x % self.p,
            b: 0,
        }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: (x.a + y.a) % self.p,
            b: (x.b + y.b) % self.p,
        }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        let bd = x.b * y.b % p;
        Fp2 {
            a: (x.a * y.a + self.r * bd) % p,
            b: (x.a * y.b + x.b * y.a) % p,
        }
    }

    pub fn norm(&self, x: Fp2) -> u64 {
        let p = self.p;
        let rb2 = self.r * (x.b * x.b % p) % p;
        (x.a * x.a % p + p - rb2) % p
    }

    /// Quadratic character of F_{p^2}: an element is a square iff its norm is
    /// a square in F_p, since both are the unique index-two subgroup.
    pub fn character(&self, x: Fp2) -> i8 {
        self.chi[self.norm(x) as usize]
    }

    /// Horner evaluation of a polynomial with coefficients in F_p, lowest
    /// degree first.
    pub fn eval(&self, coeffs: &[u64], x: Fp2) -> Fp2 {
        coeffs.iter().rev().fold(Fp2 { a: 0, b: 0 }, |acc, &c| {
            self.add(self.mul(acc, x), self.from_base(c))
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Fp2 { a, b }))
    }
}
