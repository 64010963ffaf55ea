use std::fmt;

use super::{SympModule, Vector};

/// A subgroup of `(Z/l^m)^n` stored in Howell normal form: one row per pivot
/// column, pivots equal to `l^v`, entries above a pivot reduced modulo it.
/// Two generating sets give the same subgroup iff their forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    ell: u64,
    m: u32,
    n: usize,
    /// `(pivot column, valuation of pivot, row)`.
    rows: Vec<(usize, u32, Vector)>,
}

fn valuation(x: u64, ell: u64, m: u32) -> u32 {
    if x == 0 {
        return m;
    }
    let mut v = 0;
    let mut x = x;
    while x % ell == 0 {
        x /= ell;
        v += 1;
    }
    v
}

fn inverse_mod(a: u64, q: u64) -> u64 {
    let (mut r0, mut r1) = (q as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(q as i128) as u64
}

impl Subgroup {
    pub fn trivial(module: &SympModule) -> Self {
        Subgroup {
            ell: module.ell(),
            m: module.m(),
            n: module.rank(),
            rows: Vec::new(),
        }
    }

    pub fn generated_by(module: &SympModule, gens: &[Vector]) -> Self {
        let ell = module.ell();
        let m = module.m();
        let q = module.modulus();
        let n = module.rank();
        let mut pool: Vec<Vector> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x % q).collect::<Vector>())
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<(usize, u32, Vector)> = Vec::new();
        for col in 0..n {
            let Some((idx, v)) = pool
                .iter()
                .enumerate()
                .map(|(i, r)| (i, valuation(r[col], ell, m)))
                .filter(|&(_, v)| v < m)
                .min_by_key(|&(_, v)| v)
            else {
                continue;
            };
            let mut pivot = pool.swap_remove(idx);
            let unit = pivot[col] / ell.pow(v);
            let inv = inverse_mod(unit, q);
            for x in pivot.iter_mut() {
                *x = *x * inv % q;
            }
            let lp = ell.pow(v);
            for r in pool.iter_mut() {
                let w = r[col] / lp;
                if w != 0 {
                    for (x, &y) in r.iter_mut().zip(&pivot) {
                        *x = (*x + q - w * y % q) % q;
                    }
                }
            }
            // the l^{m-v} multiple of the pivot row has a zero in this column
            // but may carry information further right
            let killed: Vector = pivot.iter().map(|&x| x * ell.pow(m - v) % q).collect();
            pool.push(killed);
            pool.retain(|r| r.iter().any(|&x| x != 0));
            rows.push((col, v, pivot));
        }
        debug_assert!(pool.is_empty());
        for i in 0..rows.len() {
            let (col, v, ref pivot) = rows[i];
            let pivot = pivot.clone();
            let lp = ell.pow(v);
            for r in rows[..i].iter_mut() {
                let w = r.2[col] / lp;
                if w != 0 {
                    for (x, &y) in r.2.iter_mut().zip(&pivot) {
                        *x = (*x + q - w * y % q) % q;
                    }
                }
            }
        }
        Subgroup { ell, m, n, rows }
    }

    /// Builds a subgroup from rows already in normal form.
    pub(crate) fn from_normal_rows(module: &SympModule, rows: Vec<(usize, u32, Vector)>) -> Self {
        Subgroup {
            ell: module.ell(),
            m: module.m(),
            n: module.rank(),
            rows,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Vector> {
        self.rows.iter().map(|(_, _, r)| r)
    }

    /// `log_l` of the order.
    pub fn log_order(&self) -> u32 {
        self.rows.iter().map(|&(_, v, _)| self.m - v).sum()
    }

    pub fn order(&self) -> u128 {
        (self.ell as u128).pow(self.log_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        assert_eq!(x.len(), self.n);
        let q = self.ell.pow(self.m);
        let mut x: Vector = x.iter().map(|&a| a % q).collect();
        let mut next = 0;
        for col in 0..self.n {
            if x[col] == 0 {
                if next < self.rows.len() && self.rows[next].0 == col {
                    next += 1;
                }
                continue;
            }
            if next >= self.rows.len() || self.rows[next].0 != col {
                return false;
            }
            let (_, v, ref row) = self.rows[next];
            let lp = self.ell.pow(v);
            if x[col] % lp != 0 {
                return false;
            }
            let w = x[col] / lp;
            for (a, &b) in x.iter_mut().zip(row) {
                *a = (*a + q - w * b % q) % q;
            }
            next += 1;
        }
        true
    }

    /// Smallest `j` with `l^j W = 0`.
    pub fn exponent_log(&self) -> u32 {
        self.generators()
            .map(|r| {
                self.m
                    - r.iter()
                        .map(|&x| valuation(x, self.ell, self.m))
                        .min()
                        .unwrap_or(self.m)
            })
            .max()
            .unwrap_or(0)
    }

    /// `l^j W`.
    pub fn scaled(&self, module: &SympModule, j: u32) -> Subgroup {
        let f = if j >= self.m { 0 } else { self.ell.pow(j) };
        let gens: Vec<Vector> = self.generators().map(|r| module.scale(f, r)).collect();
        Subgroup::generated_by(module, &gens)
    }

    /// Isotropic under the `l^m` pairing.
    pub fn is_isotropic(&self, module: &SympModule) -> bool {
        let gens: Vec<&Vector> = self.generators().collect();
        gens.iter().enumerate().all(|(i, u)| {
            gens[i + 1..]
                .iter()
                .all(|v| module.form(u, v, module.modulus()) == 0)
        })
    }

    /// All elements, generated as combinations of the normal form rows with
    /// coefficient ranges given by each row's order.
    pub fn elements(&self) -> Vec<Vector> {
        let q = self.ell.pow(self.m);
        let mut out = vec![vec![0u64; self.n]];
        for (_, v, row) in &self.rows {
            let count = self.ell.pow(self.m - v);
            let mut next = Vec::with_capacity(out.len() * count as usize);
            for base in &out {
                for c in 0..count {
                    next.push(
                        base.iter()
                            .zip(row)
                            .map(|(&a, &b)| (a + c * b) % q)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators()).finish()
    }
}
