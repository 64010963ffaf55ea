//! Finite symplectic modules `(Z/l^m)^{2g}` with the standard alternating
//! form, as a concrete model of the `l^m`-torsion of a principally polarized
//! abelian variety with its Weil pairing.
//!
//! Basis order is `e_1..e_g, f_1..f_g` with `<e_i, f_i> = 1`.

mod counts;
mod enumerate;
mod lemma;
mod normal_form;

pub use counts::{block_diag_index, gaussian_binomial, isotropic_count, sp_order};
pub use enumerate::{
    count_maximal_isotropic, enumerate_maximal_isotropic, for_each_maximal_isotropic,
    DEFAULT_ENUMERATION_BOUND,
};
pub use lemma::{verify_kernel_lemma, KernelLemmaReport};
pub use normal_form::Subgroup;

use crate::error::{Error, Result};
use crate::primes::is_prime;

pub type Vector = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SympModule {
    g: usize,
    ell: u64,
    m: u32,
    modulus: u64,
}

impl SympModule {
    pub fn new(g: usize, ell: u64, m: u32) -> Result<Self> {
        if g == 0 || m == 0 {
            return Err(Error::invalid("g and m must be positive"));
        }
        if !is_prime(ell) {
            return Err(Error::invalid(format!("{ell} is not prime")));
        }
        let modulus = ell
            .checked_pow(m)
            .filter(|&q| q < (1 << 31))
            .ok_or_else(|| Error::Resource(format!("{ell}^{m} is too large")))?;
        Ok(SympModule { g, ell, m, modulus })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `l^m`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    /// Number of elements, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        self.modulus.checked_pow(self.rank() as u32)
    }

    pub(crate) fn ell_pow(&self, j: u32) -> u64 {
        self.ell.pow(j)
    }

    /// The element with mixed-radix index `idx`, first coordinate fastest.
    pub fn element(&self, mut idx: u64) -> Vector {
        let mut v = vec![0; self.rank()];
        for c in v.iter_mut() {
            *c = idx % self.modulus;
            idx /= self.modulus;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = Vector> + '_ {
        let n = self.size().expect("module too large to iterate");
        (0..n).map(|i| self.element(i))
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn scale(&self, k: u64, v: &[u64]) -> Vector {
        let k = k % self.modulus;
        v.iter().map(|&x| x * k % self.modulus).collect()
    }

    pub fn add(&self, u: &[u64], v: &[u64]) -> Vector {
        u.iter()
            .zip(v)
            .map(|(&a, &b)| (a + b) % self.modulus)
            .collect()
    }

    fn check_dim(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::invalid(format!(
                "vector of length {} in a module of rank {}",
                v.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub(crate) fn form(&self, u: &[u64], v: &[u64], modulus: u64) -> u64 {
        let g = self.g;
        let mut acc: u64 = 0;
        for i in 0..g {
            let plus = u[i] % modulus * (v[g + i] % modulus) % modulus;
            let minus = u[g + i] % modulus * (v[i] % modulus) % modulus;
            acc = (acc + plus + modulus - minus) % modulus;
        }
        acc
    }

    /// `<u, v> = sum_i (u_i v_{g+i} - u_{g+i} v_i) mod l^m`.
    pub fn pairing(&self, u: &[u64], v: &[u64]) -> Result<u64> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.form(u, v, self.modulus))
    }

    pub fn is_ell_torsion(&self, v: &[u64]) -> bool {
        v.iter().all(|&x| x * self.ell % self.modulus == 0)
    }

    /// The `l`-pairing on `M[l]`: lift `u = l^{m-1} a`, `v = l^{m-1} b`, and
    /// read `l^{m-1} <a, b>`, which lies in `l^{m-1} Z/l^m = Z/l`.
    pub fn induced_mod_ell_pairing(&self, u: &[u64], v: &[u64]) -> Result<u64> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        if !self.is_ell_torsion(u) || !self.is_ell_torsion(v) {
            return Err(Error::invalid("induced pairing needs l-torsion inputs"));
        }
        let step = self.ell_pow(self.m - 1);
        let a: Vector = u.iter().map(|&x| x / step).collect();
        let b: Vector = v.iter().map(|&x| x / step).collect();
        Ok(lifted_pairing_value(self, &a, &b))
    }

    /// Checks `t <u, v>_{l^m} = <t u, t v>_s` for `st = l^m`, where the right
    /// side is the standard form on `M[s] = tM` read through the coordinate
    /// identification `M[s] -> (Z/s)^{2g}`, `x -> x / t`. Exhaustive over all
    /// pairs when the module has at most `DEFAULT_ENUMERATION_BOUND`
    /// elements, otherwise over a fixed pseudo-random sample.
    pub fn verify_scaling_identity(&self, s: u64, t: u64) -> Result<bool> {
        if s.checked_mul(t) != Some(self.modulus) {
            return Err(Error::invalid(format!(
                "s * t = {s} * {t} does not equal l^m = {}",
                self.modulus
            )));
        }
        let check = |u: &[u64], v: &[u64]| -> bool {
            let lhs = t * self.form(u, v, self.modulus) % self.modulus;
            debug_assert_eq!(lhs % t, 0);
            let lhs = lhs / t;
            let tu = self.scale(t, u);
            let tv = self.scale(t, v);
            let iu: Vector = tu.iter().map(|&x| x / t).collect();
            let iv: Vector = tv.iter().map(|&x| x / t).collect();
            lhs % s == self.form(&iu, &iv, s)
        };
        match self.size() {
            Some(n) if n <= DEFAULT_ENUMERATION_BOUND => {
                let elems: Vec<Vector> = self.elements().collect();
                Ok(elems.iter().all(|u| elems.iter().all(|v| check(u, v))))
            }
            _ => {
                let mut rng = SplitMix(0x5eed_0f_5ca1e);
                Ok((0..100_000).all(|_| {
                    let u: Vector = (0..self.rank())
                        .map(|_| rng.next() % self.modulus)
                        .collect();
                    let v: Vector = (0..self.rank())
                        .map(|_| rng.next() % self.modulus)
                        .collect();
                    check(&u, &v)
                }))
            }
        }
    }
}

/// `l^{m-1} <a, b>` divided back down by `l^{m-1}`.
pub(crate) fn lifted_pairing_value(module: &SympModule, a: &[u64], b: &[u64]) -> u64 {
    let step = module.ell_pow(module.m - 1);
    let raw = module.form(a, b, module.modulus) * step % module.modulus;
    raw / step
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defining_relation() {
        let m = SympModule::new(2, 3, 2).unwrap();
        assert_eq!(m.pairing(&m.basis(0), &m.basis(2)).unwrap(), 1);
        assert_eq!(m.pairing(&m.basis(2), &m.basis(0)).unwrap(), 8);
        assert_eq!(m.pairing(&m.basis(0), &m.basis(3)).unwrap(), 0);
        assert!(m.pairing(&[1, 0], &[0, 1]).is_err());
    }

    #[test]
    fn induced_pairing_examples() {
        let m1 = SympModule::new(2, 5, 1).unwrap();
        for u in [[1, 2, 3, 4], [0, 4, 1, 1]] {
            for v in [[3, 3, 0, 1], [2, 0, 0, 4]] {
                assert_eq!(
                    m1.induced_mod_ell_pairing(&u, &v).unwrap(),
                    m1.pairing(&u, &v).unwrap()
                );
            }
        }
        let m3 = SympModule::new(1, 3, 3).unwrap();
        let e = m3.scale(9, &m3.basis(0));
        let f = m3.scale(9, &m3.basis(1));
        assert_eq!(m3.induced_mod_ell_pairing(&e, &f).unwrap(), 1);
        assert!(m3.induced_mod_ell_pairing(&m3.basis(0), &f).is_err());
    }

    #[test]
    fn scaling_identity_small_cases() {
        for (g, ell, m) in [(1, 2, 2), (1, 3, 2), (1, 2, 3), (2, 2, 2)] {
            let module = SympModule::new(g, ell, m).unwrap();
            let q = module.modulus();
            for j in 0..=m {
                let s = ell.pow(j);
                assert!(
                    module.verify_scaling_identity(s, q / s).unwrap(),
                    "{g} {ell} {m} s={s}"
                );
            }
        }
        let module = SympModule::new(1, 2, 2).unwrap();
        assert!(module.verify_scaling_identity(3, 1).is_err());
    }

    #[test]
    fn scaling_identity_sampled_on_large_module() {
        let module = SympModule::new(3, 5, 2).unwrap();
        assert!(module.verify_scaling_identity(5, 5).unwrap());
    }

    fn module_and_vectors() -> impl Strategy<Value = (SympModule, Vec<u64>, Vec<u64>, Vec<u64>)> {
        (
            1usize..4,
            prop::sample::select(vec![2u64, 3, 5, 7]),
            1u32..4,
        )
            .prop_flat_map(|(g, ell, m)| {
                let module = SympModule::new(g, ell, m).unwrap();
                let q = module.modulus();
                let vec = prop::collection::vec(0..q, 2 * g);
                (Just(module), vec.clone(), vec.clone(), vec)
            })
    }

    proptest! {
        #[test]
        fn pairing_is_alternating_and_antisymmetric((m, u, v, _w) in module_and_vectors()) {
            prop_assert_eq!(m.pairing(&u, &u).unwrap(), 0);
            let uv = m.pairing(&u, &v).unwrap();
            let vu = m.pairing(&v, &u).unwrap();
            prop_assert_eq!((uv + vu) % m.modulus(), 0);
        }

        #[test]
        fn induced_pairing_well_defined_bilinear_alternating(
            (m, a, b, c) in module_and_vectors(),
            shifts in prop::collection::vec(prop::collection::vec(0u64..1000, 6), 5),
        ) {
            let step = m.ell_pow(m.m() - 1);
            let u = m.scale(step, &a);
            let v = m.scale(step, &b);
            let w = m.scale(step, &c);
            let base = m.induced_mod_ell_pairing(&u, &v).unwrap();
            // other preimages differ by elements of l M
            for sh in &shifts {
                let a2: Vector = a.iter().zip(sh).map(|(&x, &s)| (x + m.ell() * s) % m.modulus()).collect();
                let b2: Vector = b.iter().zip(sh.iter().rev()).map(|(&x, &s)| (x + m.ell() * s) % m.modulus()).collect();
                prop_assert_eq!(lifted_pairing_value(&m, &a2, &b2), base);
            }
            prop_assert_eq!(m.induced_mod_ell_pairing(&u, &u).unwrap(), 0);
            let sum = m.add(&v, &w);
            let lhs = m.induced_mod_ell_pairing(&u, &sum).unwrap();
            let rhs = (base + m.induced_mod_ell_pairing(&u, &w).unwrap()) % m.ell();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
