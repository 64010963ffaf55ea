use std::fmt;
use std::time::{Duration, Instant};

use super::{enumerate_maximal_isotropic, Subgroup, SympModule, Vector};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct KernelLemmaReport {
    pub g: usize,
    pub ell: u64,
    pub m: u32,
    pub subgroups: usize,
    /// `W = M[l^{m/2}]`.
    pub full_torsion: usize,
    /// `l^{k-1} W` nonzero and isotropic for the induced `l`-pairing.
    pub isotropic_layer: usize,
    pub violations: Vec<Subgroup>,
    pub elapsed: Duration,
}

impl KernelLemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for KernelLemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "module: (Z/{}^{})^{}", self.ell, self.m, 2 * self.g)?;
        writeln!(f, "maximal isotropic subgroups: {}", self.subgroups)?;
        writeln!(f, "branch W = M[l^(m/2)]: {}", self.full_torsion)?;
        writeln!(
            f,
            "branch l^(k-1)W isotropic mod l: {}",
            self.isotropic_layer
        )?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for w in &self.violations {
            writeln!(f, "  {w:?}")?;
        }
        writeln!(f, "wall time: {:.3}s", self.elapsed.as_secs_f64())?;
        write!(
            f,
            "note: Galois stability is not modeled; only nontriviality and isotropy are checked"
        )
    }
}

/// `M[l^k]`, generated by `l^{m-k} e_i`.
fn full_torsion(module: &SympModule, k: u32) -> Subgroup {
    let f = module.ell_pow(module.m() - k);
    let gens: Vec<Vector> = (0..module.rank())
        .map(|i| module.scale(f, &module.basis(i)))
        .collect();
    Subgroup::generated_by(module, &gens)
}

/// Every maximal isotropic `W` of `M = (Z/l^m)^{2g}` either equals
/// `M[l^{m/2}]` or has `l^{k-1} W` nonzero and isotropic under the induced
/// `l`-pairing, where `l^k` is the exponent of `W`.
pub fn verify_kernel_lemma(module: &SympModule) -> Result<KernelLemmaReport> {
    let start = Instant::now();
    let all = enumerate_maximal_isotropic(module)?;
    let mut full = 0;
    let mut layer = 0;
    let mut violations = Vec::new();
    for w in &all {
        let k = w.exponent_log();
        if module.m() % 2 == 0 && k == module.m() / 2 && *w == full_torsion(module, k) {
            full += 1;
            continue;
        }
        let top = w.scaled(module, k.saturating_sub(1));
        let gens: Vec<&Vector> = top.generators().collect();
        let isotropic = gens.iter().all(|u| {
            gens.iter().all(|v| {
                module
                    .induced_mod_ell_pairing(u, v)
                    .map(|x| x == 0)
                    .unwrap_or(false)
            })
        });
        if k >= 1 && !top.is_trivial() && isotropic {
            layer += 1;
        } else {
            violations.push(w.clone());
        }
    }
    Ok(KernelLemmaReport {
        g: module.g(),
        ell: module.ell(),
        m: module.m(),
        subgroups: all.len(),
        full_torsion: full,
        isotropic_layer: layer,
        violations,
        elapsed: start.elapsed(),
    })
}
