use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pow(ell: u64, e: usize) -> BigUint {
    BigUint::from(ell).pow(e as u32)
}

/// `|Sp_{2g}(F_l)| = l^{g^2} prod_{i=1}^{g} (l^{2i} - 1)`.
pub fn sp_order(g: usize, ell: u64) -> BigUint {
    (1..=g).fold(pow(ell, g * g), |acc, i| acc * (pow(ell, 2 * i) - 1u32))
}

/// Gaussian binomial `[n, k]_l`.
pub fn gaussian_binomial(n: usize, k: usize, ell: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow(ell, n - i) - 1u32;
        den *= pow(ell, i + 1) - 1u32;
    }
    num / den
}

/// Number of `k`-dimensional isotropic subspaces of a symplectic F_l-space of
/// dimension `2g`: `[g, k]_l prod_{i=g-k+1}^{g} (l^i + 1)`.
pub fn isotropic_count(g: usize, ell: u64, k: usize) -> Result<BigUint> {
    if k > g {
        return Err(Error::invalid(format!(
            "isotropic dimension {k} exceeds g = {g}"
        )));
    }
    Ok(
        (g - k + 1..=g).fold(gaussian_binomial(g, k, ell), |acc, i| {
            acc * (pow(ell, i) + 1u32)
        }),
    )
}

/// `[Sp_{2g} : Sp_{2g_B} x Sp_{2(g - g_B)}]` over F_l.
pub fn block_diag_index(g: usize, g_b: usize, ell: u64) -> Result<BigUint> {
    if g_b == 0 || g_b >= g {
        return Err(Error::invalid(format!(
            "need 0 < g_B < g, got g_B = {g_b}, g = {g}"
        )));
    }
    let num = sp_order(g, ell);
    let den = sp_order(g_b, ell) * sp_order(g - g_b, ell);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(
            "block subgroup order does not divide".into(),
        ));
    }
    Ok(q)
}
