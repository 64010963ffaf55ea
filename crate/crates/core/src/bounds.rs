//! The quantitative sparsity bound, evaluated in natural-log space.
//!
//! Every function takes `ln B` rather than `B`. Exact integers are used for
//! the cover degree (binomials and symplectic indices) and only logged at the
//! end. The constants `c`, `kappa`, `C_iota`, `C'` and `l0` are not effective,
//! so they are free parameters; outputs describe the shape of the bound, not
//! its true size.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes::{is_prime, next_prime};
use crate::symplectic::{block_diag_index, isotropic_count};

#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub g: usize,
    pub g_b: usize,
    pub g_c: usize,
    /// Degree of the base curve under its embedding.
    pub d: u64,
    pub d_k: u64,
    pub c: f64,
    pub kappa: f64,
    pub c_iota: f64,
    pub c_prime: f64,
    pub ell0: u64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            g: 2,
            g_b: 1,
            g_c: 1,
            d: 1,
            d_k: 1,
            c: 1.0,
            kappa: 4.0,
            c_iota: 1.0,
            c_prime: 1.0,
            ell0: 5,
        }
    }
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        if self.g == 0 || self.d == 0 || self.d_k == 0 || self.ell0 == 0 {
            return Err(Error::invalid("g, d, d_K and l0 must be positive"));
        }
        for (name, v) in [("c", self.c), ("C_iota", self.c_iota), ("C'", self.c_prime)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.kappa >= 1.0 && self.kappa.is_finite()) {
            return Err(Error::invalid(format!(
                "kappa must be at least 1, got {}",
                self.kappa
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverCase {
    Diagonal { g_b: usize, g_c: usize },
    Parabolic,
    FourthPower,
}

impl CoverCase {
    pub fn diagonal_from(params: &BoundParams) -> Self {
        CoverCase::Diagonal {
            g_b: params.g_b,
            g_c: params.g_c,
        }
    }

    /// Genus entering the formulas: `4g` for the fourth-power case.
    pub fn effective_genus(&self, g: usize) -> usize {
        match self {
            CoverCase::FourthPower => 4 * g,
            _ => g,
        }
    }

    /// Exponent `D` with `l^D ~ log B` at the optimal level.
    pub fn level_exponent(&self, g: usize) -> u32 {
        match *self {
            CoverCase::Diagonal { g_b, g_c } => (4 * g_b * g_c) as u32,
            _ => {
                let h = self.effective_genus(g);
                (h * h + h) as u32 / 2
            }
        }
    }

    fn check(&self, g: usize) -> Result<()> {
        if let CoverCase::Diagonal { g_b, g_c } = *self {
            if g_b == 0 || g_b > g_c || g_b + g_c != g {
                return Err(Error::invalid(format!(
                    "diagonal case needs 1 <= g_B <= g_C with g_B + g_C = g, got ({g_b}, {g_c}) for g = {g}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoverCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverCase::Diagonal { g_b, g_c } => write!(f, "diagonal({g_b},{g_c})"),
            CoverCase::Parabolic => f.write_str("parabolic"),
            CoverCase::FourthPower => f.write_str("fourth"),
        }
    }
}

/// `(N, M)`: `dim A_g + 1` and `dim A_{8g}`.
pub fn moduli_dims(g: usize) -> Result<(u64, u64)> {
    if g == 0 {
        return Err(Error::invalid("g must be positive"));
    }
    let g = g as u64;
    Ok((g * (g + 1) / 2 + 1, 4 * g * (8 * g + 1)))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Natural log of an arbitrarily large positive integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact `d * binom(N + M, N) * index` for the cover of level `l`.
pub fn cover_degree(case: CoverCase, params: &BoundParams, ell: u64) -> Result<BigUint> {
    if !is_prime(ell) {
        return Err(Error::invalid(format!("level {ell} is not prime")));
    }
    case.check(params.g)?;
    let h = case.effective_genus(params.g);
    let (n, m) = moduli_dims(h)?;
    let index = match case {
        CoverCase::Diagonal { g_b, .. } => block_diag_index(h, g_b, ell)?,
        _ => isotropic_count(h, ell, h)?,
    };
    Ok(BigUint::from(params.d) * binomial(n + m, n) * index)
}

pub fn cover_degree_log(case: CoverCase, params: &BoundParams, ell: u64) -> Result<f64> {
    cover_degree(case, params, ell).map(|d| ln_biguint(&d))
}

/// `ln C_iota + 4g ln l + 9d ln B`.
pub fn height_lift_bound_log(ln_b: f64, params: &BoundParams, ell: u64) -> Result<f64> {
    height_lift_for_genus(ln_b, params, params.g, ell)
}

fn height_lift_for_genus(ln_b: f64, params: &BoundParams, g: usize, ell: u64) -> Result<f64> {
    if !(ln_b >= 0.0) {
        return Err(Error::invalid(format!("need B >= 1, got log B = {ln_b}")));
    }
    Ok(params.c_iota.ln() + 4.0 * g as f64 * (ell as f64).ln() + 9.0 * params.d as f64 * ln_b)
}

/// Point-count bound `c deg^2 H^{2 d_K / deg} (log H)^kappa` for a curve of
/// degree `deg` and heights up to `H`, in log form; requires `H > 2`.
pub fn bck_bound_log(deg: &BigUint, height_log: f64, params: &BoundParams) -> Result<f64> {
    if deg.is_zero() {
        return Err(Error::invalid("curve degree must be positive"));
    }
    if !(height_log > std::f64::consts::LN_2) {
        return Err(Error::invalid(format!(
            "height bound must exceed 2, got log H = {height_log}"
        )));
    }
    let ln_deg = ln_biguint(deg);
    // 2 d_K / deg underflows harmlessly to 0 for huge degrees
    let ratio = 2.0 * params.d_k as f64 * (-ln_deg).exp();
    Ok(params.c.ln() + 2.0 * ln_deg + ratio * height_log + params.kappa * height_log.ln())
}

/// `ln B0`, below which the level optimization is not used.
pub fn threshold_log(case: CoverCase, params: &BoundParams) -> f64 {
    (params.ell0 as f64).powi(case.level_exponent(params.g) as i32)
}

/// `ceil(x)`, treating values within rounding noise of an integer as that
/// integer.
fn tolerant_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// Smallest prime `>= max(l0, ceil((log B)^{1/D}))`.
pub fn optimize_level(ln_b: f64, case: CoverCase, params: &BoundParams) -> Result<u64> {
    params.validate()?;
    case.check(params.g)?;
    let ln_b0 = threshold_log(case, params);
    if !(ln_b >= ln_b0 * (1.0 - 1e-12)) {
        return Err(Error::BelowThreshold { ln_b, ln_b0 });
    }
    let target = tolerant_ceil(ln_b.powf(1.0 / case.level_exponent(params.g) as f64));
    if target > 1e15 {
        return Err(Error::Resource(format!(
            "level target {target} is too large"
        )));
    }
    Ok(next_prime((target as u64).max(params.ell0)))
}

/// `C' log B / l^D` at the optimized level; the optimization keeps it of
/// order `C'`.
pub fn level_balance(ln_b: f64, case: CoverCase, params: &BoundParams) -> Result<f64> {
    let ell = optimize_level(ln_b, case, params)?;
    Ok(params.c_prime * ln_b / (ell as f64).powi(case.level_exponent(params.g) as i32))
}

/// Count bound for one case: the point-count bound applied to the lifted
/// curve on the level-`l` cover.
pub fn s_bound_log(ln_b: f64, case: CoverCase, params: &BoundParams) -> Result<f64> {
    let ell = optimize_level(ln_b, case, params)?;
    let deg = cover_degree(case, params, ell)?;
    bck_bound_log(&deg, lifted_height_log(ln_b, case, params)?, params)
}

/// Height bound on the cover for one case, at the optimized level.
pub fn lifted_height_log(ln_b: f64, case: CoverCase, params: &BoundParams) -> Result<f64> {
    let ell = optimize_level(ln_b, case, params)?;
    height_lift_for_genus(ln_b, params, case.effective_genus(params.g), ell)
}

/// Diagonal for every `1 <= g_B <= g/2`, then parabolic and fourth power.
pub fn cases(g: usize) -> Vec<CoverCase> {
    let mut out: Vec<CoverCase> = (1..=g / 2)
        .map(|g_b| CoverCase::Diagonal { g_b, g_c: g - g_b })
        .collect();
    out.push(CoverCase::Parabolic);
    out.push(CoverCase::FourthPower);
    out
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Log of the sum of the case bounds.
pub fn total_bound_log(ln_b: f64, params: &BoundParams) -> Result<f64> {
    let terms = cases(params.g)
        .into_iter()
        .map(|case| s_bound_log(ln_b, case, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(log_sum_exp(&terms))
}

/// `ln C + 11 g^2 (2 ln g + ln D + ln log 2B)`.
pub fn eehk_bound_log(ln_b: f64, g: usize, c: f64, d: f64) -> Result<f64> {
    if g == 0 || !(ln_b >= 0.0) || !(c > 0.0) || !(d >= 1.0) {
        return Err(Error::invalid("need g >= 1, B >= 1, C > 0 and D >= 1"));
    }
    let g = g as f64;
    Ok(c.ln() + 11.0 * g * g * (2.0 * g.ln() + d.ln() + (std::f64::consts::LN_2 + ln_b).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn dims() {
        assert_eq!(moduli_dims(1).unwrap(), (2, 36));
        assert_eq!(moduli_dims(2).unwrap(), (4, 136));
        assert_eq!(moduli_dims(8).unwrap(), (37, 2080));
        assert!(moduli_dims(0).is_err());
    }

    #[test]
    fn cover_degree_examples() {
        let p = BoundParams::default();
        let b = ln_biguint(&binomial(140, 4));
        let diag = cover_degree_log(CoverCase::Diagonal { g_b: 1, g_c: 1 }, &p, 2).unwrap();
        assert!(close(diag, b + 20f64.ln()));
        let par = cover_degree_log(CoverCase::Parabolic, &p, 3).unwrap();
        assert!(close(par, b + 40f64.ln()));
        let p2 = BoundParams { d: 2, ..p.clone() };
        let par2 = cover_degree_log(CoverCase::Parabolic, &p2, 3).unwrap();
        assert!(close(par2 - par, 2f64.ln()));
        assert!(cover_degree_log(CoverCase::Parabolic, &p, 4).is_err());
    }

    #[test]
    fn height_lift_examples() {
        let p = BoundParams::default();
        assert!(close(
            height_lift_bound_log(1.0, &p, 3).unwrap(),
            8.0 * 3f64.ln() + 9.0
        ));
        assert!(close(
            height_lift_bound_log(0.0, &p, 3).unwrap(),
            8.0 * 3f64.ln()
        ));
        // half the log of an isogeny of degree l^{8g}
        let half_isogeny = 0.5 * (8.0 * 2.0) * 3f64.ln();
        assert!(close(
            height_lift_bound_log(0.0, &p, 3).unwrap(),
            half_isogeny
        ));
    }

    #[test]
    fn bck_examples() {
        let p = BoundParams {
            kappa: 1.0,
            ..BoundParams::default()
        };
        let v = bck_bound_log(&BigUint::from(2u32), 1.0, &p).unwrap();
        assert!(close(v, 2.0 * 2f64.ln() + 1.0));
        assert!(bck_bound_log(&BigUint::from(2u32), 0.5, &p).is_err());
        let huge = BigUint::from(10u32).pow(400);
        let w = bck_bound_log(&huge, 50.0, &p).unwrap();
        assert!(close(w, 2.0 * ln_biguint(&huge) + 50f64.ln()));
    }

    #[test]
    fn optimizer_examples() {
        let p = BoundParams {
            ell0: 2,
            ..BoundParams::default()
        };
        assert_eq!(
            optimize_level(1000.0, CoverCase::Parabolic, &p).unwrap(),
            11
        );
        let diag = CoverCase::Diagonal { g_b: 1, g_c: 1 };
        assert_eq!(optimize_level(16.0, diag, &p).unwrap(), 2);
        let strict = BoundParams {
            ell0: 100,
            ..BoundParams::default()
        };
        match optimize_level(10f64.ln(), CoverCase::Parabolic, &strict) {
            Err(Error::BelowThreshold { ln_b0, .. }) => assert!(close(ln_b0, 1e6)),
            other => panic!("expected threshold error, got {other:?}"),
        }
    }

    #[test]
    fn s_bound_is_the_expanded_chain() {
        let p = BoundParams::default();
        for ln_b in [200.0, 1000.0, 5e4] {
            let ell = optimize_level(ln_b, CoverCase::Parabolic, &p).unwrap();
            let deg = cover_degree(CoverCase::Parabolic, &p, ell).unwrap();
            let ln_deg = ln_biguint(&deg);
            let lift = 4.0 * 2.0 * (ell as f64).ln() + 9.0 * ln_b;
            let expected = 2.0 * ln_deg + 2.0 / deg.to_f64().unwrap() * lift + p.kappa * lift.ln();
            assert!(close(
                s_bound_log(ln_b, CoverCase::Parabolic, &p).unwrap(),
                expected
            ));
        }
    }

    #[test]
    fn s_bound_monotone_on_grid() {
        let p = BoundParams::default();
        let vals: Vec<f64> = (1..=10)
            .map(|i| s_bound_log(100.0 * i as f64 + 100.0, CoverCase::Parabolic, &p).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
    }

    fn slope(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    }

    fn fitted_slope(p: &BoundParams) -> f64 {
        let grid: Vec<f64> = (1..=10).map(|i| 100.0 * i as f64 + 100.0).collect();
        let xs: Vec<f64> = grid.iter().map(|l| (9.0 * p.d as f64 * l).ln()).collect();
        let ys: Vec<f64> = grid
            .iter()
            .map(|&l| s_bound_log(l, CoverCase::Parabolic, p).unwrap())
            .collect();
        slope(&xs, &ys)
    }

    // The squared cover degree grows like (log B)^2 at the optimized level,
    // so the fitted exponent sits near kappa + 2 rather than kappa.
    #[test]
    #[ignore = "fails: fitted exponent is about kappa + 2"]
    fn fitted_exponent_matches_kappa() {
        let p = BoundParams::default();
        let s = fitted_slope(&p);
        assert!((s - p.kappa).abs() <= 0.1 * p.kappa, "slope {s}");
    }

    #[test]
    fn fitted_exponent_tracks_kappa_plus_degree_term() {
        for kappa in [2.0, 4.0, 8.0] {
            let p = BoundParams {
                kappa,
                ..BoundParams::default()
            };
            let s = fitted_slope(&p);
            assert!((s - (kappa + 2.0)).abs() <= 1.0, "kappa {kappa}: slope {s}");
        }
    }

    #[test]
    fn doubling_d() {
        let p1 = BoundParams::default();
        let p2 = BoundParams { d: 2, ..p1.clone() };
        for ln_b in [1e4, 1e5, 1e6] {
            let a = s_bound_log(ln_b, CoverCase::Parabolic, &p1).unwrap();
            let b = s_bound_log(ln_b, CoverCase::Parabolic, &p2).unwrap();
            assert!(b - a <= (p1.kappa + 2.0) * 2f64.ln() + 1e-9);
            assert!(b > a);
        }
    }

    #[test]
    fn total_over_cases() {
        assert_eq!(cases(2).len(), 3);
        assert_eq!(cases(5).len(), 4);
        let p = BoundParams {
            ell0: 2,
            ..BoundParams::default()
        };
        let ln_b = 2f64.powi(36) * 1.5;
        let total = total_bound_log(ln_b, &p).unwrap();
        let each: Vec<f64> = cases(2)
            .iter()
            .map(|&c| s_bound_log(ln_b, c, &p).unwrap())
            .collect();
        let max = each.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(each.iter().all(|&e| total >= e));
        assert!(total <= max + 3f64.ln() + 1e-9);
        assert!(matches!(
            total_bound_log(1000.0, &p),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn eehk_examples() {
        let v = eehk_bound_log(1.0, 1, 1.0, 1.0).unwrap();
        assert!(close(v, 11.0 * (1.0 + 2f64.ln()).ln()));
        assert!(eehk_bound_log(1.0, 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn block_index_approaches_l4() {
        let p = BoundParams::default();
        let base = ln_biguint(&binomial(140, 4));
        let diag = CoverCase::Diagonal { g_b: 1, g_c: 1 };
        let gaps: Vec<f64> = crate::primes::odd_primes_up_to(97)
            .into_iter()
            .map(|l| cover_degree_log(diag, &p, l).unwrap() - 4.0 * (l as f64).ln() - base)
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(*gaps.last().unwrap() < 2e-4);
    }

    proptest! {
        #[test]
        fn optimizer_output_is_prime_and_balanced(ln_b in 1e3f64..1e6, which in 0usize..2) {
            let p = BoundParams::default();
            let case = [CoverCase::Diagonal { g_b: 1, g_c: 1 }, CoverCase::Parabolic][which];
            let ell = optimize_level(ln_b, case, &p).unwrap();
            prop_assert!(is_prime(ell) && ell >= p.ell0);
            let bal = level_balance(ln_b, case, &p).unwrap();
            prop_assert!((1.0 / 8.0..=8.0).contains(&bal), "balance {}", bal);
        }

        #[test]
        fn bounds_finite_and_monotone(a in 1e3f64..1e6, b in 1e3f64..1e6) {
            let p = BoundParams::default();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for case in [CoverCase::Diagonal { g_b: 1, g_c: 1 }, CoverCase::Parabolic] {
                let x = s_bound_log(lo, case, &p).unwrap();
                let y = s_bound_log(hi, case, &p).unwrap();
                prop_assert!(x.is_finite() && y.is_finite());
            }
            let e1 = eehk_bound_log(lo, 2, 1.0, 1.0).unwrap();
            let e2 = eehk_bound_log(hi, 2, 1.0, 1.0).unwrap();
            prop_assert!(e1 <= e2);
        }
    }
}
