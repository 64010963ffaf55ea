use std::collections::{BTreeSet, HashSet};

use super::{Subgroup, SympModule, Vector};
use crate::error::{Error, Result};

/// Largest module (in elements) the enumerators accept.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 4096;

fn check_size(module: &SympModule) -> Result<()> {
    match module.size() {
        Some(n) if n <= DEFAULT_ENUMERATION_BOUND => Ok(()),
        _ => Err(Error::Resource(format!(
            "module (Z/{}^{})^{} exceeds {DEFAULT_ENUMERATION_BOUND} elements",
            module.ell(),
            module.m(),
            module.rank()
        ))),
    }
}

/// Calls `visit` on every maximal isotropic subgroup (order `l^{mg}`).
pub fn for_each_maximal_isotropic(
    module: &SympModule,
    mut visit: impl FnMut(&Subgroup),
) -> Result<()> {
    check_size(module)?;
    if module.m() == 1 {
        lagrangians_mod_ell(module, &mut |pivots: &[usize], rows: &[Vector]| {
            let normal = pivots
                .iter()
                .zip(rows)
                .map(|(&c, r)| (c, 0, r.clone()))
                .collect();
            visit(&Subgroup::from_normal_rows(module, normal));
        });
    } else {
        for s in maximal_isotropic_search(module) {
            visit(&s);
        }
    }
    Ok(())
}

/// Number of maximal isotropic subgroups, without materializing them.
pub fn count_maximal_isotropic(module: &SympModule) -> Result<u64> {
    check_size(module)?;
    if module.m() == 1 {
        let mut n = 0u64;
        lagrangians_mod_ell(module, &mut |_: &[usize], _: &[Vector]| n += 1);
        Ok(n)
    } else {
        Ok(maximal_isotropic_search(module).len() as u64)
    }
}

/// All maximal isotropic subgroups, sorted by normal form.
pub fn enumerate_maximal_isotropic(module: &SympModule) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for_each_maximal_isotropic(module, |s| out.push(s.clone()))?;
    out.sort();
    Ok(out)
}

/// Grows isotropic subgroups one orthogonal element at a time, deduplicating
/// by normal form. Works for every `m`.
pub(crate) fn maximal_isotropic_search(module: &SympModule) -> BTreeSet<Subgroup> {
    let target = module.m() * module.g() as u32;
    let q = module.modulus();
    let elements: Vec<Vector> = module.elements().collect();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut found = BTreeSet::new();
    let mut stack = vec![Subgroup::trivial(module)];
    while let Some(h) = stack.pop() {
        if h.log_order() == target {
            found.insert(h);
            continue;
        }
        let gens: Vec<Vector> = h.generators().cloned().collect();
        for x in &elements {
            if h.contains(x) || gens.iter().any(|g| module.form(g, x, q) != 0) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x.clone());
            let next = Subgroup::generated_by(module, &next_gens);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    found
}

/// Lagrangian subspaces of F_l^{2g} by reduced row echelon form: choose the
/// pivot columns, then for each row solve the linear conditions making it
/// orthogonal to the earlier rows and walk the solution space. `visit`
/// receives the pivot columns and the rows.
fn lagrangians_mod_ell(module: &SympModule, visit: &mut impl FnMut(&[usize], &[Vector])) {
    let n = module.rank();
    let g = module.g();
    let mut pivots = Vec::with_capacity(g);
    choose_pivots(module, 0, n, g, &mut pivots, visit);
}

fn choose_pivots(
    module: &SympModule,
    start: usize,
    n: usize,
    g: usize,
    pivots: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], &[Vector]),
) {
    if pivots.len() == g {
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..n).filter(|c| !pivots.contains(c)).collect())
            .collect();
        let mut rows: Vec<Vector> = pivots
            .iter()
            .map(|&p| {
                let mut r = vec![0u64; n];
                r[p] = 1;
                r
            })
            .collect();
        fill_rows(module, pivots, &free, &mut rows, 0, visit);
        return;
    }
    let remaining = g - pivots.len();
    for c in start..=n - remaining {
        pivots.push(c);
        choose_pivots(module, c + 1, n, g, pivots, visit);
        pivots.pop();
    }
}

/// `<u, e_c>` for the standard form mod `ell`.
fn pair_with_basis(u: &[u64], c: usize, g: usize, ell: u64) -> u64 {
    if c >= g {
        u[c - g]
    } else {
        (ell - u[c + g]) % ell
    }
}

fn inverse_mod_prime(a: u64, ell: u64) -> u64 {
    crate::primes::pow_mod(a, ell - 2, ell)
}

// The size bound keeps the rank at most 12 (ell >= 2, ell^{2g} <= 4096).
const MAX_RANK: usize = 12;
const MAX_ROWS: usize = MAX_RANK / 2;

/// Affine solution space of `A x = b` over F_l: a particular solution and a
/// kernel basis (`dim` vectors), or `None` if inconsistent. Works in place
/// on fixed-size buffers since this runs once per search node.
struct Solution {
    particular: [u64; MAX_RANK],
    basis: [[u64; MAX_RANK]; MAX_RANK],
    dim: usize,
}

fn solve_mod(
    a: &mut [[u64; MAX_RANK]; MAX_ROWS],
    b: &mut [u64; MAX_ROWS],
    rows: usize,
    cols: usize,
    ell: u64,
) -> Option<Solution> {
    let mut pivot_cols = [0usize; MAX_ROWS];
    let mut is_pivot = [false; MAX_RANK];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        b.swap(r, pr);
        let inv = inverse_mod_prime(a[r][c], ell);
        for x in a[r][..cols].iter_mut() {
            *x = *x * inv % ell;
        }
        b[r] = b[r] * inv % ell;
        let pivot_row = a[r];
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + ell * ell - f * pivot_row[k]) % ell;
                }
                b[i] = (b[i] + ell * ell - f * b[r]) % ell;
            }
        }
        pivot_cols[r] = c;
        is_pivot[c] = true;
        r += 1;
    }
    if b[r..rows].iter().any(|&x| x != 0) {
        return None;
    }
    let mut sol = Solution {
        particular: [0; MAX_RANK],
        basis: [[0; MAX_RANK]; MAX_RANK],
        dim: 0,
    };
    for (i, &c) in pivot_cols[..r].iter().enumerate() {
        sol.particular[c] = b[i];
    }
    for fc in (0..cols).filter(|&c| !is_pivot[c]) {
        let v = &mut sol.basis[sol.dim];
        v[fc] = 1;
        for (i, &c) in pivot_cols[..r].iter().enumerate() {
            v[c] = (ell - a[i][fc]) % ell;
        }
        sol.dim += 1;
    }
    Some(sol)
}

fn fill_rows(
    module: &SympModule,
    pivots: &[usize],
    free: &[Vec<usize>],
    rows: &mut [Vector],
    i: usize,
    visit: &mut impl FnMut(&[usize], &[Vector]),
) {
    if i == rows.len() {
        visit(pivots, rows);
        return;
    }
    let ell = module.ell();
    let g = module.g();
    let cols = free[i].len();
    let mut a = [[0u64; MAX_RANK]; MAX_ROWS];
    let mut b = [0u64; MAX_ROWS];
    for (j, r) in rows[..i].iter().enumerate() {
        for (k, &c) in free[i].iter().enumerate() {
            a[j][k] = pair_with_basis(r, c, g, ell);
        }
        b[j] = (ell - pair_with_basis(r, pivots[i], g, ell)) % ell;
    }
    let Some(sol) = solve_mod(&mut a, &mut b, i, cols, ell) else {
        return;
    };
    for (k, &c) in free[i].iter().enumerate() {
        rows[i][c] = sol.particular[k];
    }
    // Odometer over the kernel coordinates: bumping digit d adds basis[d],
    // and l bumps return the row to where it was, so no reset is needed.
    let mut digits = [0u64; MAX_RANK];
    loop {
        debug_assert!(rows[..i].iter().all(|r| module.form(r, &rows[i], ell) == 0));
        fill_rows(module, pivots, free, rows, i + 1, visit);
        let mut d = 0;
        loop {
            if d == sol.dim {
                return;
            }
            for (k, &c) in free[i].iter().enumerate() {
                rows[i][c] = (rows[i][c] + sol.basis[d][k]) % ell;
            }
            digits[d] += 1;
            if digits[d] < ell {
                break;
            }
            digits[d] = 0;
            d += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::isotropic_count;

    #[test]
    fn echelon_search_agrees_with_general_search() {
        for (g, ell) in [(1u64, 2u64), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)] {
            let module = SympModule::new(g as usize, ell, 1).unwrap();
            let fast = enumerate_maximal_isotropic(&module).unwrap();
            let slow: Vec<Subgroup> = maximal_isotropic_search(&module).into_iter().collect();
            assert_eq!(fast, slow, "g={g} l={ell}");
        }
    }

    #[test]
    fn lagrangian_counts_for_m1() {
        for (g, ell) in [(1usize, 2u64), (1, 7), (2, 2), (2, 5), (3, 3), (4, 2)] {
            let module = SympModule::new(g, ell, 1).unwrap();
            let n = count_maximal_isotropic(&module).unwrap();
            assert_eq!(
                n.to_string(),
                isotropic_count(g, ell, g).unwrap().to_string()
            );
        }
    }

    #[test]
    fn results_are_isotropic_of_right_order() {
        let module = SympModule::new(1, 2, 3).unwrap();
        let all = enumerate_maximal_isotropic(&module).unwrap();
        assert!(!all.is_empty());
        for s in &all {
            assert_eq!(s.log_order(), 3);
            assert!(s.is_isotropic(&module));
        }
    }

    #[test]
    fn size_bound_enforced() {
        let module = SympModule::new(3, 5, 1).unwrap();
        assert!(matches!(
            count_maximal_isotropic(&module),
            Err(Error::Resource(_))
        ));
    }
}
