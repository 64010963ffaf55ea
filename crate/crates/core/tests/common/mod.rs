//! Brute-force oracles shared by the integration tests. None of them calls
//! into the library's arithmetic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `F mod p`, lowest degree first.
pub fn reduce(coeffs: &[i64], p: u64) -> Vec<u64> {
    coeffs
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u64)
        .collect()
}

fn eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Points on the smooth projective model of `y^2 = F(x)` over F_p by
/// trying every `(x, y)`; the points at infinity are one for odd degree,
/// and two or zero for even degree by whether the leading coefficient is a
/// square.
pub fn naive_count_fp(coeffs: &[i64], p: u64) -> u64 {
    let f = reduce(coeffs, p);
    let mut n = 0;
    for x in 0..p {
        let fx = eval_mod(&f, x, p);
        for y in 0..p {
            if y * y % p == fx {
                n += 1;
            }
        }
    }
    let deg = coeffs.len() - 1;
    let lead = f[deg];
    n + if deg % 2 == 1 {
        1
    } else if (0..p).any(|y| y * y % p == lead) {
        2
    } else {
        0
    }
}

/// F_{p^2} as F_p[s]/(s^2 + s + c) for the first irreducible choice of `c`.
#[derive(Clone, Copy)]
pub struct Fp2 {
    p: u64,
    c: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Self {
        // s^2 + s + c is irreducible iff 1 - 4c is a non-square
        let c = (1..p)
            .find(|&c| {
                let d = (1 + 4 * p * p - 4 * c) % p;
                d != 0 && !(0..p).any(|y| y * y % p == d)
            })
            .expect("irreducible quadratic");
        Fp2 { p, c }
    }

    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        // s^2 = -s - c
        let p = self.p;
        let a = x.0 * y.0 % p;
        let b = (x.0 * y.1 + x.1 * y.0) % p;
        let s2 = x.1 * y.1 % p;
        ((a + (p - self.c) * s2) % p, (b + (p - 1) * s2) % p)
    }

    fn add(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    fn eval(&self, f: &[u64], x: (u64, u64)) -> (u64, u64) {
        f.iter()
            .rev()
            .fold((0, 0), |acc, &c| self.add(self.mul(acc, x), (c, 0)))
    }

    fn index(&self, x: (u64, u64)) -> usize {
        (x.0 * self.p + x.1) as usize
    }
}

/// Same as [`naive_count_fp`] over F_{p^2}, with a table of squares.
pub fn naive_count_fp2(coeffs: &[i64], p: u64) -> u64 {
    let field = Fp2::new(p);
    let f = reduce(coeffs, p);
    let q = (p * p) as usize;
    let mut roots = vec![0u64; q];
    for a in 0..p {
        for b in 0..p {
            let sq = field.mul((a, b), (a, b));
            roots[field.index(sq)] += 1;
        }
    }
    let mut n = 0;
    for a in 0..p {
        for b in 0..p {
            n += roots[field.index(field.eval(&f, (a, b)))];
        }
    }
    let deg = coeffs.len() - 1;
    // every element of F_p is a square in F_{p^2}
    n + if deg % 2 == 1 { 1 } else { 2 }
}

/// `#J(F_p)` for `y^2 = F`, `deg F = 5`, by counting Mumford pairs `(u, v)`:
/// `u` monic of degree at most 2, `deg v < deg u`, `u | v^2 - F`.
pub fn mumford_count(coeffs: &[i64], p: u64) -> u64 {
    assert_eq!(coeffs.len(), 6, "quintic models only");
    let f = reduce(coeffs, p);
    let rem_zero = |u: &[u64], v: &[u64]| -> bool {
        // r = v^2 - F, then reduce mod monic u
        let mut r = vec![0u64; 6];
        for (i, &a) in v.iter().enumerate() {
            for (j, &b) in v.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        for (i, &c) in f.iter().enumerate() {
            r[i] = (r[i] + p - c) % p;
        }
        let du = u.len() - 1;
        for top in (du..r.len()).rev() {
            let lead = r[top];
            if lead == 0 {
                continue;
            }
            for (k, &uc) in u.iter().enumerate() {
                let idx = top - du + k;
                r[idx] = (r[idx] + p - lead * uc % p) % p;
            }
        }
        r[..du].iter().all(|&x| x == 0)
    };
    let mut n = 1; // u = 1
    for u0 in 0..p {
        let u = [u0, 1];
        for v0 in 0..p {
            if rem_zero(&u, &[v0]) {
                n += 1;
            }
        }
    }
    for u0 in 0..p {
        for u1 in 0..p {
            let u = [u0, u1, 1];
            for v0 in 0..p {
                for v1 in 0..p {
                    if rem_zero(&u, &[v0, v1]) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// `|Sp_{2g}(F_l)|` by testing every matrix against `M^T J M = J`.
pub fn sp_order_by_matrices(g: usize, ell: u64) -> u64 {
    let n = 2 * g;
    let total = ell.pow((n * n) as u32);
    let j = |r: usize, c: usize| -> i64 {
        if r < g && c == r + g {
            1
        } else if r >= g && c + g == r {
            -1
        } else {
            0
        }
    };
    let mut count = 0;
    let mut m = vec![0i64; n * n];
    for idx in 0..total {
        let mut k = idx;
        for e in m.iter_mut() {
            *e = (k % ell) as i64;
            k /= ell;
        }
        let ok = (0..n).all(|r| {
            (0..n).all(|c| {
                // (M^T J M)_{rc} = sum_{a,b} M_{a r} J_{a b} M_{b c}
                let mut s = 0i64;
                for a in 0..n {
                    for b in 0..n {
                        let jab = j(a, b);
                        if jab != 0 {
                            s += m[a * n + r] * jab * m[b * n + c];
                        }
                    }
                }
                (s - j(r, c)).rem_euclid(ell as i64) == 0
            })
        });
        if ok {
            count += 1;
        }
    }
    count
}

fn form(u: &[u64], v: &[u64], ell: u64) -> u64 {
    let g = u.len() / 2;
    let mut s = 0i64;
    for i in 0..g {
        s += (u[i] * v[g + i]) as i64 - (u[g + i] * v[i]) as i64;
    }
    s.rem_euclid(ell as i64) as u64
}

/// Isotropic `k`-dimensional subspaces of F_l^{2g}, found by spanning every
/// `k`-tuple of vectors and keeping distinct isotropic spans of size `l^k`.
pub fn isotropic_subspaces_brute(g: usize, ell: u64, k: usize) -> usize {
    let n = 2 * g;
    let vectors: Vec<Vec<u64>> = (0..ell.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let c = i % ell;
                    i /= ell;
                    c
                })
                .collect()
        })
        .collect();
    let mut found: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(choice) = stack.pop() {
        if choice.len() == k {
            let gens: Vec<&Vec<u64>> = choice.iter().map(|&i| &vectors[i]).collect();
            if gens
                .iter()
                .any(|a| gens.iter().any(|b| form(a, b, ell) != 0))
            {
                continue;
            }
            let mut span: BTreeSet<Vec<u64>> = BTreeSet::new();
            for coeffs in 0..ell.pow(k as u32) {
                let mut c = coeffs;
                let mut v = vec![0u64; n];
                for gen in &gens {
                    let a = c % ell;
                    c /= ell;
                    for (x, y) in v.iter_mut().zip(gen.iter()) {
                        *x = (*x + a * y) % ell;
                    }
                }
                span.insert(v);
            }
            if span.len() as u64 == ell.pow(k as u32) {
                found.insert(span.into_iter().collect());
            }
            continue;
        }
        let start = choice.last().map_or(1, |&i| i + 1);
        for i in start..vectors.len() {
            let mut next = choice.clone();
            next.push(i);
            stack.push(next);
        }
    }
    found.len()
}

/// Positive divisors of `n != 0` by trial division after factoring; panics
/// if `n` has a prime factor above `10^6`.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= m && d < BigInt::from(1_000_000) {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if !m.is_one() {
        assert!(
            m < BigInt::from(1_000_000_000_000i64),
            "oracle cannot factor {n}"
        );
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in factors {
        let mut next = Vec::new();
        for base in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pw);
                pw *= &q;
            }
        }
        divs = next;
    }
    divs
}

/// Whether the monic quartic `T^4 + a3 T^3 + a2 T^2 + a1 T + a0` factors
/// over Q: a linear factor from a root dividing `a0`, or a product of two
/// monic quadratics `(T^2 + aT + b)(T^2 + cT + d)` found by trying every
/// ordered divisor pair `bd = a0` and solving `a + c = a3`,
/// `ac = a2 - b - d` as a quadratic, then checking `ad + bc = a1`.
pub fn quartic_factors(a0: &BigInt, a1: &BigInt, a2: &BigInt, a3: &BigInt) -> bool {
    if a0.is_zero() {
        return true;
    }
    let eval = |x: &BigInt| x.pow(4) + a3 * x.pow(3) + a2 * x * x + a1 * x + a0;
    let divs = positive_divisors(a0);
    for d in &divs {
        for r in [d.clone(), -d.clone()] {
            if eval(&r).is_zero() {
                return true;
            }
        }
    }
    for dpos in &divs {
        for b in [dpos.clone(), -dpos.clone()] {
            let d = a0 / &b;
            let prod = a2 - &b - &d;
            let disc = a3 * a3 - BigInt::from(4) * &prod;
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            for root in [s.clone(), -s.clone()] {
                let num: BigInt = a3 + root;
                if num.is_odd() {
                    continue;
                }
                let a = num / 2;
                let c = a3 - &a;
                if &a * &d + &b * &c == *a1 {
                    return true;
                }
            }
        }
    }
    false
}

/// Characteristic polynomial of the `k`-th power of the companion matrix of
/// `T^4 - c1 T^3 + c2 T^2 - p c1 T + p^2`, by Faddeev-LeVerrier, returned as
/// `[a0, a1, a2, a3]` of the monic result.
pub fn power_charpoly_by_matrix(c1: i64, c2: i64, p: u64, k: u32) -> [BigInt; 4] {
    let p = BigInt::from(p);
    // companion: coefficients of T^4 + e3 T^3 + e2 T^2 + e1 T + e0
    let e = [
        &p * &p,
        -BigInt::from(c1) * &p,
        BigInt::from(c2),
        -BigInt::from(c1),
    ];
    let mut comp = vec![vec![BigInt::zero(); 4]; 4];
    for i in 1..4 {
        comp[i][i - 1] = BigInt::one();
    }
    for i in 0..4 {
        comp[i][3] = -e[i].clone();
    }
    let mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| (0..4).fold(BigInt::zero(), |s, t| s + &a[i][t] * &b[t][j]))
                    .collect()
            })
            .collect()
    };
    let mut a = comp.clone();
    for _ in 1..k {
        a = mul(&a, &comp);
    }
    // Faddeev-LeVerrier: M_1 = I, c_{n-1} = -tr(A); M_j = A M_{j-1} + c_{n-j+1} I
    let mut coeffs = vec![BigInt::zero(); 5];
    coeffs[4] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    for j in 1..=4usize {
        let am = mul(&a, &m);
        let tr = (0..4).fold(BigInt::zero(), |s, i| s + &am[i][i]);
        let c = -tr / BigInt::from(j as i64);
        coeffs[4 - j] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    [
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
        coeffs[3].clone(),
    ]
}
