//! Word-size modular arithmetic: characteristic polynomials of
//! Gaussian-integer matrices with certified Chinese-remainder
//! reconstruction, mod-p polynomial helpers, and rational reconstruction.
//!
//! Gaussian integers map into F_p through the two splittings i ↦ ±s of a
//! prime p ≡ 1 (mod 4); real and imaginary parts are recovered from the
//! pair of images. A reconstruction is exact once the prime product
//! provably exceeds twice the Hadamard-style coefficient bound.

use crate::linalg::{DMat, GInt};
use num::bigint::Sign;
use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use once_cell::sync::Lazy;

// ---------------------------------------------------------------------------
// primes

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn u64_mulmod(a: u64, b: u64, p: u64) -> u64 {
    mulmod(a, b, p)
}

pub fn u64_addmod(a: u64, b: u64, p: u64) -> u64 {
    addmod(a, b, p)
}

pub fn u64_submod(a: u64, b: u64, p: u64) -> u64 {
    submod(a, b, p)
}

pub fn u64_invmod(a: u64, p: u64) -> u64 {
    invmod(a, p)
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A split prime p ≡ 1 (mod 4) with a fixed square root of −1.
#[derive(Clone, Copy, Debug)]
pub struct SplitPrime {
    pub p: u64,
    pub sqrt_minus_one: u64,
}

fn sqrt_minus_one(p: u64) -> u64 {
    for g in 2u64.. {
        if powmod(g, (p - 1) / 2, p) == p - 1 {
            let s = powmod(g, (p - 1) / 4, p);
            debug_assert_eq!(mulmod(s, s, p), p - 1);
            return s;
        }
    }
    unreachable!()
}

/// Deterministic descending sequence of split primes just under 2⁶².
pub fn split_primes(count: usize) -> Vec<SplitPrime> {
    static CACHE: Lazy<std::sync::Mutex<Vec<SplitPrime>>> =
        Lazy::new(|| std::sync::Mutex::new(Vec::new()));
    let mut cache = CACHE.lock().unwrap();
    let mut next = cache
        .last()
        .map(|sp| sp.p - 4)
        .unwrap_or((1u64 << 62) - 3); // ≡ 1 (mod 4)
    while cache.len() < count {
        while !is_prime_u64(next) {
            next -= 4;
        }
        cache.push(SplitPrime {
            p: next,
            sqrt_minus_one: sqrt_minus_one(next),
        });
        next -= 4;
    }
    cache[..count].to_vec()
}

// ---------------------------------------------------------------------------
// reductions

pub fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Image of a Gaussian integer under the splitting i ↦ s.
pub fn gint_mod(x: &GInt, p: u64, s: u64) -> u64 {
    addmod(bigint_mod_u64(&x.re, p), mulmod(bigint_mod_u64(&x.im, p), s, p), p)
}

pub fn gint_mat_mod(m: &DMat<GInt>, p: u64, s: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        for c in 0..m.cols {
            out.push(gint_mod(m.at(r, c), p, s));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// characteristic polynomial mod p

/// Characteristic polynomial of an n×n matrix over F_p, low-to-high
/// coefficients, via Hessenberg reduction. O(n³).
pub fn charpoly_mod_p(mat: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut h = mat.to_vec();
    let at = |h: &Vec<u64>, r: usize, c: usize| h[r * n + c];
    // reduce to upper Hessenberg form by similarity transformations
    for col in 0..n.saturating_sub(2) {
        let pivot_row = (col + 1..n).find(|&r| at(&h, r, col) != 0);
        let Some(pr) = pivot_row else { continue };
        if pr != col + 1 {
            for c in 0..n {
                h.swap(pr * n + c, (col + 1) * n + c);
            }
            for r in 0..n {
                h.swap(r * n + pr, r * n + col + 1);
            }
        }
        let inv = invmod(at(&h, col + 1, col), p);
        for r in col + 2..n {
            let f = mulmod(at(&h, r, col), inv, p);
            if f == 0 {
                continue;
            }
            // row_r -= f * row_{col+1}
            for c in 0..n {
                let sub = mulmod(f, at(&h, col + 1, c), p);
                h[r * n + c] = submod(at(&h, r, c), sub, p);
            }
            // col_{col+1} += f * col_r
            for rr in 0..n {
                let add = mulmod(f, at(&h, rr, r), p);
                h[rr * n + col + 1] = addmod(at(&h, rr, col + 1), add, p);
            }
        }
    }
    // p_m(x) = (x − h_mm) p_{m−1}(x) − Σ_i h_{m−i,m} (∏_j h_{m−j+1,m−j}) p_{m−i−1}(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut pm = vec![0u64; m + 1];
        let prev = &polys[m - 1];
        // (x − h[m-1][m-1]) * prev
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = addmod(pm[k + 1], c, p);
            pm[k] = submod(pm[k], mulmod(at(&h, m - 1, m - 1), c, p), p);
        }
        let mut subdiag_prod = 1u64;
        for i in 1..m {
            // ∏_{j=1}^{i} h[m−j][m−j−1] (0-indexed)
            subdiag_prod = mulmod(subdiag_prod, at(&h, m - i, m - i - 1), p);
            if subdiag_prod == 0 {
                break;
            }
            let factor = mulmod(at(&h, m - i - 1, m - 1), subdiag_prod, p);
            if factor == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = submod(pm[k], mulmod(factor, c, p), p);
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

// ---------------------------------------------------------------------------
// polynomials over F_p

pub fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

pub fn poly_deg(a: &[u64]) -> usize {
    let mut d = a.len();
    while d > 1 && a[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

pub fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            out[i + j] = addmod(out[i + j], mulmod(ca, cb, p), p);
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo b (b nonzero), in place arithmetic mod p.
pub fn poly_rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_deg(b);
    let lead_inv = invmod(b[db], p);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let f = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        for k in 0..=db {
            let sub = mulmod(f, b[k], p);
            r[k + shift] = submod(r[k + shift], sub, p);
        }
        poly_trim(&mut r);
    }
    r
}

pub fn poly_gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    // normalize monic
    let d = poly_deg(&x);
    let inv = invmod(x[d], p);
    for c in x.iter_mut() {
        *c = mulmod(*c, inv, p);
    }
    x
}

pub fn poly_derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (k, &c) in a.iter().enumerate().skip(1) {
        out.push(mulmod(c, (k as u64) % p, p));
    }
    poly_trim(&mut out);
    out
}

/// Exact quotient a / b when the division is known to be exact mod p.
pub fn poly_exact_div_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let da = poly_deg(a);
    let db = poly_deg(b);
    assert!(da >= db);
    let lead_inv = invmod(b[db], p);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut q = vec![0u64; da - db + 1];
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let f = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = f;
        for k in 0..=db {
            let sub = mulmod(f, b[k], p);
            r[k + shift] = submod(r[k + shift], sub, p);
        }
        poly_trim(&mut r);
    }
    debug_assert!(poly_is_zero(&r), "inexact polynomial division");
    q
}

/// Extended Euclid: returns (g, u) monic with u·b ≡ g (mod a)… specifically
/// computes the Bézout cofactor u of b with u·b ≡ gcd(a,b) (mod a).
pub fn poly_bezout_of_second_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut u0: Vec<u64> = vec![0];
    let mut u1: Vec<u64> = vec![1];
    while !poly_is_zero(&r1) {
        // quotient of r0 by r1
        let db = poly_deg(&r1);
        let lead_inv = invmod(r1[db], p);
        let mut q = vec![0u64; poly_deg(&r0).saturating_sub(db) + 1];
        let mut rem = r0.clone();
        while !poly_is_zero(&rem) && poly_deg(&rem) >= db {
            let dr = poly_deg(&rem);
            let f = mulmod(rem[dr], lead_inv, p);
            q[dr - db] = f;
            for k in 0..=db {
                let sub = mulmod(f, r1[k], p);
                rem[k + dr - db] = submod(rem[k + dr - db], sub, p);
            }
            poly_trim(&mut rem);
        }
        let qu1 = poly_mul_mod(&q, &u1, p);
        let mut unew = u0.clone();
        unew.resize(unew.len().max(qu1.len()), 0);
        for (k, &c) in qu1.iter().enumerate() {
            unew[k] = submod(unew[k], c, p);
        }
        poly_trim(&mut unew);
        u0 = u1;
        u1 = unew;
        r0 = r1;
        r1 = rem;
    }
    // normalize gcd monic
    let d = poly_deg(&r0);
    let inv = invmod(r0[d], p);
    let g: Vec<u64> = r0.iter().map(|&c| mulmod(c, inv, p)).collect();
    let u: Vec<u64> = u0.iter().map(|&c| mulmod(c, inv, p)).collect();
    (g, u)
}

// ---------------------------------------------------------------------------
// CRT and rational reconstruction

/// Combine residues into the symmetric range (−M/2, M/2], M = ∏ p.
pub fn crt_symmetric(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, p) in residues {
        let pb = BigInt::from(p);
        // x' ≡ x (mod m), x' ≡ r (mod p)
        let minv = invmod(bigint_mod_u64(&m, p), p);
        let delta = submod(r % p, bigint_mod_u64(&x, p), p);
        let t = mulmod(minv, delta, p);
        x += &m * BigInt::from(t);
        m *= pb;
    }
    let half = &m >> 1;
    if x > half {
        x -= &m;
    }
    (x, m)
}

/// Wang rational reconstruction: find n/d with n ≡ a·d (mod m),
/// |n|, d ≤ √(m/2). Returns None when no such fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let a = a.mod_floor(m);
    let bound_sq: BigUint = (m.magnitude() >> 1u32).sqrt();
    let bound = BigInt::from_biguint(Sign::Plus, bound_sq);
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    let g = num.gcd(&den);
    if g.is_one() {
        Some((num, den))
    } else {
        Some((&num / &g, &den / &g))
    }
}

// ---------------------------------------------------------------------------
// certified characteristic polynomial over the Gaussian integers

/// Hadamard-style bound on |c_k| for det(xI − M) = Σ c_{n−k} x^{n−k}:
/// the coefficient of x^{n−k} is a sum of C(n,k) principal k×k minors, each
/// at most (√k·β)^k in modulus.
fn charpoly_coeff_bound(n: usize, beta: &BigInt) -> BigInt {
    let beta = if beta.is_zero() {
        BigInt::one()
    } else {
        beta.clone()
    };
    let mut best = BigInt::one();
    let mut binom = BigInt::one();
    for k in 1..=n {
        binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
        let mut term = binom.clone();
        term *= beta.pow(k as u32);
        term *= BigInt::from(k).pow(k.div_ceil(2) as u32);
        if term > best {
            best = term;
        }
    }
    best
}

/// Certified characteristic polynomial of a Gaussian-integer matrix:
/// low-to-high GInt coefficients of det(xI − M). Uses enough split primes
/// for the product to exceed twice the coefficient bound, so the symmetric
/// CRT lift is provably exact.
pub fn charpoly_gint_certified(m: &DMat<GInt>) -> Vec<GInt> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut beta = BigInt::zero();
    for r in 0..n {
        for c in 0..n {
            let e = m.at(r, c);
            let mag = e.re.abs() + e.im.abs();
            if mag > beta {
                beta = mag;
            }
        }
    }
    let bound = charpoly_coeff_bound(n, &beta);
    let target = bound << 2; // 2·bound for the symmetric range, doubled for margin
    let mut primes = Vec::new();
    let mut product = BigInt::one();
    let mut count = 8;
    while product < target {
        primes = split_primes(count);
        product = primes.iter().map(|sp| BigInt::from(sp.p)).product();
        count += 8;
    }
    // residues per coefficient: (re, im) via the two splittings
    let mut re_residues: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n + 1];
    let mut im_residues: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n + 1];
    for sp in &primes {
        let (p, s) = (sp.p, sp.sqrt_minus_one);
        let plus = charpoly_mod_p(&gint_mat_mod(m, p, s), n, p);
        let minus = charpoly_mod_p(&gint_mat_mod(m, p, p - s), n, p);
        let inv2 = invmod(2, p);
        let inv2s = invmod(mulmod(2, s, p), p);
        for k in 0..=n {
            let u = mulmod(addmod(plus[k], minus[k], p), inv2, p);
            let v = mulmod(submod(plus[k], minus[k], p), inv2s, p);
            re_residues[k].push((u, p));
            im_residues[k].push((v, p));
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (re, _) = crt_symmetric(&re_residues[k]);
        let (im, _) = crt_symmetric(&im_residues[k]);
        out.push(GInt::new(re, im));
    }
    assert!(out[n] == GInt::one(), "characteristic polynomial not monic");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::charpoly_small;

    #[test]
    fn split_primes_are_split() {
        for sp in split_primes(5) {
            assert!(is_prime_u64(sp.p));
            assert_eq!(sp.p % 4, 1);
            assert_eq!(mulmod(sp.sqrt_minus_one, sp.sqrt_minus_one, sp.p), sp.p - 1);
        }
    }

    #[test]
    fn hessenberg_charpoly_matches_interpolated() {
        // pseudo-random Gaussian-integer matrices, two routes
        let mut seed = 9u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for n in [1usize, 2, 3, 5, 8] {
            let m = DMat::from_fn(n, n, |_, _| {
                GInt::new(BigInt::from(next()), BigInt::from(next()))
            });
            let certified = charpoly_gint_certified(&m);
            let interpolated = charpoly_small(&m);
            assert_eq!(certified, interpolated, "disagreement at n = {n}");
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x³ − 2x − 5
        let m = DMat::from_fn(3, 3, |r, c| {
            let v = match (r, c) {
                (0, 2) => 5,
                (1, 2) => 2,
                (1, 0) | (2, 1) => 1,
                _ => 0,
            };
            GInt::from_i64(v)
        });
        let c = charpoly_gint_certified(&m);
        assert_eq!(
            c,
            vec![
                GInt::from_i64(-5),
                GInt::from_i64(-2),
                GInt::from_i64(0),
                GInt::from_i64(1)
            ]
        );
    }

    #[test]
    fn crt_and_rational_reconstruction() {
        let primes = split_primes(3);
        let value = BigInt::from(-123456789i64);
        let residues: Vec<(u64, u64)> = primes
            .iter()
            .map(|sp| (bigint_mod_u64(&value, sp.p), sp.p))
            .collect();
        let (x, _) = crt_symmetric(&residues);
        assert_eq!(x, value);

        // reconstruct 22/7 from its residue
        let p = primes[0].p;
        let r = mulmod(22 % p, invmod(7, p), p);
        let (num, den) = rational_reconstruct(&BigInt::from(r), &BigInt::from(p)).unwrap();
        assert_eq!((num, den), (BigInt::from(22), BigInt::from(7)));
    }

    #[test]
    fn fp_poly_toolbox() {
        let p = 1000003u64; // ≡ 3 mod 4 but fine for generic poly ops
        // gcd((x²−1)(x+2), (x²−1)(x+3)) = x²−1
        let x2m1 = vec![p - 1, 0, 1];
        let a = poly_mul_mod(&x2m1, &[2, 1], p);
        let b = poly_mul_mod(&x2m1, &[3, 1], p);
        let g = poly_gcd_mod(&a, &b, p);
        assert_eq!(g, x2m1);
        // Bézout: u·b ≡ gcd (mod a) for coprime pair
        let a = vec![1, 0, 1]; // x²+1
        let b = vec![1, 1]; // x+1
        let (g, u) = poly_bezout_of_second_mod(&a, &b, p);
        assert_eq!(poly_deg(&g), 0);
        let prod = poly_mul_mod(&u, &b, p);
        let red = poly_rem_mod(&prod, &a, p);
        assert_eq!(red, vec![1]);
        // exact division
        let q = poly_exact_div_mod(&poly_mul_mod(&[1, 2, 1], &[5, 1], p), &[5, 1], p);
        assert_eq!(q, vec![1, 2, 1]);
    }
}
