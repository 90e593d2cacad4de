//! Exact Jordan decomposition of grade-4 elements viewed inside e₇, with
//! semisimplicity and nilpotency predicates.
//!
//! Candidates for the semisimple part are produced by a Newton lift in
//! F_p[x]/(charpoly) over a few split primes and lifted by rational
//! reconstruction; the returned split is then certified exactly:
//! the parts sum to the input, their bracket vanishes, the nilpotent part
//! has a vanishing power of its adjoint matrix, and the semisimple part's
//! adjoint annihilates a generating set through certified-squarefree local
//! polynomials. Uniqueness of the Jordan decomposition makes the certified
//! candidate the decomposition.
//!
//! Single-occupancy inputs are decomposed inside the 28-dimensional
//! subalgebra generated by the embedded qubit space (the so₈ pair): Jordan
//! parts are preserved under the inclusion, and the smaller adjoint keeps
//! the arithmetic cheap. General grade-4 inputs use the full 133-dimensional
//! adjoint.

use crate::canonical::{embed, is_sov, is_sov_mask, unembed, QubitState};
use crate::e7::{ad_matrix_odd, bracket, E7Element, E7_DIM};
use crate::exterior::{mask_from_modes, subset_mask, subset_modes, Matrix8, MultiVector, GRADE_DIMS};
use crate::linalg::{DMat, GInt};
use crate::modular::{
    charpoly_gint_certified, charpoly_mod_p, gint_mat_mod, poly_bezout_of_second_mod, poly_deg,
    poly_derivative_mod, poly_exact_div_mod, poly_gcd_mod, poly_is_zero, poly_mul_mod,
    poly_rem_mod, rational_reconstruct, split_primes, u64_addmod, u64_invmod, u64_mulmod,
    u64_submod, SplitPrime,
};
use crate::poly::GaussPoly;
use crate::scalar::{ExactScalar, GaussRat};
use num::{BigInt, BigRational, Integer, One, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JordanError {
    #[error("coefficients must lie in Q(i); radical components present")]
    FieldRestriction,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The unique splitting ψ = ψ_s + ψ_n into commuting semisimple and
/// nilpotent grade-4 parts.
#[derive(Clone, PartialEq, Debug)]
pub struct JordanSplit {
    pub semisimple_part: MultiVector<ExactScalar>,
    pub nilpotent_part: MultiVector<ExactScalar>,
}

// ---------------------------------------------------------------------------
// representations

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RepKind {
    So8,
    E7,
}

#[derive(Clone, Copy, Debug)]
struct Probe {
    row: usize,
    col: usize,
    negate: bool,
}

struct Rep {
    kind: RepKind,
    n: usize,
    odd_offset: usize,
    odd_masks: Vec<u8>,
    probes: Vec<Probe>,
}

/// Sign of replacing mode `l` by mode `k` inside the basis subset `mask`.
fn replace_sign(mask: u8, l: usize, k: usize) -> i8 {
    let modes = subset_modes(mask);
    let pos_old = modes.iter().position(|&m| m == l).unwrap();
    let stripped = mask & !(1 << (l - 1));
    let new_mask = stripped | (1 << (k - 1));
    let pos_new = subset_modes(new_mask).iter().position(|&m| m == k).unwrap();
    if (pos_old + pos_new) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// For every odd coordinate (subset T), pick a matrix-unit column E_{kl}
/// with l ∈ T, k ∉ T; then ad(x)[row(T∖l∪k), col] = −sign·x_T.
fn build_probes(
    odd_masks: &[u8],
    odd_offset: usize,
    units: &[(usize, usize, usize)], // (k, l, column index)
) -> Vec<Probe> {
    let rank_of = |mask: u8| -> usize {
        odd_masks
            .iter()
            .position(|&m| m == mask)
            .expect("image subset not in odd basis")
    };
    odd_masks
        .iter()
        .map(|&mask| {
            for &(k, l, col) in units {
                let has_l = mask & (1 << (l - 1)) != 0;
                let has_k = mask & (1 << (k - 1)) != 0;
                if has_l && !has_k {
                    let image = (mask & !(1 << (l - 1))) | (1 << (k - 1));
                    let sign = replace_sign(mask, l, k);
                    return Probe {
                        row: odd_offset + rank_of(image),
                        col,
                        negate: sign > 0, // x_T = −sign · entry
                    };
                }
            }
            panic!("no probe unit available for subset {mask:#010b}");
        })
        .collect()
}

// ---------------------------------------------------------------------------
// the so8 subalgebra: sl2⁴ ⊕ (embedded qubit space)

struct So8Tables {
    rep: Rep,
    /// ad-matrix of each odd basis element, scaled by 2 to clear the
    /// half-integer traceless parts. ad2(x) = Σ x_i · table[i].
    ad_tables: Vec<DMat<GInt>>,
}

fn block_unit(row: usize, col: usize) -> Matrix8<ExactScalar> {
    let mut m = Matrix8::zero();
    m[(row, col)] = ExactScalar::one();
    m
}

fn so8_even_basis() -> Vec<Matrix8<ExactScalar>> {
    let mut out = Vec::with_capacity(12);
    for q in 0..4 {
        out.push(block_unit(2 * q, 2 * q + 1)); // E
        out.push(block_unit(2 * q + 1, 2 * q)); // F
        let mut h = Matrix8::zero();
        h[(2 * q, 2 * q)] = ExactScalar::one();
        h[(2 * q + 1, 2 * q + 1)] = ExactScalar::from_i64(-1);
        out.push(h); // H
    }
    out
}

fn so8_odd_masks() -> Vec<u8> {
    (0..16)
        .map(|idx| {
            let b = QubitState::bits(idx);
            mask_from_modes(&[
                1 + b[0] as usize,
                3 + b[1] as usize,
                5 + b[2] as usize,
                7 + b[3] as usize,
            ])
        })
        .collect()
}

/// Coordinates of an e₇ element against the 28-element so₈ basis; None when
/// the element leaves the subalgebra.
fn so8_coords(a: &E7Element) -> Option<Vec<GaussRat>> {
    let mut out = Vec::with_capacity(28);
    let even = a.even();
    for r in 0..8 {
        for c in 0..8 {
            if r / 2 != c / 2 && !even[(r, c)].is_zero() {
                return None;
            }
        }
    }
    for q in 0..4 {
        let e = even[(2 * q, 2 * q + 1)].as_gauss()?.clone();
        let f = even[(2 * q + 1, 2 * q)].as_gauss()?.clone();
        let h = even[(2 * q, 2 * q)].as_gauss()?.clone();
        let h2 = even[(2 * q + 1, 2 * q + 1)].as_gauss()?.clone();
        if h2.add(&h) != GaussRat::zero() {
            return None;
        }
        out.push(e);
        out.push(f);
        out.push(h);
    }
    let odd = a.odd();
    for (mask, c) in odd.support() {
        if !is_sov_mask(mask) {
            return None;
        }
        let _ = c;
    }
    for mask in so8_odd_masks() {
        out.push(odd.coeff_of_mask(mask).as_gauss()?.clone());
    }
    Some(out)
}

static SO8: Lazy<So8Tables> = Lazy::new(|| {
    let even = so8_even_basis();
    let odd_masks = so8_odd_masks();
    let mut basis: Vec<E7Element> = even
        .iter()
        .map(|m| E7Element::from_even(m.clone()))
        .collect();
    for &mask in &odd_masks {
        let mut mv = MultiVector::zero(4);
        mv.set_mask(mask, ExactScalar::one());
        basis.push(E7Element::from_odd(mv));
    }
    let mut ad_tables = Vec::with_capacity(16);
    for i in 0..16 {
        let wi = &basis[12 + i];
        let mut table = DMat::zeros(28, 28);
        for (j, bj) in basis.iter().enumerate() {
            let br = bracket(wi, bj);
            let col = so8_coords(&br).expect("so8 closure violated");
            for (r, v) in col.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let doubled = v.mul(&GaussRat::from_i64(2));
                assert!(
                    doubled.re.is_integer() && doubled.im.is_integer(),
                    "structure constants must be half-integers"
                );
                *table.at_mut(r, j) = GInt::new(doubled.re.to_integer(), doubled.im.to_integer());
            }
        }
        ad_tables.push(table);
    }
    let probes = build_probes(&odd_masks, 12, &[(1, 2, 0), (2, 1, 1)]);
    So8Tables {
        rep: Rep {
            kind: RepKind::So8,
            n: 28,
            odd_offset: 12,
            odd_masks,
            probes,
        },
        ad_tables,
    }
});

static E7REP: Lazy<Rep> = Lazy::new(|| {
    let odd_masks: Vec<u8> = (0..GRADE_DIMS[4]).map(|r| subset_mask(4, r)).collect();
    // column index of the off-diagonal unit E_{kl} in the fixed e7 basis
    let unit_col = |k: usize, l: usize| -> usize {
        let (r, c) = (k - 1, l - 1);
        r * 7 + if c < r { c } else { c - 1 }
    };
    let unit_pairs = [
        (1, 2),
        (2, 1),
        (3, 4),
        (4, 3),
        (5, 6),
        (6, 5),
        (7, 8),
        (8, 7),
        (1, 3),
        (3, 1),
        (1, 5),
        (5, 1),
    ];
    let units: Vec<(usize, usize, usize)> = unit_pairs
        .iter()
        .map(|&(k, l)| (k, l, unit_col(k, l)))
        .collect();
    let probes = build_probes(&odd_masks, 63, &units);
    Rep {
        kind: RepKind::E7,
        n: E7_DIM,
        odd_offset: 63,
        odd_masks,
        probes,
    }
});

fn rep_for(psi: &MultiVector<ExactScalar>) -> &'static Rep {
    if is_sov(psi) {
        &SO8.rep
    } else {
        &E7REP
    }
}

/// Odd coordinates of ψ in the representation's basis order.
fn odd_coords(rep: &Rep, psi: &MultiVector<ExactScalar>) -> Result<Vec<GaussRat>, JordanError> {
    rep.odd_masks
        .iter()
        .map(|&mask| {
            psi.coeff_of_mask(mask)
                .as_gauss()
                .cloned()
                .ok_or(JordanError::FieldRestriction)
        })
        .collect()
}

fn mv_from_odd_coords(rep: &Rep, coords: &[GaussRat]) -> MultiVector<ExactScalar> {
    let mut out = MultiVector::zero(4);
    for (&mask, c) in rep.odd_masks.iter().zip(coords.iter()) {
        if !c.is_zero() {
            out.set_mask(mask, ExactScalar::from_gauss(c.clone()));
        }
    }
    out
}

/// Clear denominators: x → (integer coordinates, common denominator).
fn scale_to_int(coords: &[GaussRat]) -> (Vec<GInt>, BigInt) {
    let mut lcm = BigInt::one();
    for c in coords {
        for r in [&c.re, &c.im] {
            if !r.is_zero() {
                lcm = lcm.lcm(r.denom());
            }
        }
    }
    let scaled = coords
        .iter()
        .map(|c| {
            let mul = BigRational::from_integer(lcm.clone());
            GInt::new((&c.re * &mul).to_integer(), (&c.im * &mul).to_integer())
        })
        .collect();
    (scaled, lcm)
}

/// 2·ad(x) for integer odd coordinates x, in the given representation.
fn ad2_int(rep: &Rep, x: &[GInt]) -> DMat<GInt> {
    match rep.kind {
        RepKind::So8 => {
            let tables = &SO8.ad_tables;
            let mut m = DMat::zeros(28, 28);
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let t = &tables[i];
                for r in 0..28 {
                    for c in 0..28 {
                        let e = t.at(r, c);
                        if e.is_zero() {
                            continue;
                        }
                        let dst: &mut GInt = m.at_mut(r, c);
                        *dst = dst.add(&xi.mul(e));
                    }
                }
            }
            m
        }
        RepKind::E7 => {
            let mv = mv_from_odd_coords(rep, &x.iter().map(|g| g.to_gauss_rat()).collect::<Vec<_>>());
            let ad = ad_matrix_odd(&mv);
            DMat::from_fn(E7_DIM, E7_DIM, |r, c| {
                let v = ad.at(r, c);
                let g = v
                    .as_gauss()
                    .expect("ad matrix of Gaussian input is Gaussian");
                let doubled = g.mul(&GaussRat::from_i64(2));
                assert!(doubled.re.is_integer() && doubled.im.is_integer());
                GInt::new(doubled.re.to_integer(), doubled.im.to_integer())
            })
        }
    }
}

// ---------------------------------------------------------------------------
// modular Newton candidate

/// Jordan polynomial mod p: q with q ≡ x mod rad(c) and rad(c)(q) ≡ 0 mod c.
fn jordan_poly_mod(c: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = poly_deg(c);
    let deriv = poly_derivative_mod(c, p);
    if poly_is_zero(&deriv) {
        return None;
    }
    let h = poly_gcd_mod(c, &deriv, p);
    let g = if poly_deg(&h) == 0 {
        c.to_vec()
    } else {
        poly_exact_div_mod(c, &h, p)
    };
    let g_deriv = poly_derivative_mod(&g, p);
    let (gg, u) = poly_bezout_of_second_mod(&g, &g_deriv, p);
    if poly_deg(&gg) != 0 {
        return None; // g not squarefree mod p: bad prime
    }
    // scale u so that u·g' ≡ 1 (mod g)
    let gg_inv = u64_invmod(gg[0], p);
    let u: Vec<u64> = u.iter().map(|&x| u64_mulmod(x, gg_inv, p)).collect();
    let eval_mod = |f: &[u64], q: &[u64]| -> Vec<u64> {
        // f(q) mod c by Horner
        let df = poly_deg(f);
        let mut acc = vec![f[df]];
        for k in (0..df).rev() {
            acc = poly_rem_mod(&poly_mul_mod(&acc, q, p), c, p);
            if acc.is_empty() {
                acc = vec![0];
            }
            acc[0] = u64_addmod(acc[0], f[k], p);
        }
        acc
    };
    let mut q = vec![0u64, 1]; // x
    let mut steps = 0usize;
    loop {
        let e = eval_mod(&g, &q);
        if poly_is_zero(&e) {
            return Some(q);
        }
        steps += 1;
        if steps > n.ilog2() as usize + 3 {
            return None;
        }
        let uq = eval_mod(&u, &q);
        let correction = poly_rem_mod(&poly_mul_mod(&e, &uq, p), c, p);
        let mut next = q.clone();
        next.resize(next.len().max(correction.len()), 0);
        for (k, &cc) in correction.iter().enumerate() {
            next[k] = u64_submod(next[k], cc, p);
        }
        while next.len() > 1 && *next.last().unwrap() == 0 {
            next.pop();
        }
        q = next;
    }
}

fn matvec_mod(m: &[u64], n: usize, v: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for (r, slot) in out.iter_mut().enumerate() {
        let mut acc = 0u64;
        let row = &m[r * n..(r + 1) * n];
        for (c, &mv) in row.iter().enumerate() {
            if mv != 0 && v[c] != 0 {
                acc = u64_addmod(acc, u64_mulmod(mv, v[c], p), p);
            }
        }
        *slot = acc;
    }
    out
}

/// q(M)·e_col mod p by Horner on the vector.
fn poly_of_matrix_column(m: &[u64], n: usize, q: &[u64], col: usize, p: u64) -> Vec<u64> {
    let dq = poly_deg(q);
    let mut acc = vec![0u64; n];
    acc[col] = q[dq];
    for k in (0..dq).rev() {
        acc = matvec_mod(m, n, &acc, p);
        acc[col] = u64_addmod(acc[col], q[k], p);
    }
    acc
}

/// Semisimple-part probe residues of 2·d·ψ_s under one splitting, or None
/// for a bad prime.
fn semisimple_residues_mod(
    rep: &Rep,
    m_int: &DMat<GInt>,
    p: u64,
    s: u64,
) -> Option<Vec<u64>> {
    let m_p = gint_mat_mod(m_int, p, s);
    let c = charpoly_mod_p(&m_p, rep.n, p);
    let q = jordan_poly_mod(&c, p)?;
    // evaluate the needed probe columns
    let mut columns: Vec<usize> = rep.probes.iter().map(|pr| pr.col).collect();
    columns.sort_unstable();
    columns.dedup();
    let mut col_values = std::collections::HashMap::new();
    for col in columns {
        col_values.insert(col, poly_of_matrix_column(&m_p, rep.n, &q, col, p));
    }
    Some(
        rep.probes
            .iter()
            .map(|pr| {
                let v = col_values[&pr.col][pr.row];
                if pr.negate {
                    (p - v) % p
                } else {
                    v
                }
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// exact certification helpers

/// True when some power of the matrix vanishes; certified by exact
/// squaring (the nilpotency index is at most the dimension).
fn nilpotent_exact(m: &DMat<GInt>) -> bool {
    let n = m.rows;
    let mut power = m.clone();
    let mut exponent = 1usize;
    loop {
        if power.is_zero() {
            return true;
        }
        if exponent >= n {
            return false;
        }
        power = power.matmul(&power);
        exponent *= 2;
    }
}

/// Fast sound rejection: a nonzero n-th power mod p proves non-nilpotency.
fn nilpotent_prefilter(m: &DMat<GInt>, p: u64, s: u64) -> bool {
    let n = m.rows;
    let mut power = gint_mat_mod(m, p, s);
    let mut exponent = 1usize;
    while exponent < n {
        // square
        let mut next = vec![0u64; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = power[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    let b = power[k * n + c];
                    if b == 0 {
                        continue;
                    }
                    next[r * n + c] = u64_addmod(next[r * n + c], u64_mulmod(a, b, p), p);
                }
            }
        }
        power = next;
        exponent *= 2;
        if power.iter().all(|&x| x == 0) {
            return true;
        }
    }
    power.iter().all(|&x| x == 0)
}

/// Local annihilator of basis vector `idx` under M mod p: the monic
/// dependency of the Krylov chain.
fn local_annihilator_mod(m: &[u64], n: usize, idx: usize, p: u64) -> Vec<u64> {
    // reduced rows with pivot bookkeeping and chain combinations
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new(); // (vector, pivot, combo)
    let mut w = vec![0u64; n];
    w[idx] = 1;
    let mut k = 0usize;
    loop {
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        let mut v = w.clone();
        for (row, pivot, rcombo) in &rows {
            if v[*pivot] == 0 {
                continue;
            }
            let f = v[*pivot]; // rows are pivot-normalized
            for c in 0..n {
                if row[c] != 0 {
                    v[c] = u64_submod(v[c], u64_mulmod(f, row[c], p), p);
                }
            }
            for (c, &rc) in rcombo.iter().enumerate() {
                if rc != 0 {
                    combo[c] = u64_submod(combo[c], u64_mulmod(f, rc, p), p);
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            return combo;
        }
        let pivot = v.iter().position(|&x| x != 0).unwrap();
        let inv = u64_invmod(v[pivot], p);
        let vn: Vec<u64> = v.iter().map(|&x| u64_mulmod(x, inv, p)).collect();
        let cn: Vec<u64> = combo.iter().map(|&x| u64_mulmod(x, inv, p)).collect();
        rows.push((vn, pivot, cn));
        w = matvec_mod(m, n, &w, p);
        k += 1;
        assert!(k <= n, "Krylov chain exceeded the dimension");
    }
}

/// Reconstruct one Gaussian-rational from residues under both splittings
/// of each prime.
fn reconstruct_gauss(
    residues: &[(u64, u64, SplitPrime)], // (plus, minus, prime)
) -> Option<GaussRat> {
    let mut re_parts = Vec::with_capacity(residues.len());
    let mut im_parts = Vec::with_capacity(residues.len());
    for &(plus, minus, sp) in residues {
        let p = sp.p;
        let inv2 = u64_invmod(2, p);
        let inv2s = u64_invmod(u64_mulmod(2, sp.sqrt_minus_one, p), p);
        re_parts.push((u64_mulmod(u64_addmod(plus, minus, p), inv2, p), p));
        im_parts.push((u64_mulmod(u64_submod(plus, minus, p), inv2s, p), p));
    }
    let (re_lift, modulus) = crate::modular::crt_symmetric(&re_parts);
    let (im_lift, _) = crate::modular::crt_symmetric(&im_parts);
    let (rn, rd) = rational_reconstruct(&re_lift, &modulus)?;
    let (in_, id) = rational_reconstruct(&im_lift, &modulus)?;
    Some(GaussRat::new(
        BigRational::new(rn, rd),
        BigRational::new(in_, id),
    ))
}

/// The verified annihilator route: find a squarefree polynomial that
/// provably kills the Krylov chain of every generator, which certifies
/// diagonalizability of S on the subalgebra the generators produce.
fn certify_semisimple(rep: &Rep, s_int: &DMat<GInt>) -> bool {
    let n = rep.n;
    'vector: for j in 0..rep.odd_masks.len() {
        let idx = rep.odd_offset + j;
        // candidate annihilator: adaptively reconstructed from split primes
        for num_primes in [1usize, 2, 4, 8, 16] {
            let primes = split_primes(num_primes);
            let mut per_coeff: Vec<Vec<(u64, u64, SplitPrime)>> = Vec::new();
            let mut degree = None;
            let mut ok = true;
            for sp in &primes {
                let mp = gint_mat_mod(s_int, sp.p, sp.sqrt_minus_one);
                let mu_plus = local_annihilator_mod(&mp, n, idx, sp.p);
                let mm = gint_mat_mod(s_int, sp.p, sp.p - sp.sqrt_minus_one);
                let mu_minus = local_annihilator_mod(&mm, n, idx, sp.p);
                if mu_plus.len() != mu_minus.len() {
                    ok = false;
                    break;
                }
                match degree {
                    None => {
                        degree = Some(mu_plus.len());
                        per_coeff = vec![Vec::new(); mu_plus.len()];
                    }
                    Some(d) if d != mu_plus.len() => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
                for (k, slot) in per_coeff.iter_mut().enumerate() {
                    slot.push((mu_plus[k], mu_minus[k], *sp));
                }
            }
            if !ok {
                continue;
            }
            let coeffs: Option<Vec<GaussRat>> = per_coeff
                .iter()
                .map(|res| reconstruct_gauss(res))
                .collect();
            let Some(coeffs) = coeffs else { continue };
            let mu = GaussPoly::from_coeffs(coeffs);
            if mu.is_zero() {
                continue;
            }
            // exact check: μ(S) applied to the basis vector vanishes
            if !annihilates_vector(s_int, &mu, idx) {
                continue;
            }
            if !mu.is_squarefree() {
                return false; // exact annihilator with a repeated root
            }
            continue 'vector;
        }
        return false;
    }
    true
}

/// Exact check that μ(S)·e_idx = 0, with S given as an integer matrix.
fn annihilates_vector(s_int: &DMat<GInt>, mu: &GaussPoly, idx: usize) -> bool {
    let n = s_int.rows;
    // common denominator of μ
    let (ints, _den) = mu.to_gint_scaled();
    let mut chain = vec![GInt::zero(); n];
    chain[idx] = GInt::one();
    let mut acc = vec![GInt::zero(); n];
    for (k, c) in ints.iter().enumerate() {
        if k > 0 {
            chain = s_int.matvec(&chain);
        }
        if c.is_zero() {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(chain.iter()) {
            *a = a.add(&c.mul(v));
        }
    }
    acc.iter().all(|x| x.is_zero())
}

// ---------------------------------------------------------------------------
// public interface

/// Split a grade-4 multivector with Q(i) coefficients into its semisimple
/// and nilpotent parts.
pub fn jordan_decompose(psi: &MultiVector<ExactScalar>) -> Result<JordanSplit, JordanError> {
    assert_eq!(psi.grade(), 4);
    if psi.is_zero() {
        return Ok(JordanSplit {
            semisimple_part: MultiVector::zero(4),
            nilpotent_part: MultiVector::zero(4),
        });
    }
    let rep = rep_for(psi);
    let coords_q = odd_coords(rep, psi)?;
    let (coords_int, denom) = scale_to_int(&coords_q);
    let m_int = ad2_int(rep, &coords_int);
    let overall = BigRational::new(BigInt::one(), BigInt::from(2) * &denom);

    for num_primes in [2usize, 4, 8, 16, 32] {
        let primes = split_primes(num_primes);
        let mut per_coord: Vec<Vec<(u64, u64, SplitPrime)>> =
            vec![Vec::new(); rep.odd_masks.len()];
        let mut all_good = true;
        for sp in &primes {
            let plus = semisimple_residues_mod(rep, &m_int, sp.p, sp.sqrt_minus_one);
            let minus = semisimple_residues_mod(rep, &m_int, sp.p, sp.p - sp.sqrt_minus_one);
            match (plus, minus) {
                (Some(pl), Some(mi)) => {
                    for (t, slot) in per_coord.iter_mut().enumerate() {
                        slot.push((pl[t], mi[t], *sp));
                    }
                }
                _ => {
                    all_good = false;
                }
            }
        }
        if !all_good && num_primes < 32 {
            continue;
        }
        let lifted: Option<Vec<GaussRat>> = per_coord
            .iter()
            .map(|res| {
                if res.is_empty() {
                    None
                } else {
                    reconstruct_gauss(res)
                }
            })
            .collect();
        let Some(lifted) = lifted else { continue };
        // lifted = 2·d·ψ_s coordinates
        let s_coords: Vec<GaussRat> = lifted
            .iter()
            .map(|v| {
                GaussRat::new(&v.re * &overall, &v.im * &overall)
            })
            .collect();
        let semisimple = mv_from_odd_coords(rep, &s_coords);
        let nilpotent = psi.sub(&semisimple).unwrap();
        if verify_split(rep, psi, &semisimple, &nilpotent) {
            return Ok(JordanSplit {
                semisimple_part: semisimple,
                nilpotent_part: nilpotent,
            });
        }
    }
    Err(JordanError::Internal(
        "modular Jordan candidates failed exact certification".to_string(),
    ))
}

fn verify_split(
    rep: &Rep,
    psi: &MultiVector<ExactScalar>,
    semisimple: &MultiVector<ExactScalar>,
    nilpotent: &MultiVector<ExactScalar>,
) -> bool {
    // sum is structural; check the bracket, nilpotency, semisimplicity
    if psi != &semisimple.add(nilpotent).unwrap() {
        return false;
    }
    let br = bracket(
        &E7Element::from_odd(semisimple.clone()),
        &E7Element::from_odd(nilpotent.clone()),
    );
    if !br.is_zero() {
        return false;
    }
    if !nilpotent.is_zero() {
        let n_coords = odd_coords(rep, nilpotent).expect("difference stays Gaussian");
        let (n_int, _) = scale_to_int(&n_coords);
        let k_int = ad2_int(rep, &n_int);
        let sp = split_primes(1)[0];
        if !nilpotent_prefilter(&k_int, sp.p, sp.sqrt_minus_one) {
            return false;
        }
        if !nilpotent_exact(&k_int) {
            return false;
        }
    }
    if !semisimple.is_zero() {
        let s_coords = odd_coords(rep, semisimple).expect("part stays Gaussian");
        let (s_int, _) = scale_to_int(&s_coords);
        let s_mat = ad2_int(rep, &s_int);
        if !certify_semisimple(rep, &s_mat) {
            return false;
        }
    }
    true
}

/// True when ad(ψ) is nilpotent. Accepts any exact coefficients; the
/// Gaussian case is decided on integer matrices, radical inputs fall back
/// to exact field arithmetic.
pub fn is_nilpotent(psi: &MultiVector<ExactScalar>) -> Result<bool, JordanError> {
    assert_eq!(psi.grade(), 4);
    if psi.is_zero() {
        return Ok(true);
    }
    let all_gaussian = psi.coeffs().iter().all(|c| c.is_gaussian());
    if all_gaussian {
        let rep = rep_for(psi);
        let coords_q = odd_coords(rep, psi)?;
        let (coords_int, _) = scale_to_int(&coords_q);
        let m = ad2_int(rep, &coords_int);
        let sp = split_primes(1)[0];
        if !nilpotent_prefilter(&m, sp.p, sp.sqrt_minus_one) {
            return Ok(false);
        }
        Ok(nilpotent_exact(&m))
    } else {
        // radical coefficients: exact field arithmetic on the full adjoint
        let m = ad_matrix_odd(psi);
        let n = m.rows;
        let mut power = m;
        let mut exponent = 1usize;
        loop {
            if power.is_zero() {
                return Ok(true);
            }
            if exponent >= n {
                return Ok(false);
            }
            power = power.matmul(&power);
            exponent *= 2;
        }
    }
}

/// True when the SL₈-orbit of ψ is closed, i.e. the nilpotent part of its
/// Jordan decomposition vanishes.
pub fn is_semisimple(psi: &MultiVector<ExactScalar>) -> Result<bool, JordanError> {
    assert_eq!(psi.grade(), 4);
    if psi.is_zero() {
        return Ok(true);
    }
    if !psi.coeffs().iter().all(|c| c.is_gaussian()) {
        return Err(JordanError::FieldRestriction);
    }
    if in_cartan_span(psi) {
        return Ok(true);
    }
    Ok(jordan_decompose(psi)?.nilpotent_part.is_zero())
}

/// Membership in the fixed Cartan subspace span(p₁…p₇); such elements are
/// semisimple outright.
pub fn in_cartan_span(psi: &MultiVector<ExactScalar>) -> bool {
    let ps = crate::canonical::cartan_basis();
    let mut candidate = MultiVector::zero(4);
    for p in &ps {
        // each pᵢ is s·(e_A + e_B); project ψ onto it via the A-coefficient
        let (mask_a, coeff_a) = p.support().next().unwrap();
        let c = psi.coeff_of_mask(mask_a).mul(&coeff_a.inv().unwrap());
        if !c.is_zero() {
            candidate = candidate.add(&p.scale(&c)).unwrap();
        }
    }
    &candidate == psi
}

/// Exact characteristic polynomial of the full 133×133 adjoint of ψ,
/// low-to-high Gaussian-rational coefficients.
pub fn ad_charpoly(psi: &MultiVector<ExactScalar>) -> Result<Vec<GaussRat>, JordanError> {
    assert_eq!(psi.grade(), 4);
    let rep: &Rep = &E7REP;
    let coords_q = odd_coords(rep, psi)?;
    let (coords_int, denom) = scale_to_int(&coords_q);
    let m_int = ad2_int(rep, &coords_int);
    let c_int = charpoly_gint_certified(&m_int);
    // det(xI − M_int/σ) = σ^{−n}·det((σx)I − M_int): coefficient of x^k
    // picks up σ^{k−n}, with σ = 2·denom
    let sigma_inv = BigRational::new(BigInt::one(), BigInt::from(2) * &denom);
    let n = rep.n;
    let mut out: Vec<GaussRat> = c_int.iter().map(|c| c.to_gauss_rat()).collect();
    let mut factor = BigRational::one();
    for k in (0..=n).rev() {
        out[k] = GaussRat::new(&out[k].re * &factor, &out[k].im * &factor);
        factor *= &sigma_inv;
    }
    Ok(out)
}

/// The unembedded Jordan split of an embedded qubit state.
pub fn jordan_of_state(phi: &QubitState) -> Result<(QubitState, QubitState), JordanError> {
    let split = jordan_decompose(&embed(phi))?;
    let s = unembed(&split.semisimple_part)
        .map_err(|_| JordanError::Internal("split left the embedded subspace".into()))?;
    let n = unembed(&split.nilpotent_part)
        .map_err(|_| JordanError::Internal("split left the embedded subspace".into()))?;
    Ok((s, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{
        a_state, cartan_basis, family_representative, local_to_matrix8, nilpotent_triple,
        LocalOperator, Mat2, Perm4,
    };
    use crate::exterior::compound;

    fn es(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn so8_generators_span_the_subalgebra() {
        // the embedded qubit space must generate so8: its self-brackets
        // together with the odd part span all 28 coordinates
        let masks = so8_odd_masks();
        let mut vectors: Vec<Vec<GaussRat>> = Vec::new();
        for &m in &masks {
            let mut mv = MultiVector::zero(4);
            mv.set_mask(m, ExactScalar::one());
            vectors.push(so8_coords(&E7Element::from_odd(mv)).unwrap());
        }
        for i in 0..16 {
            for j in i + 1..16 {
                let mut a = MultiVector::zero(4);
                a.set_mask(masks[i], ExactScalar::one());
                let mut b = MultiVector::zero(4);
                b.set_mask(masks[j], ExactScalar::one());
                let br = bracket(&E7Element::from_odd(a), &E7Element::from_odd(b));
                vectors.push(so8_coords(&br).expect("closure"));
            }
        }
        let mat = DMat::from_fn(vectors.len(), 28, |r, c| vectors[r][c].clone());
        assert_eq!(crate::linalg::field_rank(&mat), 28);
    }

    #[test]
    fn cartan_states_are_semisimple() {
        for p in cartan_basis() {
            assert!(is_semisimple(&p).unwrap());
            assert!(!is_nilpotent(&p).unwrap());
            let split = jordan_decompose(&p).unwrap();
            assert_eq!(split.semisimple_part, p);
            assert!(split.nilpotent_part.is_zero());
        }
    }

    #[test]
    fn pure_nilpotent_splits_trivially() {
        let e = MultiVector::basis(&[1, 2, 3, 4]); // not single-occupancy
        assert!(is_nilpotent(&e).unwrap());
        let split = jordan_decompose(&e).unwrap();
        assert!(split.semisimple_part.is_zero());
        assert_eq!(split.nilpotent_part, e);
    }

    #[test]
    fn generic_cartan_slice_state_is_semisimple() {
        let phi = a_state(&es("1"), &es("2"), &es("3"), &es("4"));
        let psi = embed(&phi);
        let split = jordan_decompose(&psi).unwrap();
        assert_eq!(split.semisimple_part, psi);
        assert!(split.nilpotent_part.is_zero());
        assert!(is_semisimple(&psi).unwrap());
    }

    #[test]
    fn family_splits_match_zero_parameter_states() {
        let zero = ExactScalar::zero();
        let cases: Vec<(u32, Vec<ExactScalar>, Vec<ExactScalar>)> = vec![
            (2, vec![es("2"), es("-1/2"), es("3*i")], vec![zero.clone(); 3]),
            (3, vec![es("5"), es("1 - i")], vec![zero.clone(); 2]),
            (6, vec![es("1/3"), es("2")], vec![zero.clone(); 2]),
            (9, vec![es("7*i")], vec![zero.clone()]),
            (10, vec![es("4")], vec![zero.clone()]),
        ];
        for (family, params, zeros) in cases {
            let psi = family_representative(family, &params).unwrap();
            let nil = family_representative(family, &zeros).unwrap();
            let semi = psi.sub(&nil);
            let split = jordan_decompose(&embed(&psi)).unwrap();
            assert_eq!(split.semisimple_part, embed(&semi), "family {family}");
            assert_eq!(split.nilpotent_part, embed(&nil), "family {family}");
            // mixed states are neither semisimple nor nilpotent
            assert!(!is_semisimple(&embed(&psi)).unwrap(), "family {family}");
            assert!(!is_nilpotent(&embed(&psi)).unwrap(), "family {family}");
        }
    }

    #[test]
    fn decomposition_is_idempotent() {
        let psi = family_representative(9, &[es("3")]).unwrap();
        let split = jordan_decompose(&embed(&psi)).unwrap();
        let again_s = jordan_decompose(&split.semisimple_part).unwrap();
        assert_eq!(again_s.semisimple_part, split.semisimple_part);
        assert!(again_s.nilpotent_part.is_zero());
        let again_n = jordan_decompose(&split.nilpotent_part).unwrap();
        assert!(again_n.semisimple_part.is_zero());
        assert_eq!(again_n.nilpotent_part, split.nilpotent_part);
    }

    #[test]
    fn decomposition_is_equivariant() {
        let psi = family_representative(6, &[es("1"), es("2")]).unwrap();
        let op = LocalOperator {
            gates: [
                Mat2::new(es("1"), es("2 - i"), es("0"), es("1")),
                Mat2::new(es("1"), es("0"), es("1/2"), es("1")),
                Mat2::identity(),
                Mat2::new(es("1"), es("-3"), es("0"), es("1")),
            ],
            perm: Perm4::transposition(0, 2),
        };
        let g = local_to_matrix8(&op);
        let split = jordan_decompose(&embed(&psi)).unwrap();
        let dressed = compound(&g, &embed(&psi));
        let dressed_split = jordan_decompose(&dressed).unwrap();
        assert_eq!(
            dressed_split.semisimple_part,
            compound(&g, &split.semisimple_part)
        );
        assert_eq!(
            dressed_split.nilpotent_part,
            compound(&g, &split.nilpotent_part)
        );
    }

    #[test]
    fn triple_nilpotents_have_nilpotent_adjoints() {
        for label in [1u32, 2, 5, 6] {
            let (_, e, _) = nilpotent_triple(label).unwrap();
            assert!(is_nilpotent(&e).unwrap(), "label {label}");
        }
        // radical coefficients take the exact-field path
        let (_, e, _) = nilpotent_triple(9).unwrap();
        assert!(is_nilpotent(&e).unwrap());
    }

    #[test]
    fn field_restriction_is_reported() {
        let psi = MultiVector::basis(&[1, 3, 5, 7]).scale(&es("r2"));
        assert_eq!(
            is_semisimple(&psi).unwrap_err(),
            JordanError::FieldRestriction
        );
        assert_eq!(
            jordan_decompose(&psi).unwrap_err(),
            JordanError::FieldRestriction
        );
    }

    #[test]
    fn full_adjoint_charpoly_of_nilpotent_is_a_power_of_x() {
        let c = ad_charpoly(&MultiVector::basis(&[1, 2, 3, 4])).unwrap();
        assert_eq!(c.len(), 134);
        for k in 0..133 {
            assert!(c[k].is_zero(), "coefficient {k} should vanish");
        }
        assert_eq!(c[133], GaussRat::one());
    }

    #[test]
    fn charpolys_of_commuting_parts_agree() {
        // char(ad ψ) = char(ad ψ_s) when ψ_n commutes with ψ_s
        let psi = family_representative(9, &[es("2")]).unwrap();
        let split = jordan_decompose(&embed(&psi)).unwrap();
        let c_full = ad_charpoly(&embed(&psi)).unwrap();
        let c_semi = ad_charpoly(&split.semisimple_part).unwrap();
        assert_eq!(c_full, c_semi);
    }
}
