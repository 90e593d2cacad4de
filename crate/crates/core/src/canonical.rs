//! Canonical fixed data: the qubit↔fermion embedding, the Cartan basis and
//! its four-dimensional qubit slice, family representatives, the nilpotent
//! orbit triples, local-operator realizations, and the Pauli stabilizer of
//! the Cartan subspace.

use crate::e7::sigma_odd;
use crate::exterior::{compound, mask_from_modes, subset_modes, Matrix8, MultiVector};
use crate::scalar::{ExactScalar, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("not a single-occupancy vector; offending basis subsets: {0:?}")]
    NotSov(Vec<[usize; 4]>),
    #[error("family {0} has no parametrized qubit representative")]
    UnknownFamily(u32),
    #[error("family {0} takes {1} parameters, got {2}")]
    WrongParameterCount(u32, usize, usize),
    #[error("unknown nilpotent orbit label {0}")]
    UnknownLabel(u32),
}

/// A pure 4-qubit state: 16 amplitudes in binary order |0000⟩ … |1111⟩.
#[derive(Clone, PartialEq)]
pub struct QubitState {
    amps: Vec<ExactScalar>,
}

impl QubitState {
    pub fn zero() -> Self {
        QubitState {
            amps: vec![ExactScalar::zero(); 16],
        }
    }

    pub fn from_amplitudes(amps: Vec<ExactScalar>) -> Self {
        assert_eq!(amps.len(), 16);
        QubitState { amps }
    }

    /// The basis state |i j k l⟩.
    pub fn basis(bits: [u8; 4]) -> Self {
        let mut s = Self::zero();
        s.amps[Self::index(bits)] = ExactScalar::one();
        s
    }

    pub fn index(bits: [u8; 4]) -> usize {
        bits.iter().fold(0usize, |acc, &b| {
            debug_assert!(b <= 1);
            acc * 2 + b as usize
        })
    }

    pub fn bits(index: usize) -> [u8; 4] {
        [
            ((index >> 3) & 1) as u8,
            ((index >> 2) & 1) as u8,
            ((index >> 1) & 1) as u8,
            (index & 1) as u8,
        ]
    }

    pub fn amp(&self, index: usize) -> &ExactScalar {
        &self.amps[index]
    }

    pub fn amps(&self) -> &[ExactScalar] {
        &self.amps
    }

    pub fn set(&mut self, bits: [u8; 4], value: ExactScalar) {
        self.amps[Self::index(bits)] = value;
    }

    pub fn add(&self, o: &Self) -> Self {
        QubitState {
            amps: self
                .amps
                .iter()
                .zip(o.amps.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QubitState {
            amps: self
                .amps
                .iter()
                .zip(o.amps.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        QubitState {
            amps: self.amps.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, t: &ExactScalar) -> Self {
        QubitState {
            amps: self.amps.iter().map(|a| a.mul(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.is_zero())
    }

    pub fn norm_sqr(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for a in &self.amps {
            if !a.is_zero() {
                acc = acc.add(&a.conj().mul(a));
            }
        }
        acc
    }

    /// True when every amplitude lies in Q(i).
    pub fn is_gaussian(&self) -> bool {
        self.amps.iter().all(|a| a.is_gaussian())
    }

    /// Apply a local operator: gates on each qubit, then the qubit permutation.
    pub fn apply(&self, op: &LocalOperator<ExactScalar>) -> Self {
        let mut gated = vec![ExactScalar::zero(); 16];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let y = Self::bits(idx);
            // amplitude flows |y⟩ → Σ_x ∏_q g_q[x_q][y_q] |x⟩
            for x_idx in 0..16 {
                let x = Self::bits(x_idx);
                let mut w = amp.clone();
                let mut zero = false;
                for q in 0..4 {
                    let g = &op.gates[q][(x[q] as usize, y[q] as usize)];
                    if g.is_zero() {
                        zero = true;
                        break;
                    }
                    w = w.mul(g);
                }
                if !zero {
                    gated[x_idx] = gated[x_idx].add(&w);
                }
            }
        }
        // slot j of the result receives former slot π⁻¹(j):
        // (π·φ)[x₁…x₄] = φ[x_{π(1)}, …, x_{π(4)}]
        let mut out = vec![ExactScalar::zero(); 16];
        for (x_idx, slot) in out.iter_mut().enumerate() {
            let x = Self::bits(x_idx);
            let mut y = [0u8; 4];
            for i in 0..4 {
                y[i] = x[op.perm.image(i)];
            }
            *slot = gated[Self::index(y)].clone();
        }
        QubitState { amps: out }
    }
}

impl std::fmt::Debug for QubitState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QubitState(")?;
        let mut first = true;
        for (idx, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let b = Self::bits(idx);
            write!(f, "|{}{}{}{}⟩: {}", b[0], b[1], b[2], b[3], a)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// the embedding

/// Isometric embedding |ijkl⟩ ↦ e_{1+i, 3+j, 5+k, 7+l} into ∧⁴(C⁸).
pub fn embed(phi: &QubitState) -> MultiVector<ExactScalar> {
    let mut out = MultiVector::zero(4);
    for (idx, a) in phi.amps.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let b = QubitState::bits(idx);
        let modes = [
            1 + b[0] as usize,
            3 + b[1] as usize,
            5 + b[2] as usize,
            7 + b[3] as usize,
        ];
        out.set_mask(mask_from_modes(&modes), a.clone());
    }
    out
}

/// True when the grade-4 basis subset takes exactly one mode from each pair
/// {2i−1, 2i}.
pub fn is_sov_mask(mask: u8) -> bool {
    (0..4).all(|i| (mask >> (2 * i) & 0b11).count_ones() == 1)
}

/// Exact left inverse of `embed`; rejects support outside the
/// single-occupancy subsets.
pub fn unembed(psi: &MultiVector<ExactScalar>) -> Result<QubitState, CanonicalError> {
    assert_eq!(psi.grade(), 4, "unembed takes grade-4 multivectors");
    let mut bad: Vec<[usize; 4]> = Vec::new();
    let mut out = QubitState::zero();
    for (mask, c) in psi.support() {
        if !is_sov_mask(mask) {
            let m = subset_modes(mask);
            bad.push([m[0], m[1], m[2], m[3]]);
            continue;
        }
        let mut bits = [0u8; 4];
        for i in 0..4 {
            bits[i] = ((mask >> (2 * i + 1)) & 1) as u8;
        }
        out.set(bits, c.clone());
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(CanonicalError::NotSov(bad))
    }
}

/// True when the multivector is supported on single-occupancy subsets only.
pub fn is_sov(psi: &MultiVector<ExactScalar>) -> bool {
    psi.grade() == 4 && psi.support().all(|(mask, _)| is_sov_mask(mask))
}

// ---------------------------------------------------------------------------
// the Cartan subspace

fn basis4(modes: [usize; 4]) -> MultiVector<ExactScalar> {
    // sign-normalize an arbitrarily ordered index tuple
    let mut sorted = modes;
    sorted.sort_unstable();
    let mut inversions = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if modes[a] > modes[b] {
                inversions += 1;
            }
        }
    }
    let v = MultiVector::basis(&sorted);
    if inversions % 2 == 0 {
        v
    } else {
        v.neg()
    }
}

/// The seven spanning elements p₁…p₇ of the Cartan subspace of ∧⁴(C⁸),
/// stored with sorted, sign-normalized index tuples.
pub fn cartan_basis() -> Vec<MultiVector<ExactScalar>> {
    let pairs: [[[usize; 4]; 2]; 7] = [
        [[1, 2, 3, 4], [5, 6, 7, 8]],
        [[1, 3, 5, 7], [6, 8, 2, 4]],
        [[1, 5, 6, 2], [8, 4, 3, 7]],
        [[1, 6, 8, 3], [4, 7, 5, 2]],
        [[1, 8, 4, 5], [7, 2, 6, 3]],
        [[1, 4, 7, 6], [2, 3, 8, 5]],
        [[1, 7, 2, 8], [3, 5, 4, 6]],
    ];
    pairs
        .iter()
        .map(|[a, b]| basis4(*a).add(&basis4(*b)).unwrap())
        .collect()
}

/// a(|0000⟩+|1111⟩) + b(|0011⟩+|1100⟩) + c(|0101⟩+|1010⟩) + d(|0110⟩+|1001⟩);
/// embeds onto a·p₂ + b·p₄ + c·p₅ − d·p₆.
pub fn a_state(a: &ExactScalar, b: &ExactScalar, c: &ExactScalar, d: &ExactScalar) -> QubitState {
    let mut s = QubitState::zero();
    for (coeff, pair) in [
        (a, [[0, 0, 0, 0], [1, 1, 1, 1]]),
        (b, [[0, 0, 1, 1], [1, 1, 0, 0]]),
        (c, [[0, 1, 0, 1], [1, 0, 1, 0]]),
        (d, [[0, 1, 1, 0], [1, 0, 0, 1]]),
    ] {
        for bits in pair {
            s.set(bits, coeff.clone());
        }
    }
    s
}

/// Decompose a grade-4 multivector over span(p₂, p₄, p₅, −p₆) if possible.
pub fn cartan_slice_coordinates(
    psi: &MultiVector<ExactScalar>,
) -> Option<[ExactScalar; 4]> {
    let a = psi.coeff_of_mask(mask_from_modes(&[1, 3, 5, 7])).clone();
    let b = psi.coeff_of_mask(mask_from_modes(&[1, 3, 6, 8])).clone();
    let c = psi.coeff_of_mask(mask_from_modes(&[1, 4, 5, 8])).clone();
    let d = psi.coeff_of_mask(mask_from_modes(&[1, 4, 6, 7])).neg();
    let probe = embed(&a_state(&a, &b, &c, &d));
    if &probe == psi {
        Some([a, b, c, d])
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// family representatives

fn state_from_terms(terms: &[(ExactScalar, &str)]) -> QubitState {
    let mut s = QubitState::zero();
    for (coeff, pattern) in terms {
        let b: Vec<u8> = pattern.bytes().map(|c| c - b'0').collect();
        let bits = [b[0], b[1], b[2], b[3]];
        let idx = QubitState::index(bits);
        let cur = s.amp(idx).add(coeff);
        s.set(bits, cur);
    }
    s
}

/// The parametrized family representatives that admit qubit realizations:
/// families 1 (a,b,c,d), 2 (a,b,c), 3 (a,b), 6 (a,b), 9 (a), 10 (a).
/// Families 12, 14 and 16 are reachable only through their fermionic
/// triple representatives.
pub fn family_representative(
    family: u32,
    params: &[ExactScalar],
) -> Result<QubitState, CanonicalError> {
    let expect = |n: usize| -> Result<(), CanonicalError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(CanonicalError::WrongParameterCount(family, n, params.len()))
        }
    };
    let i = ExactScalar::i();
    let half = ExactScalar::from_ratio(1, 2);
    match family {
        1 => {
            expect(4)?;
            Ok(a_state(&params[0], &params[1], &params[2], &params[3]))
        }
        2 => {
            expect(3)?;
            let (a, b, c) = (&params[0], &params[1], &params[2]);
            let ihalf = i.mul(&half);
            let terms = [
                (a.add(c).sub(&i).mul(&half), "0000"),
                (a.add(c).sub(&i).mul(&half), "1111"),
                (a.sub(c).add(&i).mul(&half), "0011"),
                (a.sub(c).add(&i).mul(&half), "1100"),
                (b.add(c).add(&i).mul(&half), "0101"),
                (b.add(c).add(&i).mul(&half), "1010"),
                (b.sub(c).sub(&i).mul(&half), "0110"),
                (b.sub(c).sub(&i).mul(&half), "1001"),
                (ihalf.clone(), "0001"),
                (ihalf.clone(), "0111"),
                (ihalf.clone(), "1000"),
                (ihalf.clone(), "1110"),
                (ihalf.neg(), "0010"),
                (ihalf.neg(), "0100"),
                (ihalf.neg(), "1011"),
                (ihalf.neg(), "1101"),
            ];
            Ok(state_from_terms(&terms))
        }
        3 => {
            expect(2)?;
            let (a, b) = (&params[0], &params[1]);
            let one = ExactScalar::one();
            let ah = a.mul(&half);
            let bp = b.add(&one).mul(&half);
            let bm = b.sub(&one).mul(&half);
            let terms = [
                (ah.clone(), "0000"),
                (ah.clone(), "1111"),
                (ah.clone(), "0011"),
                (ah.clone(), "1100"),
                (bp.clone(), "0101"),
                (bp, "1010"),
                (bm.clone(), "0110"),
                (bm, "1001"),
                (half.clone(), "1101"),
                (half.clone(), "0010"),
                (half.neg(), "0001"),
                (half.neg(), "1110"),
            ];
            Ok(state_from_terms(&terms))
        }
        6 => {
            expect(2)?;
            let (a, b) = (&params[0], &params[1]);
            let apb = a.add(b).mul(&half);
            let amb = a.sub(b).mul(&half);
            let terms = [
                (apb.clone(), "0000"),
                (apb, "1111"),
                (b.clone(), "0101"),
                (b.clone(), "1010"),
                (i.clone(), "1001"),
                (i.neg(), "0110"),
                (amb.clone(), "0011"),
                (amb, "1100"),
                (half.clone(), "0010"),
                (half.clone(), "0100"),
                (half.clone(), "1011"),
                (half.clone(), "1101"),
                (half.neg(), "0001"),
                (half.neg(), "0111"),
                (half.neg(), "1000"),
                (half.neg(), "1110"),
            ];
            Ok(state_from_terms(&terms))
        }
        9 => {
            expect(1)?;
            let a = &params[0];
            let two_i = i.scale_i64(2);
            let terms = [
                (a.clone(), "0000"),
                (a.clone(), "0101"),
                (a.clone(), "1010"),
                (a.clone(), "1111"),
                (two_i.neg(), "0100"),
                (two_i.clone(), "1001"),
                (two_i, "1110"),
            ];
            Ok(state_from_terms(&terms))
        }
        10 => {
            expect(1)?;
            let a = &params[0];
            let one = ExactScalar::one();
            let api = a.add(&i).mul(&half);
            let amip = a.sub(&i).add(&one).mul(&half);
            let amim = a.sub(&i).sub(&one).mul(&half);
            let ip = i.add(&one).mul(&half);
            let im = i.sub(&one).mul(&half);
            let mih = i.mul(&half).neg();
            let terms = [
                (api.clone(), "0000"),
                (api.clone(), "1111"),
                (api.clone(), "0011"),
                (api, "1100"),
                (amip.clone(), "0101"),
                (amip, "1010"),
                (amim.clone(), "0110"),
                (amim, "1001"),
                (ip.clone(), "1101"),
                (ip, "0010"),
                (im.clone(), "0001"),
                (im, "1110"),
                (mih.clone(), "0100"),
                (mih.clone(), "0111"),
                (mih.clone(), "1000"),
                (mih, "1011"),
            ];
            Ok(state_from_terms(&terms))
        }
        other => Err(CanonicalError::UnknownFamily(other)),
    }
}

/// Parameter count of each parametrized family.
pub fn family_parameter_count(family: u32) -> Option<usize> {
    match family {
        1 => Some(4),
        2 => Some(3),
        3 | 6 => Some(2),
        9 | 10 => Some(1),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// nilpotent orbit triples

/// Labels of the single-occupancy nilpotent orbits, paired with the family
/// whose zero-parameter representative they absorb.
pub const SOV_ORBIT_LABELS: [(u32, u32); 8] = [
    (1, 2),
    (2, 3),
    (5, 10),
    (6, 6),
    (9, 16),
    (20, 9),
    (44, 14),
    (50, 12),
];

/// The (H, E, F) data of a single-occupancy nilpotent orbit: H diagonal,
/// E the printed 4-vector, F = σ(E). The triple satisfies
/// [H,E] = 2E, [H,F] = −2F, [E,F] = H.
pub fn nilpotent_triple(
    label: u32,
) -> Result<(Matrix8<ExactScalar>, MultiVector<ExactScalar>, MultiVector<ExactScalar>), CanonicalError>
{
    let int = ExactScalar::from_i64;
    let i = ExactScalar::i();
    let half = ExactScalar::from_ratio(1, 2);
    let diag_half = |d: [i64; 8]| {
        Matrix8::diag(&d.map(int)).scale(&half)
    };
    let diag = |d: [i64; 8]| Matrix8::diag(&d.map(int));
    let term = |c: &ExactScalar, modes: [usize; 4]| MultiVector::basis(&modes).scale(c);
    let sum = |terms: Vec<MultiVector<ExactScalar>>| {
        terms
            .into_iter()
            .fold(MultiVector::zero(4), |acc, t| acc.add(&t).unwrap())
    };

    let (h, e) = match label {
        1 => (
            diag_half([1, 1, 1, 1, -1, -1, -1, -1]),
            term(&int(1), [1, 2, 3, 4]),
        ),
        2 => (
            diag([1, 1, 0, 0, 0, 0, -1, -1]),
            sum(vec![term(&i, [1, 2, 3, 5]), term(&i, [1, 2, 4, 6])]),
        ),
        5 => (
            diag_half([3, 1, 1, 1, -1, -1, -1, -3]),
            sum(vec![
                term(&i, [1, 3, 4, 7]),
                term(&i, [1, 2, 3, 5]),
                term(&i, [1, 2, 4, 6]),
            ]),
        ),
        6 => (
            diag([1, 1, 1, 1, -1, -1, -1, -1]),
            sum(vec![
                term(&i, [1, 3, 4, 7]),
                term(&i, [1, 2, 3, 5]),
                term(&i, [2, 3, 4, 8]),
                term(&i, [1, 2, 4, 6]),
            ]),
        ),
        9 => {
            let r2 = ExactScalar::radical(2).unwrap();
            (
                diag([2, 0, 0, 0, 0, 0, 0, -2]),
                sum(vec![
                    term(&r2, [1, 2, 3, 4]),
                    term(&r2.mul(&i), [1, 5, 6, 7]),
                ]),
            )
        }
        20 => {
            let ir3 = ExactScalar::radical(3).unwrap().mul(&i);
            (
                diag([2, 2, 1, 1, -1, -1, -2, -2]),
                sum(vec![
                    term(&ir3, [1, 3, 4, 7]),
                    term(&ir3, [2, 3, 4, 8]),
                    term(&int(2), [1, 2, 5, 6]),
                ]),
            )
        }
        44 => {
            let ir3 = ExactScalar::radical(3).unwrap().mul(&i);
            (
                diag([2, 2, 2, 0, 0, -2, -2, -2]),
                sum(vec![
                    term(&int(1), [1, 3, 5, 7]),
                    term(&int(2), [2, 3, 5, 8]),
                    term(&int(1), [1, 2, 5, 6]),
                    term(&ir3, [1, 3, 4, 7]),
                    term(&ir3.neg(), [1, 2, 4, 6]),
                ]),
            )
        }
        50 => {
            let r6 = ExactScalar::radical(6).unwrap();
            let ir10 = ExactScalar::radical(10).unwrap().mul(&i);
            (
                diag([4, 2, 2, 2, -2, -2, -2, -4]),
                sum(vec![
                    term(&r6, [1, 3, 5, 7]),
                    term(&r6, [1, 4, 6, 7]),
                    term(&r6, [1, 2, 5, 6]),
                    term(&ir10, [2, 3, 4, 8]),
                ]),
            )
        }
        other => return Err(CanonicalError::UnknownLabel(other)),
    };
    let f = sigma_odd(&e);
    Ok((h, e, f))
}

// ---------------------------------------------------------------------------
// local operators

/// A 2×2 matrix of scalars.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2<S: Scalar> {
    entries: [S; 4],
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn det(&self) -> S {
        self.entries[0]
            .mul(&self.entries[3])
            .sub(&self.entries[1].mul(&self.entries[2]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = &self.entries;
        let f = &o.entries;
        Mat2::new(
            e[0].mul(&f[0]).add(&e[1].mul(&f[2])),
            e[0].mul(&f[1]).add(&e[1].mul(&f[3])),
            e[2].mul(&f[0]).add(&e[3].mul(&f[2])),
            e[2].mul(&f[1]).add(&e[3].mul(&f[3])),
        )
    }

    pub fn scale(&self, t: &S) -> Self {
        Mat2 {
            entries: [
                self.entries[0].mul(t),
                self.entries[1].mul(t),
                self.entries[2].mul(t),
                self.entries[3].mul(t),
            ],
        }
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Mat2<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.entries[r * 2 + c]
    }
}

/// A permutation of the four qubit slots; `image(i)` is where slot i goes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm4 {
    map: [usize; 4],
}

impl Perm4 {
    pub fn identity() -> Self {
        Perm4 { map: [0, 1, 2, 3] }
    }

    pub fn new(map: [usize; 4]) -> Self {
        let mut seen = [false; 4];
        for &m in &map {
            assert!(m < 4 && !seen[m], "not a permutation");
            seen[m] = true;
        }
        Perm4 { map }
    }

    pub fn transposition(a: usize, b: usize) -> Self {
        let mut map = [0, 1, 2, 3];
        map.swap(a, b);
        Perm4 { map }
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Self {
        let mut map = [0; 4];
        for i in 0..4 {
            map[self.map[i]] = i;
        }
        Perm4 { map }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Perm4) -> Self {
        let mut map = [0; 4];
        for (i, slot) in map.iter_mut().enumerate() {
            *slot = self.map[other.map[i]];
        }
        Perm4 { map }
    }

    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                if self.map[a] > self.map[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map == [0, 1, 2, 3]
    }

    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        let mut items = [0usize, 1, 2, 3];
        permute(&mut items, 0, &mut out);
        out
    }
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<Perm4>) {
    if k == 4 {
        out.push(Perm4 { map: *items });
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// One-qubit gates on each slot followed by a qubit permutation.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalOperator<S: Scalar> {
    pub gates: [Mat2<S>; 4],
    pub perm: Perm4,
}

impl<S: Scalar> LocalOperator<S> {
    pub fn identity() -> Self {
        LocalOperator {
            gates: [
                Mat2::identity(),
                Mat2::identity(),
                Mat2::identity(),
                Mat2::identity(),
            ],
            perm: Perm4::identity(),
        }
    }

    pub fn from_gates(gates: [Mat2<S>; 4]) -> Self {
        LocalOperator {
            gates,
            perm: Perm4::identity(),
        }
    }

    pub fn permutation(perm: Perm4) -> Self {
        let mut op = Self::identity();
        op.perm = perm;
        op
    }
}

/// Realize a local operator as an 8×8 matrix on V: the gates act inside the
/// mode pairs and the permutation moves the pairs. For odd permutations the
/// first gate is negated; this keeps the determinant at one and makes the
/// induced grade-4 action agree with the qubit action on the embedded
/// subspace (each single-occupancy subset picks exactly one mode per pair,
/// so the extra sign cancels the reordering parity of the wedge factors).
pub fn local_to_matrix8<S: Scalar>(op: &LocalOperator<S>) -> Matrix8<S> {
    let mut m = Matrix8::zero();
    for q in 0..4 {
        let target = op.perm.image(q);
        let mut gate = op.gates[q].clone();
        if q == 0 && op.perm.sign() < 0 {
            gate = gate.scale(&S::one().neg());
        }
        for r in 0..2 {
            for c in 0..2 {
                m[(2 * target + r, 2 * q + c)] = gate[(r, c)].clone();
            }
        }
    }
    m
}

// ---------------------------------------------------------------------------
// the Pauli stabilizer of the Cartan subspace

/// Generators of the stabilizer of p₁…p₇ inside SL₈: the single-factor X and
/// Z operators on V ≅ C²⊗C²⊗C² (mode m−1 carries the three factor bits, most
/// significant first). Each has determinant one and fixes every pᵢ under the
/// grade-4 action.
pub fn pauli_stabilizer_generators() -> Vec<Matrix8<ExactScalar>> {
    let one = ExactScalar::one;
    let mut gens = Vec::new();
    for factor in 0..3 {
        let bit = 2 - factor; // factor 0 is the most significant bit
        // X on this factor: permutation m ↦ m xor 2^bit
        gens.push(Matrix8::from_fn(|r, c| {
            if r ^ (1 << bit) == c {
                one()
            } else {
                ExactScalar::zero()
            }
        }));
        // Z on this factor: diag((−1)^{bit value})
        gens.push(Matrix8::from_fn(|r, c| {
            if r == c {
                if r & (1 << bit) != 0 {
                    ExactScalar::from_i64(-1)
                } else {
                    one()
                }
            } else {
                ExactScalar::zero()
            }
        }));
    }
    gens
}

// ---------------------------------------------------------------------------
// family symmetries

/// A local operation together with its exact action on family parameters.
pub struct FamilySymmetry {
    pub name: &'static str,
    pub op: LocalOperator<ExactScalar>,
    pub param_map: fn(&[ExactScalar]) -> Vec<ExactScalar>,
}

fn m_gate() -> Mat2<ExactScalar> {
    // (1/√2) [[1, i], [i, 1]]
    let s = ExactScalar::radical(2).unwrap().inv().unwrap();
    let i = ExactScalar::i();
    Mat2::new(
        ExactScalar::one(),
        i.clone(),
        i,
        ExactScalar::one(),
    )
    .scale(&s)
}

fn m_gate_inv() -> Mat2<ExactScalar> {
    let s = ExactScalar::radical(2).unwrap().inv().unwrap();
    let i = ExactScalar::i().neg();
    Mat2::new(
        ExactScalar::one(),
        i.clone(),
        i,
        ExactScalar::one(),
    )
    .scale(&s)
}

fn i_sigma_y() -> Mat2<ExactScalar> {
    Mat2::new(
        ExactScalar::zero(),
        ExactScalar::one(),
        ExactScalar::from_i64(-1),
        ExactScalar::zero(),
    )
}

fn i_sigma_z() -> Mat2<ExactScalar> {
    Mat2::new(
        ExactScalar::i(),
        ExactScalar::zero(),
        ExactScalar::zero(),
        ExactScalar::i().neg(),
    )
}

/// The generating symmetries of the parameter varieties of families
/// 2, 3, 6, 9, 10: each maps the family representative at `params` to the
/// representative at `param_map(params)` exactly.
pub fn appendix_c_fixture(family: u32) -> Result<Vec<FamilySymmetry>, CanonicalError> {
    let id2 = Mat2::<ExactScalar>::identity;
    let half = ExactScalar::from_ratio(1, 2);
    match family {
        2 => {
            // (1/√2)[[1,−i],[−i,1]]^{⊗2} ⊗ (1/√2)[[i,1],[−1,−i]] ⊗ (1/√2)[[−i,−1],[1,i]],
            // stored transposed: the displayed tensor multiplies amplitude
            // rows, and only the transposed column action realizes the
            // printed parameter map (a,b,c) ↦ (b,−a,c).
            let s = ExactScalar::radical(2).unwrap().inv().unwrap();
            let i = ExactScalar::i();
            let r = Mat2::new(
                ExactScalar::one(),
                i.neg(),
                i.neg(),
                ExactScalar::one(),
            )
            .scale(&s);
            let u3 = Mat2::new(
                i.clone(),
                ExactScalar::from_i64(-1),
                ExactScalar::one(),
                i.neg(),
            )
            .scale(&s);
            let u4 = Mat2::new(
                i.neg(),
                ExactScalar::one(),
                ExactScalar::from_i64(-1),
                i.clone(),
            )
            .scale(&s);
            let rotate = LocalOperator {
                gates: [r.clone(), r, u3, u4],
                perm: Perm4::transposition(2, 3),
            };
            let middle_swap = LocalOperator {
                gates: [id2(), id2(), id2(), id2()],
                perm: Perm4::transposition(1, 2),
            };
            let h2 = half.clone();
            Ok(vec![
                FamilySymmetry {
                    name: "rotate-then-swap-last-two",
                    op: rotate,
                    param_map: |p| vec![p[1].clone(), p[0].neg(), p[2].clone()],
                },
                FamilySymmetry {
                    name: "swap-middle-qubits",
                    op: middle_swap,
                    param_map: {
                        let _ = h2;
                        |p| {
                            let half = ExactScalar::from_ratio(1, 2);
                            let s = p[0].add(&p[1]).mul(&half);
                            let d = p[0].sub(&p[1]).mul(&half);
                            vec![s.add(&p[2]), s.sub(&p[2]), d]
                        }
                    },
                },
            ])
        }
        3 => Ok(vec![
            FamilySymmetry {
                name: "double-iσy-on-last-two",
                op: LocalOperator {
                    gates: [id2(), id2(), i_sigma_y(), i_sigma_y()],
                    perm: Perm4::identity(),
                },
                param_map: |p| vec![p[0].clone(), p[1].neg()],
            },
            FamilySymmetry {
                name: "mm-rotation",
                op: LocalOperator {
                    gates: [m_gate_inv(), m_gate_inv(), m_gate(), m_gate()],
                    perm: Perm4::identity(),
                },
                param_map: |p| vec![p[1].clone(), p[0].clone()],
            },
        ]),
        6 => Ok(vec![
            FamilySymmetry {
                name: "swap-middle-qubits",
                op: LocalOperator {
                    gates: [id2(), id2(), id2(), id2()],
                    perm: Perm4::transposition(1, 2),
                },
                param_map: |p| {
                    let half = ExactScalar::from_ratio(1, 2);
                    vec![
                        p[0].add(&p[1].scale_i64(3)).mul(&half),
                        p[0].sub(&p[1]).mul(&half),
                    ]
                },
            },
            FamilySymmetry {
                name: "double-iσy-then-swap-first-two",
                op: LocalOperator {
                    gates: [id2(), id2(), i_sigma_y(), i_sigma_y()],
                    perm: Perm4::transposition(0, 1),
                },
                param_map: |p| vec![p[0].clone(), p[1].neg()],
            },
        ]),
        9 => Ok(vec![FamilySymmetry {
            name: "double-iσz",
            op: LocalOperator {
                gates: [id2(), i_sigma_z(), id2(), i_sigma_z()],
                perm: Perm4::identity(),
            },
            param_map: |p| vec![p[0].neg()],
        }]),
        10 => Ok(vec![FamilySymmetry {
            name: "m-to-the-four",
            op: LocalOperator {
                gates: [m_gate(), m_gate(), m_gate(), m_gate()],
                perm: Perm4::identity(),
            },
            param_map: |p| vec![p[0].neg()],
        }]),
        other => Err(CanonicalError::UnknownFamily(other)),
    }
}

// ---------------------------------------------------------------------------

/// Apply the 8×8 realization of a local operator to an embedded state and
/// pull the result back; equals `phi.apply(op)` on every state.
pub fn act_on_embedded(
    op: &LocalOperator<ExactScalar>,
    psi: &MultiVector<ExactScalar>,
) -> MultiVector<ExactScalar> {
    compound(&local_to_matrix8(op), psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::wedge;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_i64(n)
    }

    fn es(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn embed_basis_states() {
        let e = embed(&QubitState::basis([0, 0, 0, 0]));
        assert_eq!(e, MultiVector::basis(&[1, 3, 5, 7]));
        let e = embed(&QubitState::basis([1, 1, 1, 1]));
        assert_eq!(e, MultiVector::basis(&[2, 4, 6, 8]));
        let e = embed(&QubitState::basis([1, 0, 1, 0]));
        assert_eq!(e, MultiVector::basis(&[2, 3, 6, 7]));
    }

    #[test]
    fn cartan_slice_images() {
        // |0000⟩+|1111⟩ → p₂, |0011⟩+|1100⟩ → p₄, |0101⟩+|1010⟩ → p₅,
        // |0110⟩+|1001⟩ → −p₆
        let p = cartan_basis();
        let one = int(1);
        let zero = ExactScalar::zero();
        assert_eq!(embed(&a_state(&one, &zero, &zero, &zero)), p[1]);
        assert_eq!(embed(&a_state(&zero, &one, &zero, &zero)), p[3]);
        assert_eq!(embed(&a_state(&zero, &zero, &one, &zero)), p[4]);
        assert_eq!(embed(&a_state(&zero, &zero, &zero, &one)), p[5].neg());
        assert!(a_state(&zero, &zero, &zero, &zero).is_zero());
    }

    #[test]
    fn cartan_normalization_signs() {
        let p = cartan_basis();
        // p₂ = e1357 + e2468 with even parity of (6,8,2,4)
        let expected = MultiVector::basis(&[1, 3, 5, 7])
            .add(&MultiVector::basis(&[2, 4, 6, 8]))
            .unwrap();
        assert_eq!(p[1], expected);
        // p₆ = e1476 + e2385 = −e1467 − e2358
        let expected = MultiVector::basis(&[1, 4, 6, 7])
            .add(&MultiVector::basis(&[2, 3, 5, 8]))
            .unwrap()
            .neg();
        assert_eq!(p[5], expected);
        // p₇ = e1728 + e3546 = −e1278 − e3456
        let expected = MultiVector::basis(&[1, 2, 7, 8])
            .add(&MultiVector::basis(&[3, 4, 5, 6]))
            .unwrap()
            .neg();
        assert_eq!(p[6], expected);
    }

    #[test]
    fn cartan_vectors_pairwise_wedge_free() {
        // every pᵢ is a sum of two complementary subsets, so pᵢ ∧ pᵢ = 2·vol
        let vol = MultiVector::basis(&[1, 2, 3, 4, 5, 6, 7, 8]);
        for p in cartan_basis() {
            assert_eq!(wedge(&p, &p).unwrap(), vol.scale(&int(2)));
        }
    }

    #[test]
    fn unembed_round_trip_and_rejection() {
        let phi = a_state(&es("1/2"), &es("2 - i"), &es("3"), &es("-5*i"));
        assert_eq!(unembed(&embed(&phi)).unwrap(), phi);

        let err = unembed(&MultiVector::basis(&[1, 2, 3, 4])).unwrap_err();
        assert_eq!(err, CanonicalError::NotSov(vec![[1, 2, 3, 4]]));

        // exactly 54 of the 70 grade-4 subsets are rejected
        let bad = (0..70)
            .filter(|&r| !is_sov_mask(crate::exterior::subset_mask(4, r)))
            .count();
        assert_eq!(bad, 54);
    }

    #[test]
    fn embedding_is_isometric() {
        let phi = a_state(&es("1/2 + i"), &es("2"), &es("-3*i"), &es("1/3"));
        assert_eq!(embed(&phi).norm_sqr(), phi.norm_sqr());
    }

    #[test]
    fn family_representatives_match_printed_tables() {
        // family 9 at a = 0: −2i(|0100⟩ − |1001⟩ − |1110⟩)
        let psi = family_representative(9, &[ExactScalar::zero()]).unwrap();
        let m2i = es("-2*i");
        let mut expected = QubitState::zero();
        expected.set([0, 1, 0, 0], m2i.clone());
        expected.set([1, 0, 0, 1], m2i.neg());
        expected.set([1, 1, 1, 0], m2i.neg());
        assert_eq!(psi, expected);

        // family 3 at a = b = 0 keeps the ±1/2 ring terms
        let psi = family_representative(3, &[ExactScalar::zero(), ExactScalar::zero()]).unwrap();
        let half = es("1/2");
        let mut expected = QubitState::zero();
        for bits in [[0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 0, 1], [0, 0, 1, 0]] {
            expected.set(bits, half.clone());
        }
        for bits in [[0, 1, 1, 0], [1, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]] {
            expected.set(bits, half.neg());
        }
        assert_eq!(psi, expected);

        // family 1 is the Cartan slice state
        let params = [es("1"), es("2"), es("3"), es("4")];
        assert_eq!(
            family_representative(1, &params).unwrap(),
            a_state(&params[0], &params[1], &params[2], &params[3])
        );

        assert_eq!(
            family_representative(16, &[]).unwrap_err(),
            CanonicalError::UnknownFamily(16)
        );
        assert!(matches!(
            family_representative(9, &[]),
            Err(CanonicalError::WrongParameterCount(9, 1, 0))
        ));
    }

    #[test]
    fn triple_data_is_transcribed_exactly() {
        let (h, e, f) = nilpotent_triple(1).unwrap();
        assert_eq!(
            h,
            Matrix8::diag(&[1, 1, 1, 1, -1, -1, -1, -1].map(int)).scale(&es("1/2"))
        );
        assert_eq!(e, MultiVector::basis(&[1, 2, 3, 4]));
        assert_eq!(f, MultiVector::basis(&[5, 6, 7, 8]));

        let (h, e, f) = nilpotent_triple(9).unwrap();
        assert_eq!(h, Matrix8::diag(&[2, 0, 0, 0, 0, 0, 0, -2].map(int)));
        let r2 = es("r2");
        let expected = MultiVector::basis(&[1, 2, 3, 4])
            .scale(&r2)
            .add(&MultiVector::basis(&[1, 5, 6, 7]).scale(&r2.mul(&ExactScalar::i())))
            .unwrap();
        assert_eq!(e, expected);
        // σ(e1234) = e5678, σ(e1567) = e2348
        let expected_f = MultiVector::basis(&[5, 6, 7, 8])
            .scale(&r2)
            .add(&MultiVector::basis(&[2, 3, 4, 8]).scale(&r2.mul(&ExactScalar::i())))
            .unwrap();
        assert_eq!(f, expected_f);

        let (_, e, _) = nilpotent_triple(50).unwrap();
        assert_eq!(e.coeff_of_mask(mask_from_modes(&[1, 3, 5, 7])), &es("r6"));
        assert_eq!(e.coeff_of_mask(mask_from_modes(&[2, 3, 4, 8])), &es("i*r10"));

        assert_eq!(
            nilpotent_triple(3).unwrap_err(),
            CanonicalError::UnknownLabel(3)
        );
    }

    #[test]
    fn local_operator_equivariance() {
        let op = LocalOperator {
            gates: [
                Mat2::new(es("1"), es("2"), es("0"), es("1")),
                Mat2::new(es("1"), es("0"), es("-3*i"), es("1")),
                Mat2::new(es("2"), es("1"), es("3"), es("2")),
                i_sigma_y(),
            ],
            perm: Perm4::new([2, 0, 1, 3]),
        };
        let phi = a_state(&es("1"), &es("2 - i"), &es("1/3"), &es("5"));
        assert_eq!(act_on_embedded(&op, &embed(&phi)), embed(&phi.apply(&op)));

        // odd permutation exercises the sign twist
        let op = LocalOperator::<ExactScalar>::permutation(Perm4::transposition(1, 2));
        let phi = family_representative(6, &[es("2"), es("-1+i")]).unwrap();
        assert_eq!(act_on_embedded(&op, &embed(&phi)), embed(&phi.apply(&op)));
    }

    #[test]
    fn local_realization_is_special() {
        for perm in Perm4::all() {
            let op = LocalOperator {
                gates: [
                    Mat2::new(es("1"), es("1"), es("0"), es("1")),
                    Mat2::identity(),
                    i_sigma_y(),
                    i_sigma_z(),
                ],
                perm,
            };
            assert_eq!(local_to_matrix8(&op).det(), int(1));
        }
    }

    #[test]
    fn qubit_permutation_action_convention() {
        // swapping middle qubits sends |0110⟩ to |0110⟩ and |0100⟩ to |0010⟩
        let op = LocalOperator::<ExactScalar>::permutation(Perm4::transposition(1, 2));
        let s = QubitState::basis([0, 1, 0, 0]).apply(&op);
        assert_eq!(s, QubitState::basis([0, 0, 1, 0]));
    }

    #[test]
    fn family_symmetries_act_as_printed() {
        for family in [2u32, 3, 6, 9, 10] {
            let n = family_parameter_count(family).unwrap();
            let params: Vec<ExactScalar> = (0..n)
                .map(|k| es(&format!("{}/{}", 2 * k as i64 + 1, k as i64 + 2)))
                .collect();
            let psi = family_representative(family, &params).unwrap();
            for symmetry in appendix_c_fixture(family).unwrap() {
                let mapped = (symmetry.param_map)(&params);
                let expected = family_representative(family, &mapped).unwrap();
                assert_eq!(
                    psi.apply(&symmetry.op),
                    expected,
                    "family {family} symmetry {} failed",
                    symmetry.name
                );
            }
        }
    }

    #[test]
    fn family3_swap_parameters_fixture() {
        let params = [int(2), int(5)];
        let psi = family_representative(3, &params).unwrap();
        let sym = appendix_c_fixture(3).unwrap();
        let swapped = psi.apply(&sym[1].op);
        assert_eq!(
            swapped,
            family_representative(3, &[int(5), int(2)]).unwrap()
        );
    }

    #[test]
    fn family_symmetries_are_involutive_on_parameters() {
        // family 10: a → −a → a
        let sym = appendix_c_fixture(10).unwrap();
        let p = vec![es("3 - 2*i")];
        let twice = (sym[0].param_map)(&(sym[0].param_map)(&p));
        assert_eq!(twice, p);
    }

    #[test]
    fn pauli_generators_preserve_cartan_and_determinant() {
        let gens = pauli_stabilizer_generators();
        assert_eq!(gens.len(), 6);
        let ps = cartan_basis();
        for (k, g) in gens.iter().enumerate() {
            assert_eq!(g.det(), int(1), "generator {k} not special");
            for (j, p) in ps.iter().enumerate() {
                assert_eq!(compound(g, p), *p, "generator {k} moves p{}", j + 1);
            }
        }
    }

    #[test]
    fn pauli_group_modulo_center_has_expected_order() {
        // close the generated matrix group and count elements modulo ±I
        let gens = pauli_stabilizer_generators();
        let mut elements: Vec<Matrix8<ExactScalar>> = vec![Matrix8::identity()];
        let canonical = |m: &Matrix8<ExactScalar>| -> Matrix8<ExactScalar> {
            // normalize modulo ±1 by fixing the sign of the first nonzero entry
            for r in 0..8 {
                for c in 0..8 {
                    let e = &m[(r, c)];
                    if !e.is_zero() {
                        let flip = e
                            .to_approx();
                        if flip.re < 0.0 || (flip.re == 0.0 && flip.im < 0.0) {
                            return m.neg();
                        }
                        return m.clone();
                    }
                }
            }
            m.clone()
        };
        let mut frontier = vec![Matrix8::identity()];
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let next = canonical(&g.mul(&m));
                if !elements.contains(&next) {
                    elements.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        assert_eq!(elements.len(), 64);
    }
}
