//! The graded exterior algebra on an 8-dimensional space: wedge and interior
//! products, volume duality, and the induced action of 8×8 matrices.
//!
//! Basis k-subsets of {1,…,8} are stored as bitmasks (mode m ↔ bit m−1) and
//! ranked lexicographically on the sorted index tuple; coefficients are dense.

use crate::scalar::Scalar;
use once_cell::sync::Lazy;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("grade overflow: {0} + {1} > 8")]
    GradeOverflow(usize, usize),
    #[error("grade underflow: cannot contract grade {0} into grade {1}")]
    GradeUnderflow(usize, usize),
    #[error("grade mismatch: {0} vs {1}")]
    GradeMismatch(usize, usize),
}

pub const DIM: usize = 8;

/// C(8, k) for k = 0..=8.
pub const GRADE_DIMS: [usize; 9] = [1, 8, 28, 56, 70, 56, 28, 8, 1];

struct SubsetTables {
    /// masks[k][r] = bitmask of the r-th k-subset in lex order
    masks: Vec<Vec<u8>>,
    /// rank[mask] within its own grade
    rank: [usize; 256],
}

static TABLES: Lazy<SubsetTables> = Lazy::new(|| {
    let mut masks: Vec<Vec<u8>> = vec![Vec::new(); 9];
    for m in 0u16..256 {
        masks[(m as u8).count_ones() as usize].push(m as u8);
    }
    // lex order on sorted index tuples
    for list in masks.iter_mut() {
        list.sort_by_key(|&m| {
            let mut key = 0u64;
            let mut mm = m;
            let mut slot = 0;
            while mm != 0 {
                let b = mm.trailing_zeros() as u64;
                key |= (b + 1) << (8 * (7 - slot));
                mm &= mm - 1;
                slot += 1;
            }
            key
        });
    }
    let mut rank = [0usize; 256];
    for list in masks.iter() {
        for (r, &m) in list.iter().enumerate() {
            rank[m as usize] = r;
        }
    }
    SubsetTables { masks, rank }
});

/// Bitmask of the rank-th basis k-subset.
pub fn subset_mask(k: usize, rank: usize) -> u8 {
    TABLES.masks[k][rank]
}

/// Lexicographic rank of a basis subset within its grade.
pub fn subset_rank(mask: u8) -> usize {
    TABLES.rank[mask as usize]
}

/// Sorted 1-based modes of a subset mask.
pub fn subset_modes(mask: u8) -> Vec<usize> {
    (0..8).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn mask_from_modes(modes: &[usize]) -> u8 {
    let mut m = 0u8;
    for &x in modes {
        assert!((1..=8).contains(&x), "mode out of range");
        m |= 1 << (x - 1);
    }
    m
}

/// Parity of merging S in front of T (S, T disjoint): +1 if the number of
/// pairs (s, t) with s ∈ S, t ∈ T, s > t is even, else −1.
pub fn merge_sign(s: u8, t: u8) -> i8 {
    debug_assert_eq!(s & t, 0);
    let mut inversions = 0u32;
    let mut ss = s;
    while ss != 0 {
        let b = ss.trailing_zeros();
        inversions += (t & ((1u16 << b) as u8).wrapping_sub(1)).count_ones();
        ss &= ss - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A homogeneous element of ∧^k(C^8) with dense coefficients.
#[derive(Clone, PartialEq)]
pub struct MultiVector<S: Scalar> {
    grade: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> MultiVector<S> {
    pub fn zero(grade: usize) -> Self {
        assert!(grade <= DIM);
        MultiVector {
            grade,
            coeffs: vec![S::zero(); GRADE_DIMS[grade]],
        }
    }

    pub fn scalar(value: S) -> Self {
        MultiVector {
            grade: 0,
            coeffs: vec![value],
        }
    }

    /// Basis element e_S for the given sorted modes.
    pub fn basis(modes: &[usize]) -> Self {
        let mask = mask_from_modes(modes);
        assert_eq!(mask.count_ones() as usize, modes.len(), "repeated mode");
        let mut v = Self::zero(modes.len());
        v.coeffs[subset_rank(mask)] = S::one();
        v
    }

    pub fn from_coeffs(grade: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), GRADE_DIMS[grade]);
        MultiVector { grade, coeffs }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn dim(&self) -> usize {
        GRADE_DIMS[self.grade]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, rank: usize) -> &S {
        &self.coeffs[rank]
    }

    pub fn coeff_of_mask(&self, mask: u8) -> &S {
        debug_assert_eq!(mask.count_ones() as usize, self.grade);
        &self.coeffs[subset_rank(mask)]
    }

    pub fn set_mask(&mut self, mask: u8, value: S) {
        debug_assert_eq!(mask.count_ones() as usize, self.grade);
        self.coeffs[subset_rank(mask)] = value;
    }

    pub fn add_to_mask(&mut self, mask: u8, value: &S) {
        let r = subset_rank(mask);
        self.coeffs[r] = self.coeffs[r].add(value);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExteriorError> {
        if self.grade != o.grade {
            return Err(ExteriorError::GradeMismatch(self.grade, o.grade));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(o.coeffs.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(MultiVector {
            grade: self.grade,
            coeffs,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MultiVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, t: &S) -> Self {
        MultiVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|c| c.mul(t)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        MultiVector {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Support as (mask, coefficient) pairs, skipping zeros.
    pub fn support(&self) -> impl Iterator<Item = (u8, &S)> {
        let grade = self.grade;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(r, c)| (subset_mask(grade, r), c))
    }

    /// Squared norm ⟨ψ, ψ⟩ against the orthonormal basis.
    pub fn norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&c.conj().mul(c));
            }
        }
        acc
    }
}

impl<S: Scalar> std::fmt::Debug for MultiVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiVector(grade {}; ", self.grade)?;
        let mut first = true;
        for (mask, c) in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let modes: Vec<String> = subset_modes(mask).iter().map(|m| m.to_string()).collect();
            write!(f, "e{}: {:?}", modes.join(""), c)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Exterior product.
pub fn wedge<S: Scalar>(u: &MultiVector<S>, v: &MultiVector<S>) -> Result<MultiVector<S>, ExteriorError> {
    let (j, k) = (u.grade(), v.grade());
    if j + k > DIM {
        return Err(ExteriorError::GradeOverflow(j, k));
    }
    let mut out = MultiVector::zero(j + k);
    for (su, cu) in u.support() {
        for (sv, cv) in v.support() {
            if su & sv != 0 {
                continue;
            }
            let sign = merge_sign(su, sv);
            let mut term = cu.mul(cv);
            if sign < 0 {
                term = term.neg();
            }
            out.add_to_mask(su | sv, &term);
        }
    }
    Ok(out)
}

fn contract_impl<S: Scalar>(
    a: &MultiVector<S>,
    psi: &MultiVector<S>,
    conjugate: bool,
) -> Result<MultiVector<S>, ExteriorError> {
    let (j, k) = (a.grade(), psi.grade());
    if j > k {
        return Err(ExteriorError::GradeUnderflow(j, k));
    }
    let mut out = MultiVector::zero(k - j);
    for (sa, ca) in a.support() {
        let ca = if conjugate { ca.conj() } else { ca.clone() };
        for (sp, cp) in psi.support() {
            if sa & sp != sa {
                continue; // S ⊄ T
            }
            let rest = sp & !sa;
            // sign from e_T = merge_sign(S, T∖S) · e_S ∧ e_{T∖S}
            let sign = merge_sign(sa, rest);
            let mut term = ca.mul(cp);
            if sign < 0 {
                term = term.neg();
            }
            out.add_to_mask(rest, &term);
        }
    }
    Ok(out)
}

/// Interior product ⟨a|ψ⟩, conjugate-linear in `a`: on basis elements,
/// interior(e_S, e_T) = ±e_{T∖S} when S ⊆ T, with the sign that moves S to
/// the front of T.
pub fn interior<S: Scalar>(a: &MultiVector<S>, psi: &MultiVector<S>) -> Result<MultiVector<S>, ExteriorError> {
    contract_impl(a, psi, true)
}

/// Bilinear contraction (no conjugation); pairs covector coefficients with ψ.
pub fn bilinear_contract<S: Scalar>(
    a: &MultiVector<S>,
    psi: &MultiVector<S>,
) -> Result<MultiVector<S>, ExteriorError> {
    contract_impl(a, psi, false)
}

/// Volume duality: the grade-(8−k) coefficient array y with
/// x ∧ e_S = y_S · e_{12345678}, used as a functional on grade 8−k.
pub fn vol_dual<S: Scalar>(x: &MultiVector<S>) -> MultiVector<S> {
    let k = x.grade();
    let mut out = MultiVector::zero(DIM - k);
    for (sx, cx) in x.support() {
        let comp = !sx;
        let sign = merge_sign(sx, comp);
        let term = if sign < 0 { cx.neg() } else { cx.clone() };
        out.set_mask(comp, term);
    }
    out
}

/// An 8×8 matrix of scalars acting on the underlying space.
#[derive(Clone, PartialEq)]
pub struct Matrix8<S: Scalar> {
    entries: Vec<S>, // row-major
}

impl<S: Scalar> Matrix8<S> {
    pub fn zero() -> Self {
        Matrix8 {
            entries: vec![S::zero(); 64],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..8 {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(64);
        for r in 0..8 {
            for c in 0..8 {
                entries.push(f(r, c));
            }
        }
        Matrix8 { entries }
    }

    pub fn diag(d: &[S]) -> Self {
        assert_eq!(d.len(), 8);
        Self::from_fn(|r, c| if r == c { d[r].clone() } else { S::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix8 {
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Matrix8 {
            entries: self
                .entries
                .iter()
                .zip(o.entries.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix8 {
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, t: &S) -> Self {
        Matrix8 {
            entries: self.entries.iter().map(|a| a.mul(t)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for r in 0..8 {
            for k in 0..8 {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..8 {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = out[(r, c)].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self[(c, r)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(|r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..8 {
            t = t.add(&self[(i, i)]);
        }
        t
    }

    /// Commutator XY − YX.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// X − tr(X)/8 · I.
    pub fn traceless_part(&self) -> Self {
        let t = self.trace();
        let eighth = S::from_i64(8).inv().expect("8 is invertible");
        let shift = t.mul(&eighth);
        let mut out = self.clone();
        for i in 0..8 {
            out[(i, i)] = out[(i, i)].sub(&shift);
        }
        out
    }

    /// Column as a grade-1 multivector.
    pub fn column(&self, c: usize) -> MultiVector<S> {
        let mut v = MultiVector::zero(1);
        for r in 0..8 {
            if !self[(r, c)].is_zero() {
                v.set_mask(1 << r, self[(r, c)].clone());
            }
        }
        v
    }

    /// Determinant by Gaussian elimination over the scalar field.
    pub fn det(&self) -> S {
        let mut m = self.clone();
        let mut det = S::one();
        for k in 0..8 {
            let pivot_row = (k..8).find(|&r| !m[(r, k)].is_zero());
            let Some(pr) = pivot_row else {
                return S::zero();
            };
            if pr != k {
                for c in 0..8 {
                    let tmp = m[(pr, c)].clone();
                    m[(pr, c)] = m[(k, c)].clone();
                    m[(k, c)] = tmp;
                }
                det = det.neg();
            }
            let p = m[(k, k)].clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in k + 1..8 {
                if m[(r, k)].is_zero() {
                    continue;
                }
                let f = m[(r, k)].mul(&pinv);
                for c in k..8 {
                    let s = f.mul(&m[(k, c)]);
                    m[(r, c)] = m[(r, c)].sub(&s);
                }
            }
        }
        det
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix8<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.entries[r * 8 + c]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix8<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.entries[r * 8 + c]
    }
}

impl<S: Scalar> std::fmt::Debug for Matrix8<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix8[")?;
        for r in 0..8 {
            write!(f, "  ")?;
            for c in 0..8 {
                write!(f, "{:?} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The induced action of g on ∧^k: on basis elements, the wedge of the
/// selected columns of g. Multiplicative in g.
pub fn compound<S: Scalar>(g: &Matrix8<S>, psi: &MultiVector<S>) -> MultiVector<S> {
    let k = psi.grade();
    if k == 0 {
        return psi.clone();
    }
    let columns: Vec<MultiVector<S>> = (0..8).map(|c| g.column(c)).collect();
    let mut out = MultiVector::zero(k);
    for (mask, c) in psi.support() {
        let mut w = MultiVector::scalar(S::one());
        for mode in subset_modes(mask) {
            w = wedge(&w, &columns[mode - 1]).expect("grade bound");
            if w.is_zero() {
                break;
            }
        }
        out = out.add(&w.scale(c)).expect("same grade");
    }
    out
}

/// The infinitesimal (Leibniz) action of X on ∧^k:
/// X·(v₁∧…∧v_k) = Σᵢ v₁∧…∧Xvᵢ∧…∧v_k.
pub fn derivation_action<S: Scalar>(x: &Matrix8<S>, psi: &MultiVector<S>) -> MultiVector<S> {
    let k = psi.grade();
    let mut out = MultiVector::zero(k);
    for (mask, c) in psi.support() {
        let modes = subset_modes(mask);
        for (pos_old, &l) in modes.iter().enumerate() {
            for a in 1..=8usize {
                let entry = &x[(a - 1, l - 1)];
                if entry.is_zero() {
                    continue;
                }
                if a == l {
                    out.add_to_mask(mask, &entry.mul(c));
                    continue;
                }
                let stripped = mask & !(1 << (l - 1));
                if stripped & (1 << (a - 1)) != 0 {
                    continue; // repeated index
                }
                let new_mask = stripped | (1 << (a - 1));
                // position of a among the remaining modes
                let pos_new = subset_modes(new_mask)
                    .iter()
                    .position(|&m| m == a)
                    .unwrap();
                let mut term = entry.mul(c);
                if (pos_old + pos_new) % 2 == 1 {
                    term = term.neg();
                }
                out.add_to_mask(new_mask, &term);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    type Mv = MultiVector<ExactScalar>;
    type M8 = Matrix8<ExactScalar>;

    fn e(modes: &[usize]) -> Mv {
        Mv::basis(modes)
    }

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_i64(n)
    }

    #[test]
    fn ranks_are_lexicographic() {
        assert_eq!(subset_rank(mask_from_modes(&[1, 2, 3, 4])), 0);
        assert_eq!(subset_rank(mask_from_modes(&[1, 2, 3, 5])), 1);
        assert_eq!(subset_rank(mask_from_modes(&[5, 6, 7, 8])), 69);
        // bijectivity
        for k in 0..=8 {
            for r in 0..GRADE_DIMS[k] {
                assert_eq!(subset_rank(subset_mask(k, r)), r);
            }
        }
    }

    #[test]
    fn wedge_basics() {
        let e12 = wedge(&e(&[1]), &e(&[2])).unwrap();
        assert_eq!(e12, e(&[1, 2]));
        let zero = wedge(&e(&[1, 2]), &e(&[1, 2])).unwrap();
        assert!(zero.is_zero());
        let anti = wedge(&e(&[2]), &e(&[1])).unwrap();
        assert_eq!(anti, e(&[1, 2]).neg());
    }

    #[test]
    fn wedge_grade_overflow() {
        let err = wedge(&e(&[1, 2, 3, 4, 5]), &e(&[6, 7, 8]).scale(&int(1)));
        assert!(err.is_ok());
        let err = wedge(&e(&[1, 2, 3, 4, 5]), &Mv::zero(4));
        assert_eq!(err.unwrap_err(), ExteriorError::GradeOverflow(5, 4));
    }

    #[test]
    fn cartan_vector_squares_to_twice_volume() {
        // (e1357 + e2468) ∧ (e1357 + e2468) = 2 e12345678
        let p2 = e(&[1, 3, 5, 7]).add(&e(&[2, 4, 6, 8])).unwrap();
        let sq = wedge(&p2, &p2).unwrap();
        let vol = e(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(sq, vol.scale(&int(2)));
    }

    #[test]
    fn interior_prefix_extraction() {
        let r = interior(&e(&[1, 2]), &e(&[1, 2, 3, 4])).unwrap();
        assert_eq!(r, e(&[3, 4]));
        // {1,2} is in neither term of p2
        let p2 = e(&[1, 3, 5, 7]).add(&e(&[2, 4, 6, 8])).unwrap();
        let z = interior(&e(&[1, 2]), &p2).unwrap();
        assert!(z.is_zero());
        let err = interior(&e(&[1, 2, 3]), &e(&[1, 2]));
        assert_eq!(err.unwrap_err(), ExteriorError::GradeUnderflow(3, 2));
    }

    #[test]
    fn interior_of_self_is_norm() {
        let psi = e(&[1, 2, 5, 7])
            .scale(&"1/2 + i".parse().unwrap())
            .add(&e(&[2, 4, 6, 8]).scale(&"3 - i".parse().unwrap()))
            .unwrap();
        let n = interior(&psi, &psi).unwrap();
        assert_eq!(n.grade(), 0);
        assert_eq!(n.coeff(0), &psi.norm_sqr());
    }

    #[test]
    fn vol_dual_fixtures() {
        let top = e(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let d = vol_dual(&top);
        assert_eq!(d.grade(), 0);
        assert_eq!(d.coeff(0), &int(1));

        // e1234 ∧ e5678 = +vol, so the dual functional picks e5678 with +1
        let d = vol_dual(&e(&[1, 2, 3, 4]));
        assert_eq!(d.coeff_of_mask(mask_from_modes(&[5, 6, 7, 8])), &int(1));

        // p1 ∧ p1 = 2 vol
        let p1 = e(&[1, 2, 3, 4]).add(&e(&[5, 6, 7, 8])).unwrap();
        let paired = wedge(&p1, &p1).unwrap();
        assert_eq!(vol_dual(&paired).coeff(0), &int(2));
        // equivalently: apply the dual of p1 to p1 via the bilinear pairing
        let dual = vol_dual(&p1);
        let mut acc = ExactScalar::zero();
        for (mask, c) in dual.support() {
            acc = acc.add(&c.mul(p1.coeff_of_mask(mask)));
        }
        assert_eq!(acc, int(2));

        // applying vol_dual twice returns ±x with sign (−1)^{k(8−k)}
        let x = e(&[1, 4, 6, 7]).add(&e(&[2, 3, 5, 8]).scale(&int(3))).unwrap();
        assert_eq!(vol_dual(&vol_dual(&x)), x); // k = 4: even
        let y = e(&[2]).add(&e(&[5]).scale(&int(2))).unwrap();
        assert_eq!(vol_dual(&vol_dual(&y)), y.neg()); // k = 1: 1·7 odd
    }

    #[test]
    fn compound_fixtures() {
        let psi = e(&[1, 2, 3, 4]).add(&e(&[1, 3, 5, 7]).scale(&int(5))).unwrap();
        assert_eq!(compound(&M8::identity(), &psi), psi);

        let d = M8::diag(&[1, 2, 3, 4, 5, 6, 7, 8].map(int));
        let r = compound(&d, &e(&[1, 3, 5, 7]));
        assert_eq!(r, e(&[1, 3, 5, 7]).scale(&int(105)));

        // permutation 1↔5, 2↔6, 3↔7, 4↔8: even, so e1234 → +e5678
        let p = M8::from_fn(|r, c| if r ^ 4 == c { int(1) } else { int(0) });
        assert_eq!(compound(&p, &e(&[1, 2, 3, 4])), e(&[5, 6, 7, 8]));
    }

    #[test]
    fn compound_is_multiplicative() {
        let g = M8::from_fn(|r, c| int(((r * 3 + c * 5) % 7) as i64 - 3));
        let h = M8::from_fn(|r, c| int(((r * 2 + c) % 5) as i64 - 2));
        let psi = e(&[1, 2, 5, 8]).add(&e(&[3, 4, 6, 7]).scale(&int(2))).unwrap();
        let lhs = compound(&g.mul(&h), &psi);
        let rhs = compound(&g, &compound(&h, &psi));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compound_respects_wedge() {
        let g = M8::from_fn(|r, c| int(((r * 5 + c * 2) % 9) as i64 - 4));
        let u = e(&[1, 4]).add(&e(&[2, 7]).scale(&int(3))).unwrap();
        let v = e(&[3, 5]).add(&e(&[6, 8]).scale(&int(-2))).unwrap();
        let lhs = compound(&g, &wedge(&u, &v).unwrap());
        let rhs = wedge(&compound(&g, &u), &compound(&g, &v)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_fixtures() {
        assert!(derivation_action(&M8::zero(), &e(&[1, 2, 3, 4])).is_zero());

        // H1 = ½ diag(1,1,1,1,−1,−1,−1,−1) acts on e1234 with weight 2
        let half = ExactScalar::from_ratio(1, 2);
        let h1 = M8::diag(&[1, 1, 1, 1, -1, -1, -1, -1].map(int)).scale(&half);
        assert_eq!(derivation_action(&h1, &e(&[1, 2, 3, 4])), e(&[1, 2, 3, 4]).scale(&int(2)));

        // single-slot replacement: E_{21} e1357 = e2357
        let mut e21 = M8::zero();
        e21[(1, 0)] = int(1);
        assert_eq!(derivation_action(&e21, &e(&[1, 3, 5, 7])), e(&[2, 3, 5, 7]));
    }

    #[test]
    fn derivation_is_leibniz_for_wedge() {
        let x = M8::from_fn(|r, c| int(((r * 7 + c * 3) % 11) as i64 - 5));
        let u = e(&[1, 2]).add(&e(&[5, 6]).scale(&int(2))).unwrap();
        let v = e(&[3, 8]).add(&e(&[4, 7]).scale(&int(-1))).unwrap();
        let lhs = derivation_action(&x, &wedge(&u, &v).unwrap());
        let rhs = wedge(&derivation_action(&x, &u), &v)
            .unwrap()
            .add(&wedge(&u, &derivation_action(&x, &v)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_matches_compound_derivative() {
        // first-order check: compound(I + tX, ψ) = ψ + t·deriv(X, ψ) + O(t²),
        // evaluated exactly in the polynomial ring by comparing coefficients
        // at two small rational values of t and eliminating the O(t²) part on
        // a grade-2 element (where the expansion stops at t²).
        let x = M8::from_fn(|r, c| int(((r + 2 * c) % 3) as i64 - 1));
        let psi = e(&[2, 5]).add(&e(&[1, 8]).scale(&int(3))).unwrap();
        let eval = |t: ExactScalar| {
            let g = M8::identity().add(&x.scale(&t));
            compound(&g, &psi)
        };
        let one = eval(int(1));
        let two = eval(int(2));
        // f(t) = ψ + t a + t² b  ⟹  4 f(1) − f(2) = 3 ψ + 2 a
        let lhs = one.scale(&int(4)).sub(&two).unwrap();
        let rhs = psi
            .scale(&int(3))
            .add(&derivation_action(&x, &psi).scale(&int(2)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_sign_exhaustive_grade4() {
        // sign of e_S ∧ e_T for all disjoint 4-subsets agrees with the
        // Levi-Civita parity of the concatenated index list
        for r in 0..GRADE_DIMS[4] {
            let s = subset_mask(4, r);
            let t = !s;
            let prod = wedge(
                &MultiVector::<ExactScalar>::from_coeffs(4, {
                    let mut v = vec![int(0); 70];
                    v[r] = int(1);
                    v
                }),
                &e(&subset_modes(t)),
            )
            .unwrap();
            let mut idx = subset_modes(s);
            idx.extend(subset_modes(t));
            let mut parity = 0;
            for a in 0..8 {
                for b in a + 1..8 {
                    if idx[a] > idx[b] {
                        parity += 1;
                    }
                }
            }
            let expected = if parity % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(prod.coeff(0), &expected);
        }
    }

    #[test]
    fn adjunction_between_interior_and_wedge() {
        // ⟨interior(a, ψ), φ⟩ = ⟨ψ, wedge(a, φ)⟩
        let pairing = |u: &Mv, v: &Mv| {
            let mut acc = ExactScalar::zero();
            for (mask, c) in u.support() {
                acc = acc.add(&c.conj().mul(v.coeff_of_mask(mask)));
            }
            acc
        };
        let a = e(&[2, 5]).scale(&"1 + i".parse().unwrap());
        let psi = e(&[1, 2, 5, 7])
            .add(&e(&[2, 4, 5, 6]).scale(&"2 - 3*i".parse().unwrap()))
            .unwrap();
        let phi = e(&[1, 7]).add(&e(&[4, 6]).scale(&"i".parse().unwrap())).unwrap();
        let lhs = pairing(&interior(&a, &psi).unwrap(), &phi);
        let rhs = pairing(&psi, &wedge(&a, &phi).unwrap());
        assert_eq!(lhs, rhs);
    }
}
