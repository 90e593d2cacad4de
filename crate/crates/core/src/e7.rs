//! The symmetric-pair realization of the exceptional Lie algebra
//! e₇ = sl₈ ⊕ ∧⁴(C⁸), with its bracket, the involutions θ and σ, and the
//! adjoint-action matrix against a fixed 133-element basis.
//!
//! The mixed bracket ∧⁴V × ∧⁴V → sl₈ is built concretely from the volume
//! pairing and interior products rather than from stored structure
//! constants. Its normalization is pinned by requiring
//! [e₁₂₃₄, e₅₆₇₈] = ½·diag(1,1,1,1,−1,−1,−1,−1), and validated by the
//! Jacobi identity and the sl₂-triple fixtures.

use crate::exterior::{
    bilinear_contract, derivation_action, subset_mask, vol_dual, wedge, Matrix8, MultiVector,
};
use crate::linalg::DMat;
use crate::scalar::ExactScalar;

pub const E7_DIM: usize = 133;
pub const EVEN_DIM: usize = 63;
pub const ODD_DIM: usize = 70;

/// An element of e₇ = sl₈ ⊕ ∧⁴V: a traceless 8×8 matrix plus a grade-4
/// multivector.
#[derive(Clone, PartialEq, Debug)]
pub struct E7Element {
    even: Matrix8<ExactScalar>,
    odd: MultiVector<ExactScalar>,
}

impl E7Element {
    pub fn new(even: Matrix8<ExactScalar>, odd: MultiVector<ExactScalar>) -> Self {
        assert!(even.trace().is_zero(), "even part must be traceless");
        assert_eq!(odd.grade(), 4, "odd part must have grade 4");
        E7Element { even, odd }
    }

    pub fn zero() -> Self {
        E7Element {
            even: Matrix8::zero(),
            odd: MultiVector::zero(4),
        }
    }

    pub fn from_even(even: Matrix8<ExactScalar>) -> Self {
        Self::new(even, MultiVector::zero(4))
    }

    pub fn from_odd(odd: MultiVector<ExactScalar>) -> Self {
        assert_eq!(odd.grade(), 4);
        E7Element {
            even: Matrix8::zero(),
            odd,
        }
    }

    pub fn even(&self) -> &Matrix8<ExactScalar> {
        &self.even
    }

    pub fn odd(&self) -> &MultiVector<ExactScalar> {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        E7Element {
            even: self.even.add(&o.even),
            odd: self.odd.add(&o.odd).unwrap(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        E7Element {
            even: self.even.sub(&o.even),
            odd: self.odd.sub(&o.odd).unwrap(),
        }
    }

    pub fn neg(&self) -> Self {
        E7Element {
            even: self.even.neg(),
            odd: self.odd.neg(),
        }
    }

    pub fn scale(&self, t: &ExactScalar) -> Self {
        E7Element {
            even: self.even.scale(t),
            odd: self.odd.scale(t),
        }
    }

    /// True when every coordinate lies in Q(i).
    pub fn is_gaussian(&self) -> bool {
        (0..8).all(|r| (0..8).all(|c| self.even[(r, c)].is_gaussian()))
            && self.odd.coeffs().iter().all(|c| c.is_gaussian())
    }
}

/// The endomorphism M(φ, ψ) of V whose transpose sends a covector α to
/// vol_dual(φ ∧ (α ⌟ ψ)); its traceless part is the sl₈ component of the
/// bracket of two odd elements.
pub fn odd_pair_endomorphism(
    phi: &MultiVector<ExactScalar>,
    psi: &MultiVector<ExactScalar>,
) -> Matrix8<ExactScalar> {
    let mut m = Matrix8::zero();
    for a in 1..=8usize {
        let probe = MultiVector::basis(&[a]);
        let contracted = bilinear_contract(&probe, psi).expect("grade 1 ≤ 4");
        if contracted.is_zero() {
            continue;
        }
        let top = wedge(phi, &contracted).expect("grade 4 + 3 ≤ 8");
        let dual = vol_dual(&top); // grade-1 functional
        for b in 1..=8usize {
            let v = dual.coeff_of_mask(1 << (b - 1));
            if !v.is_zero() {
                m[(a - 1, b - 1)] = v.clone();
            }
        }
    }
    m
}

/// The Lie bracket of e₇ in the symmetric-pair presentation.
pub fn bracket(a: &E7Element, b: &E7Element) -> E7Element {
    let even = a
        .even
        .commutator(&b.even)
        .add(&odd_pair_endomorphism(&a.odd, &b.odd).traceless_part());
    let odd = derivation_action(&a.even, &b.odd)
        .sub(&derivation_action(&b.even, &a.odd))
        .unwrap();
    E7Element { even, odd }
}

/// The symmetric-pair involution: +1 on sl₈, −1 on ∧⁴V.
pub fn theta(a: &E7Element) -> E7Element {
    E7Element {
        even: a.even.clone(),
        odd: a.odd.neg(),
    }
}

/// The second involution on the odd part: e_{ijkl} ↦ e_{9−l,9−k,9−j,9−i}.
/// Image tuples stay sorted, so no sign appears.
pub fn sigma_odd(psi: &MultiVector<ExactScalar>) -> MultiVector<ExactScalar> {
    assert_eq!(psi.grade(), 4);
    let mut out = MultiVector::zero(4);
    for (mask, c) in psi.support() {
        out.set_mask(mask.reverse_bits(), c.clone());
    }
    out
}

/// The involution σ: conjugation by the mode reversal m ↦ 9−m. On ∧⁴V this
/// is exactly the basis map e_{ijkl} ↦ e_{9−l,9−k,9−j,9−i}; on sl₈ it is
/// X ↦ JXJ with J the antidiagonal permutation, which negates every diagonal
/// matrix whose spectrum is antisymmetric under reversal — in particular all
/// the triple fixtures. Commutes with θ.
pub fn sigma(a: &E7Element) -> E7Element {
    let flipped = Matrix8::from_fn(|r, c| a.even[(7 - r, 7 - c)].clone());
    E7Element {
        even: flipped,
        odd: sigma_odd(&a.odd),
    }
}

// ---------------------------------------------------------------------------
// coordinates against the fixed basis

/// Basis order: the 56 off-diagonal matrix units E_{rc} (r ≠ c) in row-major
/// order, the 7 diagonal differences E_{kk} − E_{k+1,k+1}, then the 70
/// grade-4 subsets in lexicographic rank order.
pub fn basis_element(index: usize) -> E7Element {
    assert!(index < E7_DIM);
    if index < 56 {
        let mut seen = 0;
        for r in 0..8 {
            for c in 0..8 {
                if r == c {
                    continue;
                }
                if seen == index {
                    let mut m = Matrix8::zero();
                    m[(r, c)] = ExactScalar::one();
                    return E7Element::from_even(m);
                }
                seen += 1;
            }
        }
        unreachable!()
    } else if index < 63 {
        let k = index - 56;
        let mut m = Matrix8::zero();
        m[(k, k)] = ExactScalar::one();
        m[(k + 1, k + 1)] = ExactScalar::from_i64(-1);
        E7Element::from_even(m)
    } else {
        let r = index - 63;
        let mut odd = MultiVector::zero(4);
        odd.set_mask(subset_mask(4, r), ExactScalar::one());
        E7Element::from_odd(odd)
    }
}

pub fn coords(a: &E7Element) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(E7_DIM);
    for r in 0..8 {
        for c in 0..8 {
            if r != c {
                out.push(a.even[(r, c)].clone());
            }
        }
    }
    // partial sums of the diagonal express X against E_kk − E_{k+1,k+1}
    let mut acc = ExactScalar::zero();
    for k in 0..7 {
        acc = acc.add(&a.even[(k, k)]);
        out.push(acc.clone());
    }
    out.extend(a.odd.coeffs().iter().cloned());
    out
}

pub fn from_coords(v: &[ExactScalar]) -> E7Element {
    assert_eq!(v.len(), E7_DIM);
    let mut even = Matrix8::zero();
    let mut idx = 0;
    for r in 0..8 {
        for c in 0..8 {
            if r != c {
                even[(r, c)] = v[idx].clone();
                idx += 1;
            }
        }
    }
    for k in 0..7 {
        let ck = &v[56 + k];
        even[(k, k)] = even[(k, k)].add(ck);
        even[(k + 1, k + 1)] = even[(k + 1, k + 1)].sub(ck);
    }
    let odd = MultiVector::from_coeffs(4, v[63..].to_vec());
    E7Element { even, odd }
}

/// The 133×133 matrix of ad(A) against the fixed basis:
/// ad_matrix(A) · coords(B) = coords([A, B]).
pub fn ad_matrix(a: &E7Element) -> DMat<ExactScalar> {
    let mut m = DMat::zeros(E7_DIM, E7_DIM);
    for j in 0..E7_DIM {
        let col = coords(&bracket(a, &basis_element(j)));
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                *m.at_mut(i, j) = v;
            }
        }
    }
    m
}

/// ad of a pure odd element, exploiting that it maps the even part to the
/// odd part and vice versa. Identical to `ad_matrix(from_odd(ψ))`.
pub fn ad_matrix_odd(psi: &MultiVector<ExactScalar>) -> DMat<ExactScalar> {
    ad_matrix(&E7Element::from_odd(psi.clone()))
}
