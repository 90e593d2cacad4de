//! Exact classification of four-qubit pure states through their four-fermion
//! embedding: the e₇ = sl₈ ⊕ ∧⁴(C⁸) symmetric pair, polynomial invariants,
//! Jordan decomposition, a complete SLOCC-equivalence decision, and the
//! factorization of single-occupancy-preserving unitaries into local gates
//! and qubit permutations.

pub mod canonical;
pub mod e7;
pub mod exterior;
pub mod jordan;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod scalar;

pub use exterior::{
    bilinear_contract, compound, derivation_action, interior, vol_dual, wedge, ExteriorError,
    Matrix8, MultiVector,
};
pub use scalar::{ApproxScalar, ExactScalar, GaussRat, Scalar, ScalarError};
