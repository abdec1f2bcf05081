//! Exact arithmetic: prime fields and rationals, dense matrices, subspaces,
//! dual numbers and multivariate polynomials.

mod dual;
mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use dual::{DualMatrix, DualScalar};
pub use matrix::DenseMatrix;
pub use poly::{generic_linear_extract, GenericPoly, PolyMatrix, PolyRing};
pub use scalar::{is_prime, Field, FieldScalar};
pub use subspace::{common_kernel, Subspace};

/// `{v : Mv = 0}`.
pub fn nullspace(m: &DenseMatrix) -> Subspace {
    m.nullspace()
}

pub fn rank(m: &DenseMatrix) -> usize {
    m.rank()
}
