//! Dense complex linear algebra: matrices, Kronecker products, rank-revealing
//! decompositions and subspace arithmetic under explicit tolerances.

mod decomp;
mod matrix;
mod serde_impl;
mod subspace;

pub use decomp::{hermitian_eigen, inverse, min_eigenvalue, svd, Svd};
pub use matrix::{vec, Matrix};
pub use serde_impl::{ComplexJson, VecJson};
pub use subspace::{image, nullspace, rank, solve_least_squares, Subspace, Tolerance};

pub(crate) use subspace::nullspace_floor;

/// Free-function form of [`Matrix::matmul`].
pub fn matmul<T: crate::Real>(a: &Matrix<T>, b: &Matrix<T>) -> crate::Result<Matrix<T>> {
    a.matmul(b)
}

/// Free-function form of [`Matrix::kron`].
pub fn kron<T: crate::Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.kron(b)
}
