use std::sync::Arc;

use super::algebra::StarAlgebra;
use crate::cnum::{rank, vec, Matrix, Tolerance};
use crate::error::{shape, Result};
use crate::scalar::{Real, C};

/// Linear map between two *-algebras, given in coordinates
/// (`matrix` is `target.dim() × source.dim()`).
#[derive(Clone, Debug)]
pub struct StarHom<T: Real> {
    pub source: Arc<StarAlgebra<T>>,
    pub target: Arc<StarAlgebra<T>>,
    pub matrix: Matrix<T>,
}

/// Residuals from [`check_star_hom`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomReport<T: Real> {
    pub multiplicative: T,
    pub unital: T,
    pub star: T,
}

impl<T: Real> HomReport<T> {
    pub fn max(&self) -> T {
        self.multiplicative.max(self.unital).max(self.star)
    }

    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        self.max() <= tol.eps_eq
    }
}

impl<T: Real> StarHom<T> {
    pub fn new(source: Arc<StarAlgebra<T>>, target: Arc<StarAlgebra<T>>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(shape(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(a: Arc<StarAlgebra<T>>) -> Self {
        let n = a.dim();
        Self { source: a.clone(), target: a, matrix: Matrix::identity(n) }
    }

    pub fn apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.matrix.apply(x)
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &Self) -> Result<Self> {
        Self::new(first.source.clone(), self.target.clone(), self.matrix.matmul(&first.matrix)?)
    }

    /// `self ⊗ other : A ⊗ C → B ⊗ D`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            source: Arc::new(self.source.tensor(&other.source)),
            target: Arc::new(self.target.tensor(&other.target)),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn is_surjective(&self, tol: &Tolerance<T>) -> bool {
        rank(&self.matrix, tol) == self.target.dim()
    }
}

/// Multiplicativity, unitality and *-preservation residuals (max-entry norms).
pub fn check_star_hom<T: Real>(h: &StarHom<T>) -> HomReport<T> {
    let a = &h.source;
    let b = &h.target;
    let n = a.dim();
    let images: Vec<Vec<C<T>>> = (0..n).map(|k| h.matrix.column(k)).collect();
    let mut mult = T::zero();
    for k in 0..n {
        for l in 0..n {
            let mut lhs = vec![C::new(T::zero(), T::zero()); b.dim()];
            for &(p, z) in a.product_of_basis(k, l) {
                vec::axpy(&mut lhs, z, &images[p]);
            }
            let rhs = b.mul(&images[k], &images[l]);
            mult = mult.max(vec::max_diff(&lhs, &rhs));
        }
    }
    let unital = vec::max_diff(&h.apply(a.unit()), b.unit());
    let mut star = T::zero();
    for k in 0..n {
        let lhs = h.apply(&a.star(&a.basis_vector(k)));
        let rhs = b.star(&images[k]);
        star = star.max(vec::max_diff(&lhs, &rhs));
    }
    HomReport { multiplicative: mult, unital, star }
}
