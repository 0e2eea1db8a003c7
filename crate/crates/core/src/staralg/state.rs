use num_traits::{One, Zero};

use super::algebra::StarAlgebra;
use crate::cnum::{hermitian_eigen, Matrix, Tolerance};
use crate::error::{argument, shape, Result};
use crate::scalar::{Real, C};

/// Linear functional `φ(x) = Σ_j coeffs[j] · x_j` on a [`StarAlgebra`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateFunctional<T: Real> {
    pub coeffs: Vec<C<T>>,
}

/// Outcome of [`check_state`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateReport<T: Real> {
    pub unital: bool,
    pub positive: bool,
    pub faithful: bool,
    /// `|φ(𝟙) − 1|`
    pub unit_residual: T,
    pub gram_hermitian_residual: T,
    pub min_gram_eigenvalue: T,
}

impl<T: Real> StateFunctional<T> {
    pub fn new(coeffs: Vec<C<T>>) -> Self {
        Self { coeffs }
    }

    pub fn eval(&self, x: &[C<T>]) -> C<T> {
        self.coeffs.iter().zip(x).fold(C::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Uniform probability on `ℂⁿ`.
    pub fn uniform(n: usize) -> Self {
        let w = T::one() / T::from_usize_lossy(n);
        Self { coeffs: vec![C::new(w, T::zero()); n] }
    }

    /// Normalized trace `tr(x) / Σ m_i` on a block algebra.
    pub fn normalized_trace(a: &StarAlgebra<T>) -> Result<Self> {
        let blocks = a.blocks().ok_or_else(|| argument("normalized trace needs a block algebra"))?;
        let total: usize = blocks.iter().sum();
        let weights: Vec<T> = blocks.iter().map(|&m| T::from_usize_lossy(m) / T::from_usize_lossy(total)).collect();
        Self::trace_weighted(a, &weights)
    }

    /// `φ = Σ_i w_i · tr_i / m_i` on `⊕ M_{m_i}`.
    pub fn trace_weighted(a: &StarAlgebra<T>, weights: &[T]) -> Result<Self> {
        let blocks = a.blocks().ok_or_else(|| argument("weighted trace needs a block algebra"))?;
        if blocks.len() != weights.len() {
            return Err(shape("one weight per block"));
        }
        let mut coeffs = vec![C::zero(); a.dim()];
        let mut off = 0;
        for (&m, &w) in blocks.iter().zip(weights) {
            for r in 0..m {
                coeffs[off + r * m + r] = C::new(w / T::from_usize_lossy(m), T::zero());
            }
            off += m * m;
        }
        Ok(Self { coeffs })
    }

    /// `φ(x) = Σ_i tr(ρ_i x_i)` for density blocks `ρ_i`.
    pub fn from_densities(a: &StarAlgebra<T>, rho: &[Matrix<T>]) -> Result<Self> {
        let blocks = a.blocks().ok_or_else(|| argument("densities need a block algebra"))?;
        if blocks.len() != rho.len() {
            return Err(shape("one density per block"));
        }
        let mut coeffs = vec![C::zero(); a.dim()];
        let mut off = 0;
        for (&m, r) in blocks.iter().zip(rho) {
            if r.shape() != (m, m) {
                return Err(shape(format!("density must be {m}x{m}")));
            }
            // tr(ρ e_{st}) = ρ_{ts}
            for s in 0..m {
                for t in 0..m {
                    coeffs[off + s * m + t] = r[(t, s)];
                }
            }
            off += m * m;
        }
        Ok(Self { coeffs })
    }

    /// Gram matrix `G_{ij} = φ(e_i* e_j)`.
    pub fn gram(&self, a: &StarAlgebra<T>) -> Matrix<T> {
        let n = a.dim();
        let stars: Vec<Vec<C<T>>> = (0..n).map(|i| a.star(&a.basis_vector(i))).collect();
        Matrix::from_fn(n, n, |i, j| self.eval(&a.mul(&stars[i], &a.basis_vector(j))))
    }

    /// `⟨x, y⟩_φ = φ(x* y)`.
    pub fn inner(&self, a: &StarAlgebra<T>, x: &[C<T>], y: &[C<T>]) -> C<T> {
        self.eval(&a.mul(&a.star(x), y))
    }
}

/// Checks unitality, positivity and faithfulness of `phi` on `a`.
pub fn check_state<T: Real>(a: &StarAlgebra<T>, phi: &StateFunctional<T>, tol: &Tolerance<T>) -> Result<StateReport<T>> {
    if phi.coeffs.len() != a.dim() {
        return Err(shape(format!("state has {} coefficients, algebra dimension {}", phi.coeffs.len(), a.dim())));
    }
    let unit_residual = (phi.eval(a.unit()) - C::one()).norm();
    let g = phi.gram(a);
    let herm = g.max_diff(&g.adjoint());
    let (eig, _) = hermitian_eigen(&g);
    let min_eig = eig.first().copied().unwrap_or_else(T::zero);
    let scale = eig.last().copied().unwrap_or_else(T::one).abs().max(T::one());
    let positive = herm <= tol.eps_eq && min_eig >= -tol.eps_rank * scale;
    Ok(StateReport {
        unital: unit_residual <= tol.eps_eq,
        positive,
        faithful: positive && min_eig > tol.eps_rank,
        unit_residual,
        gram_hermitian_residual: herm,
        min_gram_eigenvalue: min_eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type A = StarAlgebra<f64>;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn uniform_is_faithful() {
        let a = A::commutative(3).unwrap();
        let r = check_state(&a, &StateFunctional::uniform(3), &tol()).unwrap();
        assert!(r.unital && r.positive && r.faithful);
    }

    #[test]
    fn point_mass_not_faithful() {
        let a = A::commutative(2).unwrap();
        let phi = StateFunctional::new(vec![crate::scalar::c(1.0, 0.0), crate::scalar::c(0.0, 0.0)]);
        let r = check_state(&a, &phi, &tol()).unwrap();
        assert!(r.unital && r.positive && !r.faithful);
    }

    #[test]
    fn weighted_two_points() {
        // Gram matrix is diag(q, 1-q), eigenvalues q and 1-q
        let a = A::commutative(2).unwrap();
        for &q in &[0.1, 0.5, 0.93] {
            let phi = StateFunctional::trace_weighted(&a, &[q, 1.0 - q]).unwrap();
            let r = check_state(&a, &phi, &tol()).unwrap();
            assert!(r.faithful);
            assert!((r.min_gram_eigenvalue - q.min(1.0 - q)).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_weight_not_positive() {
        let a = A::commutative(2).unwrap();
        let phi = StateFunctional::trace_weighted(&a, &[1.5, -0.5]).unwrap();
        let r = check_state(&a, &phi, &tol()).unwrap();
        assert!(r.unital && !r.positive && !r.faithful);
    }
}
