use num_traits::Zero;

use super::algebra::StarAlgebra;
use super::state::{check_state, StateFunctional};
use crate::cnum::{inverse, svd, vec, Matrix, Tolerance};
use crate::error::{precondition, Result};
use crate::scalar::{Real, C};

/// Structure data of an algebra in a φ-orthonormal basis.
///
/// Column `i` of `change` holds the raw coordinates of the orthonormal vector
/// `e_i`; `to_onb` is its inverse. In the orthonormal basis
/// `e_k e_l = Σ_p m[p][k][l] e_p`, `Σ_i lambda[i] e_i = 𝟙` and
/// `e_l* = Σ_k t[(k, l)] e_k`.
#[derive(Clone, Debug)]
pub struct OrthoBasisData<T: Real> {
    pub change: Matrix<T>,
    pub to_onb: Matrix<T>,
    pub m: Vec<Vec<Vec<C<T>>>>,
    pub lambda: Vec<C<T>>,
    pub t: Matrix<T>,
    /// `φ(e_i)` for the orthonormal vectors.
    pub phi: Vec<C<T>>,
}

impl<T: Real> OrthoBasisData<T> {
    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// Raw coordinates of `e_i`.
    pub fn vector(&self, i: usize) -> Vec<C<T>> {
        self.change.column(i)
    }

    pub fn t_condition_number(&self) -> T {
        svd(&self.t).condition_number()
    }

    /// `max |φ(e_i* e_j) − δ_ij|`.
    pub fn orthonormality_residual(&self, a: &StarAlgebra<T>, phi: &StateFunctional<T>) -> T {
        let n = self.dim();
        let mut r = T::zero();
        for i in 0..n {
            for j in 0..n {
                let g = phi.inner(a, &self.vector(i), &self.vector(j));
                let d = if i == j { g - C::new(T::one(), T::zero()) } else { g };
                r = r.max(d.norm());
            }
        }
        r
    }

    /// Residual of `e_k e_l = Σ_p m^p_{kl} e_p` evaluated in raw coordinates.
    pub fn structure_residual(&self, a: &StarAlgebra<T>) -> T {
        let n = self.dim();
        let mut r = T::zero();
        for k in 0..n {
            for l in 0..n {
                let lhs = a.mul(&self.vector(k), &self.vector(l));
                let mut rhs = vec![C::zero(); a.dim()];
                for p in 0..n {
                    vec::axpy(&mut rhs, self.m[p][k][l], &self.vector(p));
                }
                r = r.max(vec::max_diff(&lhs, &rhs));
            }
        }
        r
    }

    /// Residual of `Σ λ^i e_i = 𝟙`.
    pub fn unit_residual(&self, a: &StarAlgebra<T>) -> T {
        vec::max_diff(&self.change.apply(&self.lambda), a.unit())
    }

    /// Residual of `𝒯 · conj(𝒯) = I`, the coordinate form of `x** = x`.
    pub fn involution_residual(&self) -> T {
        (&self.t * &self.t.conj()).max_diff(&Matrix::identity(self.dim()))
    }
}

/// Modified Gram–Schmidt (two passes) of the canonical basis against `⟨x,y⟩ = φ(x*y)`.
pub fn orthonormalize<T: Real>(a: &StarAlgebra<T>, phi: &StateFunctional<T>, tol: &Tolerance<T>) -> Result<OrthoBasisData<T>> {
    let report = check_state(a, phi, tol)?;
    if !report.faithful {
        return Err(precondition(format!(
            "state is not faithful (smallest Gram eigenvalue {:e})",
            report.min_gram_eigenvalue.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let n = a.dim();
    let g = phi.gram(a);
    let inner = |x: &[C<T>], y: &[C<T>]| -> C<T> {
        // x^H G y
        let gy = g.apply(y);
        vec::dot(x, &gy)
    };
    let mut onb: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = a.basis_vector(j);
        for _ in 0..2 {
            for u in &onb {
                let p = inner(u, &v);
                vec::axpy(&mut v, -p, u);
            }
        }
        let nv = inner(&v, &v).re.sqrt();
        // also rejects NaN
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(nv > T::zero()) {
            return Err(precondition("Gram–Schmidt breakdown: state is numerically degenerate"));
        }
        for z in v.iter_mut() {
            *z = *z / nv;
        }
        onb.push(v);
    }
    let change = Matrix::from_columns(n, &onb);
    let to_onb = inverse(&change, T::epsilon()).ok_or_else(|| precondition("orthonormal basis change is singular"))?;
    let mut m = vec![vec![vec![C::zero(); n]; n]; n];
    for k in 0..n {
        for l in 0..n {
            let prod = to_onb.apply(&a.mul(&onb[k], &onb[l]));
            for p in 0..n {
                m[p][k][l] = prod[p];
            }
        }
    }
    let lambda = to_onb.apply(a.unit());
    let t_cols: Vec<Vec<C<T>>> = (0..n).map(|l| to_onb.apply(&a.star(&onb[l]))).collect();
    let t = Matrix::from_columns(n, &t_cols);
    let phi_onb = onb.iter().map(|v| phi.eval(v)).collect();
    Ok(OrthoBasisData { change, to_onb, m, lambda, t, phi: phi_onb })
}
