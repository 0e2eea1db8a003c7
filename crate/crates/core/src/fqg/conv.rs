use num_traits::{One, Zero};

use super::group::{FiniteQuantumGroup, Functional};
use crate::cnum::{inverse, nullspace_floor, vec, Matrix, Tolerance};
use crate::error::{argument, Error, Result};
use crate::scalar::{Real, C};

/// How [`cesaro_mean`] computes `lim (1/n) Σ_{k≤n} ω^{⋆k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CesaroMode {
    /// Running averages until two consecutive means differ by at most `tol` and the
    /// mean is idempotent to the same accuracy. Convergence is only `O(1/n)`.
    Iterative,
    /// Projection onto the fixed space of `ν ↦ ν ⋆ ω` along the range of `R − 1`.
    #[default]
    Spectral,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CesaroResult<T: Real> {
    pub mean: Functional<T>,
    /// Number of averaged powers (0 in spectral mode).
    pub iterations: usize,
    /// `‖ω̃ ⋆ ω̃ − ω̃‖_max`
    pub idempotency: T,
    pub mode: CesaroMode,
}

/// `(ω₁ ⊗ ω₂) ∘ Δ`.
pub fn convolve<T: Real>(q: &FiniteQuantumGroup<T>, w1: &Functional<T>, w2: &Functional<T>) -> Functional<T> {
    let n = q.dim();
    let mut out = vec![C::zero(); n];
    for (p, o) in out.iter_mut().enumerate() {
        for &(ab, z) in q.delta_column(p) {
            *o = *o + z * w1.coeffs[ab / n] * w2.coeffs[ab % n];
        }
    }
    Functional::new(out)
}

/// Matrix of `ν ↦ ν ⋆ ω` on coefficient vectors.
pub fn right_convolution_matrix<T: Real>(q: &FiniteQuantumGroup<T>, w: &Functional<T>) -> Matrix<T> {
    let n = q.dim();
    let mut r = Matrix::zeros(n, n);
    for p in 0..n {
        for &(ab, z) in q.delta_column(p) {
            r[(p, ab / n)] = r[(p, ab / n)] + z * w.coeffs[ab % n];
        }
    }
    r
}

/// `ω^{⋆k}` for `k ≥ 1`.
pub fn convolution_power<T: Real>(q: &FiniteQuantumGroup<T>, w: &Functional<T>, k: usize) -> Result<Functional<T>> {
    if k == 0 {
        return Err(argument("convolution powers start at 1"));
    }
    let mut acc = w.clone();
    for _ in 1..k {
        acc = convolve(q, &acc, w);
    }
    Ok(acc)
}

/// Cesàro limit `ω̃` of the convolution powers of `ω`.
pub fn cesaro_mean<T: Real>(
    q: &FiniteQuantumGroup<T>,
    w: &Functional<T>,
    mode: CesaroMode,
    tol: &Tolerance<T>,
    max_iter: usize,
) -> Result<CesaroResult<T>> {
    if w.coeffs.len() != q.dim() {
        return Err(argument(format!("functional has {} coefficients, algebra has dimension {}", w.coeffs.len(), q.dim())));
    }
    let (mean, iterations) = match mode {
        CesaroMode::Iterative => iterative(q, w, tol.eps_eq, max_iter)?,
        CesaroMode::Spectral => (spectral(q, w, tol)?, 0),
    };
    let idempotency = vec::max_diff(&convolve(q, &mean, &mean).coeffs, &mean.coeffs);
    Ok(CesaroResult { mean, iterations, idempotency, mode })
}

fn iterative<T: Real>(q: &FiniteQuantumGroup<T>, w: &Functional<T>, stop: T, max_iter: usize) -> Result<(Functional<T>, usize)> {
    let mut power = w.clone();
    let mut sum = w.coeffs.clone();
    let mut mean = w.coeffs.clone();
    let mut last = T::infinity();
    for k in 2..=max_iter.max(2) {
        power = convolve(q, &power, w);
        vec::axpy(&mut sum, C::one(), &power.coeffs);
        let next = vec::scale(&sum, C::new(T::one() / T::from_usize_lossy(k), T::zero()));
        last = vec::max_diff(&next, &mean);
        mean = next;
        // consecutive means can agree by accident; the limit is also idempotent
        if last <= stop {
            let m = Functional::new(mean.clone());
            let idem = vec::max_diff(&convolve(q, &m, &m).coeffs, &mean);
            if idem <= stop {
                return Ok((m, k));
            }
            last = idem;
        }
    }
    Err(Error::Convergence { iterations: max_iter, residual: last.to_f64().unwrap_or(f64::NAN) })
}

fn spectral<T: Real>(q: &FiniteQuantumGroup<T>, w: &Functional<T>, tol: &Tolerance<T>) -> Result<Functional<T>> {
    let n = q.dim();
    let r = right_convolution_matrix(q, w);
    let shifted = &r - &Matrix::identity(n);
    let right = nullspace_floor(&shifted, tol);
    let left = nullspace_floor(&shifted.adjoint(), tol);
    if right.dim() != left.dim() || right.dim() == 0 {
        return Err(Error::Convergence { iterations: 0, residual: f64::NAN });
    }
    let (k, l) = (right.basis(), left.basis());
    let pairing = &l.adjoint() * k;
    let inv = inverse(&pairing, tol.eps_rank).ok_or(Error::Convergence { iterations: 0, residual: f64::NAN })?;
    // E = K (Lᴴ K)⁻¹ Lᴴ
    let coeffs = k.apply(&inv.apply(&l.adjoint().apply(&w.coeffs)));
    Ok(Functional::new(coeffs))
}
