use num_traits::Zero;

use super::decomp::svd;
use super::matrix::{vec, Matrix};
use crate::error::{shape, Error, Result};
use crate::scalar::{Real, C};

/// Thresholds for equality and rank decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T: Real> {
    /// Entrywise equality threshold.
    pub eps_eq: T,
    /// Relative singular-value threshold for rank decisions.
    pub eps_rank: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(eps_eq: T, eps_rank: T) -> Result<Self> {
        if !(eps_eq > T::zero() && eps_rank > T::zero()) {
            return Err(Error::Argument("tolerances must be strictly positive".into()));
        }
        Ok(Self { eps_eq, eps_rank })
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self { eps_eq: T::lit(1e-9), eps_rank: T::lit(1e-8) }
    }
}

/// Subspace of `C^ambient` held by an orthonormal basis (columns of `basis`).
#[derive(Clone, Debug)]
pub struct Subspace<T: Real> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Real> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ambient) }
    }

    /// Wraps columns that are already orthonormal.
    pub fn from_orthonormal(basis: Matrix<T>) -> Self {
        Self { ambient: basis.rows(), basis }
    }

    /// Span of arbitrary vectors (columns of `m`), rank decided by `tol.eps_rank`.
    pub fn span(m: &Matrix<T>, tol: &Tolerance<T>) -> Self {
        image(m, tol)
    }

    pub fn span_of(ambient: usize, vectors: &[Vec<C<T>>], tol: &Tolerance<T>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        image(&Matrix::from_columns(ambient, vectors), tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<C<T>>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> Matrix<T> {
        &self.basis * &self.basis.adjoint()
    }

    pub fn project(&self, v: &[C<T>]) -> Vec<C<T>> {
        let coeffs = self.basis.adjoint().apply(v);
        self.basis.apply(&coeffs)
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &[C<T>]) -> T {
        vec::norm(&vec::sub(v, &self.project(v)))
    }

    pub fn contains(&self, v: &[C<T>], tol: &Tolerance<T>) -> bool {
        self.residual(v) <= tol.eps_eq * vec::norm(v).max(T::one())
    }

    /// Orthogonal complement in the ambient space.
    pub fn complement(&self) -> Self {
        Self { ambient: self.ambient, basis: complement_columns(&self.basis) }
    }

    /// Largest residual of either basis projected onto the other subspace.
    /// Zero exactly when the spans coincide.
    pub fn span_distance(&self, other: &Self) -> T {
        if self.ambient != other.ambient || self.dim() != other.dim() {
            return T::infinity();
        }
        let a = self.vectors().iter().fold(T::zero(), |acc, v| acc.max(other.residual(v)));
        let b = other.vectors().iter().fold(T::zero(), |acc, v| acc.max(self.residual(v)));
        a.max(b)
    }

    pub fn same_span(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        self.span_distance(other) <= tol.eps_eq
    }

    /// `U ∩ V` as the nullspace of the stacked complementary projectors.
    pub fn intersect(&self, other: &Self, tol: &Tolerance<T>) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(shape(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        let id = Matrix::identity(self.ambient);
        let a = &id - &self.projector();
        let b = &id - &other.projector();
        let stacked = a.vstack(&b)?;
        Ok(nullspace_abs(&stacked, tol.eps_rank))
    }

    pub fn sum(&self, other: &Self, tol: &Tolerance<T>) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(shape(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(image(&self.basis.hstack(&other.basis)?, tol))
    }
}

/// Orthonormal basis of `{x : ‖a x‖ ≤ eps_rank · ‖a‖ · ‖x‖}`.
pub fn nullspace<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> Subspace<T> {
    let n = a.cols();
    if a.rows() == 0 || a.norm_max() == T::zero() {
        return Subspace::full(n);
    }
    let d = svd(a);
    let thr = tol.eps_rank * d.sigma_max();
    null_from_svd(a, &d, thr)
}

/// Nullspace for constraint systems whose entries are `O(1)` when nonzero: the threshold
/// is `eps_rank · max(‖a‖_F, 1)`, so a system that is pure rounding noise counts as zero.
pub(crate) fn nullspace_floor<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> Subspace<T> {
    nullspace_abs(a, tol.eps_rank * a.norm_fro().max(T::one()))
}

/// Nullspace with an absolute singular-value threshold; used where the operator
/// norm is known a priori (stacked projectors have norm ≤ 1 per block).
pub(crate) fn nullspace_abs<T: Real>(a: &Matrix<T>, thr: T) -> Subspace<T> {
    let n = a.cols();
    if a.rows() == 0 {
        return Subspace::full(n);
    }
    let d = svd(a);
    null_from_svd(a, &d, thr)
}

fn null_from_svd<T: Real>(a: &Matrix<T>, d: &super::decomp::Svd<T>, thr: T) -> Subspace<T> {
    let n = a.cols();
    if a.rows() >= n {
        let keep: Vec<usize> = (0..n).filter(|&j| d.s[j] <= thr).collect();
        Subspace::from_orthonormal(d.v.select_columns(&keep))
    } else {
        let row_space: Vec<usize> = (0..d.s.len()).filter(|&j| d.s[j] > thr).collect();
        let q = d.v.select_columns(&row_space);
        Subspace::from_orthonormal(complement_columns(&q))
    }
}

pub fn rank<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    svd(a).rank(tol.eps_rank)
}

/// Column space of `a`.
pub fn image<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> Subspace<T> {
    let m = a.rows();
    if a.cols() == 0 || a.norm_max() == T::zero() {
        return Subspace::zero(m);
    }
    let d = svd(a);
    let r = d.rank(tol.eps_rank);
    let keep: Vec<usize> = (0..r).collect();
    Subspace::from_orthonormal(d.u.select_columns(&keep))
}

/// Minimum-norm least-squares solution of `a x = b` with rank truncation.
pub fn solve_least_squares<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: &Tolerance<T>) -> Result<Matrix<T>> {
    if a.rows() != b.rows() {
        return Err(shape(format!("lhs has {} rows, rhs {}", a.rows(), b.rows())));
    }
    if a.norm_max() == T::zero() {
        return Ok(Matrix::zeros(a.cols(), b.cols()));
    }
    let d = svd(a);
    let r = d.rank(tol.eps_rank);
    let mut x = Matrix::zeros(a.cols(), b.cols());
    for k in 0..r {
        let u = d.u.column(k);
        let v = d.v.column(k);
        let inv = T::one() / d.s[k];
        for j in 0..b.cols() {
            let coef = vec::dot(&u, &b.column(j)) * inv;
            if coef.is_zero() {
                continue;
            }
            for i in 0..a.cols() {
                x[(i, j)] = x[(i, j)] + v[i] * coef;
            }
        }
    }
    Ok(x)
}

/// Orthonormal completion: columns spanning the orthogonal complement of the
/// orthonormal columns of `q`.
pub(crate) fn complement_columns<T: Real>(q: &Matrix<T>) -> Matrix<T> {
    let n = q.rows();
    let target = n.saturating_sub(q.cols());
    let mut found: Vec<Vec<C<T>>> = Vec::with_capacity(target);
    let existing: Vec<Vec<C<T>>> = (0..q.cols()).map(|j| q.column(j)).collect();
    let orth = |v: &mut Vec<C<T>>, set: &[Vec<C<T>>]| {
        for _ in 0..2 {
            for u in set {
                let p = vec::dot(u, v);
                vec::axpy(v, -p, u);
            }
        }
    };
    while found.len() < target {
        let mut best: Option<(T, Vec<C<T>>)> = None;
        for i in 0..n {
            let mut v = vec::basis::<T>(n, i);
            orth(&mut v, &existing);
            orth(&mut v, &found);
            let nv = vec::norm(&v);
            if best.as_ref().is_none_or(|(b, _)| nv > *b) {
                best = Some((nv, v));
            }
        }
        let (nv, mut v) = best.expect("non-empty ambient");
        if nv <= T::epsilon() {
            break;
        }
        for z in v.iter_mut() {
            *z = *z / nv;
        }
        found.push(v);
    }
    Matrix::from_columns(n, &found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    type M = Matrix<f64>;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn nullspace_of_zero_and_identity() {
        assert_eq!(nullspace(&M::zeros(3, 3), &tol()).dim(), 3);
        assert_eq!(nullspace(&M::identity(3), &tol()).dim(), 0);
    }

    #[test]
    fn nullspace_of_ones() {
        let n = nullspace(&M::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol());
        assert_eq!(n.dim(), 1);
        let expected = Subspace::from_orthonormal(M::from_real(&[&[0.5f64.sqrt()], &[-(0.5f64.sqrt())]]));
        assert!(n.same_span(&expected, &tol()));
    }

    #[test]
    fn wide_nullspace() {
        let a = M::from_real(&[&[1.0, 0.0, 0.0, 1.0]]);
        let n = nullspace(&a, &tol());
        assert_eq!(n.dim(), 3);
        for v in n.vectors() {
            assert!(vec::norm(&a.apply(&v)) < 1e-12);
        }
    }

    #[test]
    fn coordinate_intersection() {
        let e = |i| vec::basis::<f64>(3, i);
        let u = Subspace::span_of(3, &[e(0), e(1)], &tol());
        let v = Subspace::span_of(3, &[e(1), e(2)], &tol());
        let w = u.intersect(&v, &tol()).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.contains(&e(1), &tol()));
        assert!(u.intersect(&u, &tol()).unwrap().same_span(&u, &tol()));
    }

    #[test]
    fn intersect_ambient_mismatch() {
        let u = Subspace::<f64>::full(2);
        let v = Subspace::<f64>::full(3);
        assert!(matches!(u.intersect(&v, &tol()), Err(Error::Shape(_))));
    }

    #[test]
    fn least_squares_recovers_solution() {
        let a = M::from_real(&[&[2.0, 0.0], &[0.0, 4.0], &[0.0, 0.0]]);
        let b = M::from_real(&[&[2.0], &[8.0], &[0.0]]);
        let x = solve_least_squares(&a, &b, &tol()).unwrap();
        assert!(x.max_diff(&M::from_real(&[&[1.0], &[2.0]])) < 1e-14);
    }

    #[test]
    fn complement_dimension() {
        let u = Subspace::span_of(4, &[vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]], &tol());
        let w = u.complement();
        assert_eq!(w.dim(), 3);
        assert!(u.intersect(&w, &tol()).unwrap().dim() == 0);
    }
}
