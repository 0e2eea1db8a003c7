//! One-sided Jacobi SVD and a Jacobi eigen-solver for Hermitian matrices.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 80;

/// Thin singular value decomposition `a = u · diag(s) · vᴴ`, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub u: Matrix<T>,
    pub s: Vec<T>,
    pub v: Matrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.s.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values above `rel * sigma_max`.
    pub fn rank(&self, rel: T) -> usize {
        let thr = rel * self.sigma_max();
        if self.sigma_max() == T::zero() {
            return 0;
        }
        self.s.iter().filter(|&&x| x > thr).count()
    }

    /// Ratio of extreme singular values; infinite when rank deficient.
    pub fn condition_number(&self) -> T {
        match self.s.last() {
            Some(&min) if min > T::zero() => self.sigma_max() / min,
            _ => T::infinity(),
        }
    }
}

/// Orthogonalizes the columns of `b` in place by plane rotations and returns the
/// accumulated unitary `v` with `a · v = b` for the original `a`.
fn jacobi_columns<T: Real>(b: &mut Matrix<T>) -> Matrix<T> {
    let (m, n) = b.shape();
    let mut v = Matrix::identity(n);
    let eps = T::epsilon() * T::lit(4.0);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = C::<T>::zero();
                for i in 0..m {
                    let x = b[(i, p)];
                    let y = b[(i, q)];
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                for i in 0..m {
                    let x = b[(i, p)];
                    let y = b[(i, q)] * phase;
                    b[(i, p)] = x * cs - y * sn;
                    b[(i, q)] = x * sn + y * cs;
                }
                for i in 0..n {
                    let x = v[(i, p)];
                    let y = v[(i, q)] * phase;
                    v[(i, p)] = x * cs - y * sn;
                    v[(i, q)] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    v
}

fn column_norm<T: Real>(b: &Matrix<T>, j: usize) -> T {
    (0..b.rows()).fold(T::zero(), |acc, i| acc + b[(i, j)].norm_sqr()).sqrt()
}

/// Computes the thin SVD. For a tall input `v` is square; for a wide input `u` is square.
pub fn svd<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    let tall = m >= n;
    let mut b = if tall { a.clone() } else { a.adjoint() };
    let w = jacobi_columns(&mut b);
    let k = b.cols();
    let mut order: Vec<usize> = (0..k).collect();
    let norms: Vec<T> = (0..k).map(|j| column_norm(&b, j)).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap_or(std::cmp::Ordering::Equal));
    let s: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    // normalized orthogonal columns of b
    let rows_b = b.rows();
    let mut left = Matrix::zeros(rows_b, k);
    for (jj, &j) in order.iter().enumerate() {
        if norms[j] > T::zero() {
            for i in 0..rows_b {
                left[(i, jj)] = b[(i, j)] / norms[j];
            }
        }
    }
    let right = w.select_columns(&order);
    if tall {
        Svd { u: left, s, v: right }
    } else {
        Svd { u: right, s, v: left }
    }
}

/// Eigen-decomposition of a Hermitian matrix. Returns ascending eigenvalues and
/// orthonormal eigenvectors as columns.
pub fn hermitian_eigen<T: Real>(a: &Matrix<T>) -> (Vec<T>, Matrix<T>) {
    assert!(a.is_square(), "hermitian_eigen: square input");
    let n = a.rows();
    // real symmetric embedding [[Re, -Im], [Im, Re]]
    let nn = 2 * n;
    let mut s = vec![T::zero(); nn * nn];
    for i in 0..n {
        for j in 0..n {
            let z = (a[(i, j)] + a[(j, i)].conj()) * T::lit(0.5);
            s[i * nn + j] = z.re;
            s[(i + n) * nn + (j + n)] = z.re;
            s[i * nn + (j + n)] = -z.im;
            s[(i + n) * nn + j] = z.im;
        }
    }
    let mut v = vec![T::zero(); nn * nn];
    for i in 0..nn {
        v[i * nn + i] = T::one();
    }
    let scale = s.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    let tiny = T::epsilon() * T::epsilon() * scale.max(T::min_positive_value());
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..nn)
            .flat_map(|i| (0..nn).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + s[i * nn + j] * s[i * nn + j]);
        if off <= tiny {
            break;
        }
        for p in 0..nn {
            for q in (p + 1)..nn {
                let apq = s[p * nn + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (s[q * nn + q] - s[p * nn + p]) / (T::lit(2.0) * apq);
                let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for k in 0..nn {
                    let akp = s[k * nn + p];
                    let akq = s[k * nn + q];
                    s[k * nn + p] = cs * akp - sn * akq;
                    s[k * nn + q] = sn * akp + cs * akq;
                }
                for k in 0..nn {
                    let apk = s[p * nn + k];
                    let aqk = s[q * nn + k];
                    s[p * nn + k] = cs * apk - sn * aqk;
                    s[q * nn + k] = sn * apk + cs * aqk;
                }
                for k in 0..nn {
                    let vkp = v[k * nn + p];
                    let vkq = v[k * nn + q];
                    v[k * nn + p] = cs * vkp - sn * vkq;
                    v[k * nn + q] = sn * vkp + cs * vkq;
                }
            }
        }
    }
    // Each eigenvalue of the Hermitian matrix appears twice in the embedding,
    // with eigenvectors [x; y] and [-y; x] for the complex vector x + iy.
    let mut idx: Vec<usize> = (0..nn).collect();
    idx.sort_by(|&x, &y| s[x * nn + x].partial_cmp(&s[y * nn + y]).unwrap_or(std::cmp::Ordering::Equal));
    let mut values = Vec::with_capacity(n);
    let mut vectors: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for &j in &idx {
        if vectors.len() == n {
            break;
        }
        let mut cand: Vec<C<T>> = (0..n).map(|i| C::new(v[i * nn + j], v[(i + n) * nn + j])).collect();
        for u in &vectors {
            let proj = super::matrix::vec::dot(u, &cand);
            super::matrix::vec::axpy(&mut cand, -proj, u);
        }
        let nrm = super::matrix::vec::norm(&cand);
        if nrm > T::lit(0.5) {
            for z in cand.iter_mut() {
                *z = *z / nrm;
            }
            values.push(s[j * nn + j]);
            vectors.push(cand);
        }
    }
    // Fallback for pathological pairings: complete the basis.
    if vectors.len() < n {
        let q = Matrix::from_columns(n, &vectors);
        let extra = super::subspace::complement_columns(&q);
        for j in 0..extra.cols() {
            let x = extra.column(j);
            let ax = a.apply(&x);
            values.push(super::matrix::vec::dot(&x, &ax).re);
            vectors.push(x);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].partial_cmp(&values[y]).unwrap_or(std::cmp::Ordering::Equal));
    let vals = order.iter().map(|&i| values[i]).collect();
    let cols: Vec<Vec<C<T>>> = order.iter().map(|&i| vectors[i].clone()).collect();
    (vals, Matrix::from_columns(n, &cols))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(a: &Matrix<T>) -> T {
    hermitian_eigen(a).0.first().copied().unwrap_or_else(T::zero)
}

/// Inverse of a square matrix through Gauss-Jordan elimination with partial pivoting.
/// Returns `None` when a pivot falls below `rel * max|a|`.
pub fn inverse<T: Real>(a: &Matrix<T>, rel: T) -> Option<Matrix<T>> {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.hstack(&Matrix::identity(n)).ok()?;
    let scale = a.norm_max();
    if scale == T::zero() {
        return if n == 0 { Some(Matrix::zeros(0, 0)) } else { None };
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| {
            m[(x, col)].norm().partial_cmp(&m[(y, col)].norm()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[(piv, col)].norm() <= rel * scale {
            return None;
        }
        if piv != col {
            for j in 0..2 * n {
                let tmp = m[(piv, j)];
                m[(piv, j)] = m[(col, j)];
                m[(col, j)] = tmp;
            }
        }
        let inv = C::<T>::one() / m[(col, col)];
        for j in 0..2 * n {
            m[(col, j)] = m[(col, j)] * inv;
        }
        for r in 0..n {
            if r != col {
                let f = m[(r, col)];
                if f.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let x = m[(col, j)];
                    m[(r, j)] = m[(r, j)] - f * x;
                }
            }
        }
    }
    Some(Matrix::from_fn(n, n, |i, j| m[(i, n + j)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn sample(m: usize, n: usize, seed: u64) -> Matrix<f64> {
        let mut s = seed;
        Matrix::from_fn(m, n, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((s >> 33) as f64) / (1u64 << 31) as f64 - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((s >> 33) as f64) / (1u64 << 31) as f64 - 0.5;
            c(a, b)
        })
    }

    fn reconstruct(d: &Svd<f64>) -> Matrix<f64> {
        let sig = Matrix::diag(&d.s.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        &(&d.u * &sig) * &d.v.adjoint()
    }

    #[test]
    fn svd_reconstructs_tall_and_wide() {
        for &(m, n) in &[(5, 3), (3, 5), (4, 4), (1, 6)] {
            let a = sample(m, n, (m * 10 + n) as u64);
            let d = svd(&a);
            assert!(reconstruct(&d).max_diff(&a) < 1e-12, "{m}x{n}");
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_rank_of_rank_one() {
        let a = Matrix::<f64>::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let d = svd(&a);
        assert_eq!(d.rank(1e-8), 1);
        assert!((d.s[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eigen_matches_known_spectrum() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let a = Matrix::<f64>::from_rows(&[vec![c(2.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(2.0, 0.0)]]).unwrap();
        let (vals, vecs) = hermitian_eigen(&a);
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 3.0).abs() < 1e-12);
        let lhs = &a * &vecs;
        let rhs = &vecs * &Matrix::diag(&[c(vals[0], 0.0), c(vals[1], 0.0)]);
        assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn hermitian_eigen_random() {
        let x = sample(6, 6, 7);
        let h = &x + &x.adjoint();
        let (vals, vecs) = hermitian_eigen(&h);
        let rhs = &vecs * &Matrix::diag(&vals.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>());
        assert!((&h * &vecs).max_diff(&rhs) < 1e-10);
        assert!((&vecs.adjoint() * &vecs).max_diff(&Matrix::identity(6)) < 1e-10);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = sample(5, 5, 3);
        let inv = inverse(&a, 1e-12).unwrap();
        assert!((&a * &inv).max_diff(&Matrix::identity(5)) < 1e-10);
        assert!(inverse(&Matrix::<f64>::from_real(&[&[1.0, 2.0], &[2.0, 4.0]]), 1e-12).is_none());
    }
}
