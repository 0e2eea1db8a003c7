//! Seeded generators for random test objects: unitaries, projections, magic unitaries.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cnum::{vec, Matrix};
use crate::scalar::{Real, C};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re), T::lit(im))
}

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-ish random unitary: Gram–Schmidt of a Gaussian matrix.
pub fn unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    let g = gaussian_matrix::<T, R>(d, d, rng);
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        for _ in 0..2 {
            for u in &cols {
                let p = vec::dot(u, &v);
                vec::axpy(&mut v, -p, u);
            }
        }
        let n = vec::norm(&v);
        cols.push(vec::scale(&v, C::new(T::one() / n, T::zero())));
    }
    Matrix::from_columns(d, &cols)
}

/// Orthogonal projection of the given rank onto a random subspace of `C^d`.
pub fn projection<T: Real, R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Matrix<T> {
    let u = unitary::<T, R>(d, rng);
    let keep: Vec<usize> = (0..rank).collect();
    let q = u.select_columns(&keep);
    &q * &q.adjoint()
}

/// Random magic unitary `u_ij = U D_ij U*` with `D_ij` the diagonal of
/// indicators `[σ_r(j) = i]` for random permutations `σ_1 … σ_d`.
pub fn magic_unitary<T: Real, R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<Matrix<T>> {
    let u = unitary::<T, R>(d, rng);
    let perms: Vec<Vec<usize>> = (0..d)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let diag: Vec<C<T>> = perms.iter().map(|p| if p[j] == i { C::one() } else { C::zero() }).collect();
            out.push(&(&u * &Matrix::diag(&diag)) * &u.adjoint());
        }
    }
    out
}

/// Random faithful density matrix of size `d`, eigenvalues bounded below by `floor / d`.
pub fn density<T: Real, R: Rng + ?Sized>(d: usize, floor: f64, rng: &mut R) -> Matrix<T> {
    let u = unitary::<T, R>(d, rng);
    let w: Vec<f64> = (0..d).map(|_| floor + rng.gen::<f64>()).collect();
    let total: f64 = w.iter().sum();
    let diag: Vec<C<T>> = w.iter().map(|x| C::new(T::lit(x / total), T::zero())).collect();
    &(&u * &Matrix::diag(&diag)) * &u.adjoint()
}

/// Random probability vector with entries bounded away from zero.
pub fn probability_vector<T: Real, R: Rng + ?Sized>(n: usize, floor: f64, rng: &mut R) -> Vec<T> {
    let w: Vec<f64> = (0..n).map(|_| floor + rng.gen::<f64>()).collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|x| T::lit(x / total)).collect()
}
