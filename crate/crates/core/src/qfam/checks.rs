use num_traits::{One, Zero};

use super::family::QuantumFamily;
use crate::cnum::{rank, vec, Matrix, Tolerance};
use crate::scalar::{Real, C};

/// Residual tolerances grow by this factor per composition depth.
pub const COMPOSITION_SLACK: f64 = 10.0;

/// Outcome of [`check_family`]. Witnesses are 0-based indices of the worst violation.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCheckReport<T: Real> {
    pub wang1: T,
    pub wang1_witness: usize,
    pub wang2: T,
    pub wang2_witness: (usize, usize, usize),
    pub wang3: T,
    pub wang3_witness: usize,
    pub wang4: T,
    pub wang4_witness: (usize, usize),
    pub unitary: T,
    pub podles_rank: usize,
    pub podles_target: usize,
    pub podles_full: bool,
    pub state_preserved: bool,
}

impl<T: Real> FamilyCheckReport<T> {
    /// Wang1–Wang4, unitarity and Podleś all hold at `slack · eps_eq`.
    pub fn passes_with(&self, tol: &Tolerance<T>, slack: T) -> bool {
        let eps = tol.eps_eq * slack;
        [self.wang1, self.wang2, self.wang3, self.wang4, self.unitary].iter().all(|&r| r <= eps) && self.podles_full
    }

    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        self.passes_with(tol, T::one())
    }

    /// Wang2–Wang4: the family is a unital *-homomorphism.
    pub fn is_star_hom(&self, tol: &Tolerance<T>) -> bool {
        self.wang2 <= tol.eps_eq && self.wang3 <= tol.eps_eq && self.wang4 <= tol.eps_eq
    }
}

fn norm<T: Real>(x: &[C<T>]) -> T {
    vec::norm_max(x)
}

fn wang1_impl<T: Real>(f: &QuantumFamily<T>) -> (T, usize) {
    let n = f.n();
    let phi = &f.space().onb.phi;
    let unit = f.index().unit();
    let mut worst = (T::zero(), 0);
    for j in 0..n {
        let mut acc = vec::scale(unit, -phi[j]);
        for i in 0..n {
            vec::axpy(&mut acc, phi[i], f.coeff(i, j));
        }
        let r = norm(&acc);
        if r > worst.0 {
            worst = (r, j);
        }
    }
    worst
}

/// `max_j ‖Σ_i φ(e_i) b_ij − φ(e_j) 𝟙‖`: the family preserves `φ` iff this vanishes.
pub fn check_wang1<T: Real>(f: &QuantumFamily<T>) -> T {
    wang1_impl(f).0
}

fn wang2_impl<T: Real>(f: &QuantumFamily<T>) -> (T, (usize, usize, usize)) {
    let n = f.n();
    let b = f.index();
    let m = &f.space().onb.m;
    let nz = |k: usize, l: usize| -> Vec<(usize, C<T>)> { (0..n).filter(|&p| !m[p][k][l].is_zero()).map(|p| (p, m[p][k][l])).collect() };
    let table: Vec<Vec<(usize, C<T>)>> = (0..n * n).map(|kl| nz(kl / n, kl % n)).collect();
    let mut worst = (T::zero(), (0, 0, 0));
    for i in 0..n {
        for j in 0..n {
            let mut lhs = vec![vec![C::zero(); b.dim()]; n];
            for k in 0..n {
                for l in 0..n {
                    let entries = &table[k * n + l];
                    if entries.is_empty() {
                        continue;
                    }
                    let prod = b.mul(f.coeff(k, i), f.coeff(l, j));
                    for &(p, z) in entries {
                        vec::axpy(&mut lhs[p], z, &prod);
                    }
                }
            }
            for (p, l) in lhs.iter_mut().enumerate() {
                for &(q, z) in &table[i * n + j] {
                    vec::axpy(l, -z, f.coeff(p, q));
                }
                let r = norm(l);
                if r > worst.0 {
                    worst = (r, (p, i, j));
                }
            }
        }
    }
    worst
}

/// `max_{p,i,j} ‖Σ_{k,l} m^p_{kl} b_ki b_lj − Σ_q m^q_{ij} b_pq‖`: multiplicativity.
pub fn check_wang2<T: Real>(f: &QuantumFamily<T>) -> T {
    wang2_impl(f).0
}

fn wang3_impl<T: Real>(f: &QuantumFamily<T>) -> (T, usize) {
    let n = f.n();
    let lambda = &f.space().onb.lambda;
    let unit = f.index().unit();
    let mut worst = (T::zero(), 0);
    for i in 0..n {
        let mut acc = vec::scale(unit, -lambda[i]);
        for j in 0..n {
            vec::axpy(&mut acc, lambda[j], f.coeff(i, j));
        }
        let r = norm(&acc);
        if r > worst.0 {
            worst = (r, i);
        }
    }
    worst
}

/// `max_i ‖Σ_j λ^j b_ij − λ^i 𝟙‖`: unitality.
pub fn check_wang3<T: Real>(f: &QuantumFamily<T>) -> T {
    wang3_impl(f).0
}

fn wang4_impl<T: Real>(f: &QuantumFamily<T>) -> (T, (usize, usize)) {
    let n = f.n();
    let b = f.index();
    let t = &f.space().onb.t;
    let stars: Vec<Vec<C<T>>> = (0..n * n).map(|ij| b.star(f.coeff(ij / n, ij % n))).collect();
    let mut worst = (T::zero(), (0, 0));
    for i in 0..n {
        for l in 0..n {
            let mut acc = vec![C::zero(); b.dim()];
            for k in 0..n {
                // b 𝒯 minus 𝒯 b̄
                vec::axpy(&mut acc, t[(k, l)], f.coeff(i, k));
                vec::axpy(&mut acc, -t[(i, k)], &stars[k * n + l]);
            }
            let r = norm(&acc);
            if r > worst.0 {
                worst = (r, (i, l));
            }
        }
    }
    worst
}

/// `‖(𝒯 ⊗ 𝟙) b̄ − b (𝒯 ⊗ 𝟙)‖`: *-preservation.
pub fn check_wang4<T: Real>(f: &QuantumFamily<T>) -> T {
    wang4_impl(f).0
}

/// `‖b* b − 𝟙‖ + ‖b b* − 𝟙‖` for `b` as an `n × n` matrix over `B`.
pub fn check_unitary<T: Real>(f: &QuantumFamily<T>) -> T {
    let n = f.n();
    let b = f.index();
    let stars: Vec<Vec<C<T>>> = (0..n * n).map(|ij| b.star(f.coeff(ij / n, ij % n))).collect();
    let mut left = T::zero();
    let mut right = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut l = if i == j { vec::scale(b.unit(), -C::one()) } else { b.zero_element() };
            let mut r = l.clone();
            for k in 0..n {
                vec::axpy(&mut l, C::one(), &b.mul(&stars[k * n + i], f.coeff(k, j)));
                vec::axpy(&mut r, C::one(), &b.mul(f.coeff(i, k), &stars[j * n + k]));
            }
            left = left.max(norm(&l));
            right = right.max(norm(&r));
        }
    }
    left + right
}

/// Matrix whose columns are `β(e_j)(𝟙 ⊗ x_k)` in coordinates of `M ⊗ B`.
pub fn podles_matrix<T: Real>(f: &QuantumFamily<T>) -> Matrix<T> {
    let n = f.n();
    let b = f.index();
    let db = b.dim();
    let mut cols = Vec::with_capacity(n * db);
    for j in 0..n {
        for k in 0..db {
            let xk = b.basis_vector(k);
            let mut col = vec![C::zero(); n * db];
            for i in 0..n {
                let y = b.mul(f.coeff(i, j), &xk);
                col[i * db..(i + 1) * db].copy_from_slice(&y);
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(n * db, &cols)
}

/// Rank of `span{β(e_j)(𝟙 ⊗ x_k)}` and whether it fills `M ⊗ B`.
pub fn check_podles<T: Real>(f: &QuantumFamily<T>, tol: &Tolerance<T>) -> (usize, bool) {
    let target = f.n() * f.index().dim();
    let r = rank(&podles_matrix(f), tol);
    (r, r == target)
}

pub fn check_family<T: Real>(f: &QuantumFamily<T>, tol: &Tolerance<T>) -> FamilyCheckReport<T> {
    let (wang1, wang1_witness) = wang1_impl(f);
    let (wang2, wang2_witness) = wang2_impl(f);
    let (wang3, wang3_witness) = wang3_impl(f);
    let (wang4, wang4_witness) = wang4_impl(f);
    let unitary = check_unitary(f);
    let (podles_rank, podles_full) = check_podles(f, tol);
    FamilyCheckReport {
        wang1,
        wang1_witness,
        wang2,
        wang2_witness,
        wang3,
        wang3_witness,
        wang4,
        wang4_witness,
        unitary,
        podles_rank,
        podles_target: f.n() * f.index().dim(),
        podles_full,
        state_preserved: wang1 <= tol.eps_eq,
    }
}
