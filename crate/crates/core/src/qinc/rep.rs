use crate::cnum::{Matrix, Tolerance};
use crate::error::{argument, shape, Result};
use crate::grouporacle::Permutation;
use crate::scalar::Real;

/// Representation of the increasing-sequence algebra `C(I_{k,n})` on `ℂ^d`:
/// `v[i * k + j]` is the image of `v_{i+1, j+1}`.
///
/// `blocks` records a block-diagonal decomposition of `ℂ^d` respected by every
/// generator (a single block `[d]` unless built as a direct sum).
#[derive(Clone, Debug, PartialEq)]
pub struct IncreasingSequenceRep<T: Real> {
    n: usize,
    k: usize,
    d: usize,
    v: Vec<Matrix<T>>,
    blocks: Vec<usize>,
}

/// Residuals of the defining relations, max-entry norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceReport<T: Real> {
    /// `v² = v = vᴴ`
    pub projection: T,
    /// `Σ_i v_ij = 𝟙`
    pub column_sums: T,
    /// `v_ij v_i'j' = 0` for `j < j'`, `i ≥ i'`
    pub order: T,
    /// `v_ij = 0` unless `j ≤ i ≤ n − k + j`
    pub vanishing: T,
}

impl<T: Real> SequenceReport<T> {
    pub fn max(&self) -> T {
        self.projection.max(self.column_sums).max(self.order).max(self.vanishing)
    }

    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        self.max() <= tol.eps_eq
    }
}

fn projection_residual<T: Real>(p: &Matrix<T>) -> T {
    (p * p).max_diff(p).max(p.max_diff(&p.adjoint()))
}

impl<T: Real> IncreasingSequenceRep<T> {
    /// `v` lists `v_ij` row by row (`i` outer, `j` inner), 0-based.
    pub fn new(n: usize, k: usize, d: usize, v: Vec<Matrix<T>>) -> Result<Self> {
        Self::with_blocks(n, k, d, v, vec![d])
    }

    pub fn with_blocks(n: usize, k: usize, d: usize, v: Vec<Matrix<T>>, blocks: Vec<usize>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(argument(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        if d == 0 {
            return Err(argument("representation dimension must be positive"));
        }
        if v.len() != n * k {
            return Err(shape(format!("expected {} generators, got {}", n * k, v.len())));
        }
        if v.iter().any(|m| m.shape() != (d, d)) {
            return Err(shape(format!("generators must be {d}x{d}")));
        }
        if blocks.iter().sum::<usize>() != d || blocks.contains(&0) {
            return Err(argument("block sizes must be positive and sum to d"));
        }
        Ok(Self { n, k, d, v, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `v_{i+1, j+1}` (0-based arguments).
    pub fn v(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.v[i * self.k + j]
    }

    pub fn generators(&self) -> &[Matrix<T>] {
        &self.v
    }

    pub fn validate(&self) -> SequenceReport<T> {
        let (n, k, d) = (self.n, self.k, self.d);
        let id = Matrix::identity(d);
        let projection = self.v.iter().map(projection_residual).fold(T::zero(), T::max);
        let mut column_sums = T::zero();
        for j in 0..k {
            let s = (0..n).fold(Matrix::zeros(d, d), |acc, i| &acc + self.v(i, j));
            column_sums = column_sums.max(s.max_diff(&id));
        }
        let mut order = T::zero();
        for j in 0..k {
            for jp in j + 1..k {
                for i in 0..n {
                    for ip in 0..=i {
                        order = order.max((self.v(i, j) * self.v(ip, jp)).norm_max());
                    }
                }
            }
        }
        let mut vanishing = T::zero();
        for i in 0..n {
            for j in 0..k {
                if i < j || i > n - k + j {
                    vanishing = vanishing.max(self.v(i, j).norm_max());
                }
            }
        }
        SequenceReport { projection, column_sums, order, vanishing }
    }

    /// Block-diagonal direct sum of representations with equal `(n, k)`.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| argument("empty direct sum"))?;
        let (n, k) = (first.n, first.k);
        if parts.iter().any(|p| p.n != n || p.k != k) {
            return Err(argument("direct sum needs equal (n, k)"));
        }
        let d: usize = parts.iter().map(|p| p.d).sum();
        let mut v = Vec::with_capacity(n * k);
        for idx in 0..n * k {
            let mut m = Matrix::zeros(d, d);
            let mut off = 0;
            for p in parts {
                let x = &p.v[idx];
                for r in 0..p.d {
                    for c in 0..p.d {
                        m[(off + r, off + c)] = x[(r, c)];
                    }
                }
                off += p.d;
            }
            v.push(m);
        }
        let blocks = parts.iter().flat_map(|p| p.blocks.iter().copied()).collect();
        Self::with_blocks(n, k, d, v, blocks)
    }
}

/// Matrix of projections `p[i * n + j]` on `ℂ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MagicUnitaryRep<T: Real> {
    n: usize,
    d: usize,
    p: Vec<Matrix<T>>,
    blocks: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagicReport<T: Real> {
    pub projection: T,
    pub row_sums: T,
    pub column_sums: T,
}

impl<T: Real> MagicReport<T> {
    pub fn max(&self) -> T {
        self.projection.max(self.row_sums).max(self.column_sums)
    }

    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        self.max() <= tol.eps_eq
    }
}

impl<T: Real> MagicUnitaryRep<T> {
    pub fn new(n: usize, d: usize, p: Vec<Matrix<T>>) -> Result<Self> {
        Self::with_blocks(n, d, p, vec![d])
    }

    pub fn with_blocks(n: usize, d: usize, p: Vec<Matrix<T>>, blocks: Vec<usize>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(argument("magic unitary needs n, d >= 1"));
        }
        if p.len() != n * n || p.iter().any(|m| m.shape() != (d, d)) {
            return Err(shape(format!("expected {} entries of size {d}x{d}", n * n)));
        }
        if blocks.iter().sum::<usize>() != d || blocks.contains(&0) {
            return Err(argument("block sizes must be positive and sum to d"));
        }
        Ok(Self { n, d, p, blocks })
    }

    /// Permutation matrix of `σ`: `p_ij = [σ(j) = i]`.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        let n = sigma.degree();
        let p = (0..n * n)
            .map(|ij| {
                let v = if sigma.apply(ij % n) == ij / n { 1.0 } else { 0.0 };
                Matrix::from_real(&[&[v]])
            })
            .collect();
        Self { n, d: 1, p, blocks: vec![1] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn entry(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.p[i * self.n + j]
    }

    pub fn entries(&self) -> &[Matrix<T>] {
        &self.p
    }

    pub fn validate(&self) -> MagicReport<T> {
        let (n, d) = (self.n, self.d);
        let id = Matrix::identity(d);
        let projection = self.p.iter().map(projection_residual).fold(T::zero(), T::max);
        let mut row_sums = T::zero();
        let mut column_sums = T::zero();
        for a in 0..n {
            let r = (0..n).fold(Matrix::zeros(d, d), |acc, b| &acc + self.entry(a, b));
            let c = (0..n).fold(Matrix::zeros(d, d), |acc, b| &acc + self.entry(b, a));
            row_sums = row_sums.max(r.max_diff(&id));
            column_sums = column_sums.max(c.max_diff(&id));
        }
        MagicReport { projection, row_sums, column_sums }
    }

    /// The permutation `σ` with `p_ij = [σ(j) = i]`, when `d = 1` and entries are 0/1.
    pub fn to_permutation(&self, tol: &Tolerance<T>) -> Option<Permutation> {
        if self.d != 1 {
            return None;
        }
        let mut images = vec![usize::MAX; self.n];
        for j in 0..self.n {
            for i in 0..self.n {
                let z = self.entry(i, j)[(0, 0)];
                if (z - num_complex::Complex::new(T::one(), T::zero())).norm() <= tol.eps_eq {
                    if images[j] != usize::MAX {
                        return None;
                    }
                    images[j] = i;
                } else if z.norm() > tol.eps_eq {
                    return None;
                }
            }
        }
        Permutation::new(images).ok()
    }

    pub fn max_diff(&self, other: &Self) -> T {
        self.p.iter().zip(&other.p).map(|(a, b)| a.max_diff(b)).fold(T::zero(), T::max)
    }
}
