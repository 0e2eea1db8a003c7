use num_traits::{One, Zero};

use crate::cnum::{nullspace, vec, Matrix, Tolerance};
use crate::error::{argument, shape, Error, Result};
use crate::scalar::{Real, C};

/// Sparse coordinate list `[(index, coefficient)]`.
pub type Sparse<T> = Vec<(usize, C<T>)>;

/// Finite-dimensional *-algebra in a fixed basis `e_0 … e_{n-1}`.
///
/// Products are stored sparsely: `table[k * n + l]` lists the nonzero
/// coordinates of `e_k e_l`. The involution is conjugate-linear with
/// `(e_j)* = Σ_k inv[k][j] e_k`.
#[derive(Clone, Debug)]
pub struct StarAlgebra<T: Real> {
    dim: usize,
    table: Vec<Sparse<T>>,
    unit: Vec<C<T>>,
    inv: Vec<Sparse<T>>,
    blocks: Option<Vec<usize>>,
}

/// Residuals of the defining identities of a unital *-algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraResiduals<T: Real> {
    pub associativity: T,
    pub unit: T,
    pub involution_square: T,
    pub antimultiplicative: T,
}

impl<T: Real> AlgebraResiduals<T> {
    pub fn max(&self) -> T {
        self.associativity.max(self.unit).max(self.involution_square).max(self.antimultiplicative)
    }
}

fn push_sparse<T: Real>(out: &mut [C<T>], s: &Sparse<T>, coef: C<T>) {
    for &(p, c) in s {
        out[p] = out[p] + coef * c;
    }
}

fn to_sparse<T: Real>(v: &[C<T>]) -> Sparse<T> {
    v.iter().enumerate().filter(|(_, z)| !z.is_zero()).map(|(i, &z)| (i, z)).collect()
}

impl<T: Real> StarAlgebra<T> {
    /// Builds an algebra from dense structure constants `mult[p][k][l]` with
    /// `e_k e_l = Σ_p mult[p][k][l] e_p`, and validates the axioms.
    pub fn from_structure(mult: &[Vec<Vec<C<T>>>], unit: Vec<C<T>>, inv: &Matrix<T>, tol: &Tolerance<T>) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(argument("algebra must have positive dimension"));
        }
        if mult.len() != n || mult.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(shape(format!("structure tensor must be {n}x{n}x{n}")));
        }
        if inv.shape() != (n, n) {
            return Err(shape(format!("involution matrix must be {n}x{n}")));
        }
        let mut table = vec![Vec::new(); n * n];
        for k in 0..n {
            for l in 0..n {
                table[k * n + l] = (0..n).filter(|&p| !mult[p][k][l].is_zero()).map(|p| (p, mult[p][k][l])).collect();
            }
        }
        let inv = (0..n).map(|j| to_sparse(&inv.column(j))).collect();
        let alg = Self { dim: n, table, unit, inv, blocks: None };
        let r = alg.residuals();
        if r.max() > tol.eps_eq {
            return Err(Error::Precondition(format!("structure data violates *-algebra axioms: {r:?}")));
        }
        Ok(alg)
    }

    /// `⊕ M_{m_i}(ℂ)` in the matrix-unit basis, block by block, `e_{rs}` at offset `r·m + s`.
    pub fn from_blocks(blocks: &[usize]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(argument("block list must be non-empty"));
        }
        if blocks.contains(&0) {
            return Err(argument("block sizes must be at least 1"));
        }
        let n: usize = blocks.iter().map(|m| m * m).sum();
        let mut table = vec![Vec::new(); n * n];
        let mut unit = vec![C::zero(); n];
        let mut inv = vec![Vec::new(); n];
        let mut off = 0;
        for &m in blocks {
            let idx = |r: usize, s: usize| off + r * m + s;
            for r in 0..m {
                unit[idx(r, r)] = C::one();
                for s in 0..m {
                    inv[idx(r, s)] = vec![(idx(s, r), C::one())];
                    for u in 0..m {
                        table[idx(r, s) * n + idx(s, u)] = vec![(idx(r, u), C::one())];
                    }
                }
            }
            off += m * m;
        }
        Ok(Self { dim: n, table, unit, inv, blocks: Some(blocks.to_vec()) })
    }

    /// `ℂⁿ` with its basis of minimal projections.
    pub fn commutative(n: usize) -> Result<Self> {
        Self::from_blocks(&vec![1; n])
    }

    pub fn matrix_algebra(m: usize) -> Result<Self> {
        Self::from_blocks(&[m])
    }

    /// Algebra of functions on a finite group: `ℂ^{|G|}` in the δ-basis.
    pub fn function_algebra(g: &crate::grouporacle::FiniteGroup) -> Self {
        Self::commutative(g.order()).expect("groups are non-empty")
    }

    /// Builds an algebra from raw sparse tables without validation.
    pub(crate) fn from_parts(dim: usize, table: Vec<Sparse<T>>, unit: Vec<C<T>>, inv: Vec<Sparse<T>>) -> Self {
        debug_assert_eq!(table.len(), dim * dim);
        Self { dim, table, unit, inv, blocks: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    pub fn unit(&self) -> &[C<T>] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<C<T>> {
        vec::basis(self.dim, i)
    }

    pub fn zero_element(&self) -> Vec<C<T>> {
        vec![C::zero(); self.dim]
    }

    /// Coordinates of `e_k e_l`.
    pub fn product_of_basis(&self, k: usize, l: usize) -> &Sparse<T> {
        &self.table[k * self.dim + l]
    }

    /// Structure constant `c^p_{k,l}`.
    pub fn structure_constant(&self, p: usize, k: usize, l: usize) -> C<T> {
        self.table[k * self.dim + l].iter().find(|(q, _)| *q == p).map_or(C::zero(), |&(_, z)| z)
    }

    pub fn mul(&self, x: &[C<T>], y: &[C<T>]) -> Vec<C<T>> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = vec![C::zero(); self.dim];
        let ys: Vec<(usize, C<T>)> = to_sparse(y);
        for (k, &xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for &(l, yl) in &ys {
                push_sparse(&mut out, &self.table[k * self.dim + l], xk * yl);
            }
        }
        out
    }

    pub fn star(&self, x: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![C::zero(); self.dim];
        for (j, &xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                push_sparse(&mut out, &self.inv[j], xj.conj());
            }
        }
        out
    }

    /// Dense involution matrix with `(e_j)* = Σ_k inv[k][j] e_k`.
    pub fn involution_matrix(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (j, col) in self.inv.iter().enumerate() {
            for &(k, z) in col {
                m[(k, j)] = z;
            }
        }
        m
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &[C<T>]) -> Matrix<T> {
        let cols: Vec<Vec<C<T>>> = (0..self.dim).map(|l| self.mul(x, &self.basis_vector(l))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn right_mult_matrix(&self, x: &[C<T>]) -> Matrix<T> {
        let cols: Vec<Vec<C<T>>> = (0..self.dim).map(|l| self.mul(&self.basis_vector(l), x)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Dense structure tensor `[p][k][l]`.
    pub fn structure_tensor(&self) -> Vec<Vec<Vec<C<T>>>> {
        let n = self.dim;
        let mut t = vec![vec![vec![C::zero(); n]; n]; n];
        for k in 0..n {
            for l in 0..n {
                for &(p, z) in &self.table[k * n + l] {
                    t[p][k][l] = z;
                }
            }
        }
        t
    }

    pub fn residuals(&self) -> AlgebraResiduals<T> {
        let n = self.dim;
        let e = |i| self.basis_vector(i);
        let mut assoc = T::zero();
        for k in 0..n {
            for l in 0..n {
                let kl = self.mul(&e(k), &e(l));
                for m in 0..n {
                    let lhs = self.mul(&kl, &e(m));
                    let rhs = self.mul(&e(k), &self.mul(&e(l), &e(m)));
                    assoc = assoc.max(vec::max_diff(&lhs, &rhs));
                }
            }
        }
        let mut unit = T::zero();
        let mut sq = T::zero();
        let mut anti = T::zero();
        for k in 0..n {
            unit = unit.max(vec::max_diff(&self.mul(&self.unit, &e(k)), &e(k)));
            unit = unit.max(vec::max_diff(&self.mul(&e(k), &self.unit), &e(k)));
            sq = sq.max(vec::max_diff(&self.star(&self.star(&e(k))), &e(k)));
            for l in 0..n {
                let lhs = self.star(&self.mul(&e(k), &e(l)));
                let rhs = self.mul(&self.star(&e(l)), &self.star(&e(k)));
                anti = anti.max(vec::max_diff(&lhs, &rhs));
            }
        }
        AlgebraResiduals { associativity: assoc, unit, involution_square: sq, antimultiplicative: anti }
    }

    /// Largest `‖e_k e_l − e_l e_k‖_∞`.
    pub fn commutativity_residual(&self) -> T {
        let n = self.dim;
        let mut r = T::zero();
        for k in 0..n {
            for l in (k + 1)..n {
                let a = self.mul(&self.basis_vector(k), &self.basis_vector(l));
                let b = self.mul(&self.basis_vector(l), &self.basis_vector(k));
                r = r.max(vec::max_diff(&a, &b));
            }
        }
        r
    }

    pub fn is_commutative(&self, tol: &Tolerance<T>) -> bool {
        self.commutativity_residual() <= tol.eps_eq
    }

    /// Dimension of the center, by a rank computation on `[L_k − R_k]_k`.
    pub fn center_dim(&self, tol: &Tolerance<T>) -> usize {
        let n = self.dim;
        let blocks: Vec<Matrix<T>> = (0..n)
            .map(|k| {
                let e = self.basis_vector(k);
                // x ↦ e_k x − x e_k
                &self.left_mult_matrix(&e) - &self.right_mult_matrix(&e)
            })
            .collect();
        let stacked = Matrix::vstack_all(n, &blocks).expect("uniform widths");
        nullspace(&stacked, tol).dim()
    }

    /// Tensor product in the Kronecker basis `e_i ⊗ f_j ↦ i·dim(b) + j`.
    pub fn tensor(&self, b: &Self) -> Self {
        let (da, db) = (self.dim, b.dim);
        let n = da * db;
        let mut table = vec![Vec::new(); n * n];
        for k1 in 0..da {
            for l1 in 0..da {
                let pa = &self.table[k1 * da + l1];
                if pa.is_empty() {
                    continue;
                }
                for k2 in 0..db {
                    for l2 in 0..db {
                        let pb = &b.table[k2 * db + l2];
                        if pb.is_empty() {
                            continue;
                        }
                        let k = k1 * db + k2;
                        let l = l1 * db + l2;
                        let mut prod = Vec::with_capacity(pa.len() * pb.len());
                        for &(p1, z1) in pa {
                            for &(p2, z2) in pb {
                                prod.push((p1 * db + p2, z1 * z2));
                            }
                        }
                        table[k * n + l] = prod;
                    }
                }
            }
        }
        let unit = vec::kron(&self.unit, &b.unit);
        let mut inv = vec![Vec::new(); n];
        for j1 in 0..da {
            for j2 in 0..db {
                let mut col = Vec::new();
                for &(k1, z1) in &self.inv[j1] {
                    for &(k2, z2) in &b.inv[j2] {
                        col.push((k1 * db + k2, z1 * z2));
                    }
                }
                inv[j1 * db + j2] = col;
            }
        }
        Self { dim: n, table, unit, inv, blocks: None }
    }

    /// `n`-fold tensor power, `n ≥ 1`.
    pub fn tensor_power(&self, n: usize) -> Self {
        assert!(n >= 1, "tensor_power needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.tensor(self);
        }
        acc
    }

    /// `A ⊕ B`, basis of `A` followed by basis of `B`.
    pub fn direct_sum(&self, b: &Self) -> Self {
        let (da, db) = (self.dim, b.dim);
        let n = da + db;
        let mut table = vec![Vec::new(); n * n];
        for k in 0..da {
            for l in 0..da {
                table[k * n + l] = self.table[k * da + l].clone();
            }
        }
        for k in 0..db {
            for l in 0..db {
                table[(da + k) * n + da + l] = b.table[k * db + l].iter().map(|&(p, z)| (p + da, z)).collect();
            }
        }
        let mut unit = self.unit.clone();
        unit.extend_from_slice(&b.unit);
        let mut inv = self.inv.clone();
        inv.extend(b.inv.iter().map(|col| col.iter().map(|&(k, z)| (k + da, z)).collect::<Vec<_>>()));
        let blocks = match (&self.blocks, &b.blocks) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            _ => None,
        };
        Self { dim: n, table, unit, inv, blocks }
    }

    /// Folds `direct_sum` over a non-empty list.
    pub fn direct_sum_all(parts: &[Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or_else(|| argument("empty direct sum"))?;
        Ok(rest.iter().fold(first.clone(), |acc, p| acc.direct_sum(p)))
    }

    /// Element of a block algebra from its block matrices.
    pub fn element_from_blocks(&self, mats: &[Matrix<T>]) -> Result<Vec<C<T>>> {
        let blocks = self.blocks.as_ref().ok_or_else(|| argument("algebra has no block structure"))?;
        if blocks.len() != mats.len() {
            return Err(shape(format!("expected {} blocks, got {}", blocks.len(), mats.len())));
        }
        let mut out = Vec::with_capacity(self.dim);
        for (&m, x) in blocks.iter().zip(mats) {
            if x.shape() != (m, m) {
                return Err(shape(format!("block must be {m}x{m}")));
            }
            out.extend_from_slice(x.data());
        }
        Ok(out)
    }

    /// Block matrices of an element of a block algebra.
    pub fn element_to_blocks(&self, x: &[C<T>]) -> Result<Vec<Matrix<T>>> {
        let blocks = self.blocks.as_ref().ok_or_else(|| argument("algebra has no block structure"))?;
        let mut off = 0;
        let mut out = Vec::new();
        for &m in blocks {
            out.push(Matrix::from_vec(m, m, x[off..off + m * m].to_vec())?);
            off += m * m;
        }
        Ok(out)
    }
}
