use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cnum::{vec, Matrix, Tolerance};
use crate::error::{argument, precondition, shape, Result};
use crate::grouporacle::{FiniteGroup, Permutation};
use crate::qinc::MagicUnitaryRep;
use crate::scalar::{Real, C};
use crate::staralg::{orthonormalize, OrthoBasisData, StarAlgebra, StarHom, StateFunctional};

/// A finite quantum space `(M, φ)` together with its φ-orthonormal structure data.
#[derive(Clone, Debug)]
pub struct QuantumSpace<T: Real> {
    pub algebra: StarAlgebra<T>,
    pub phi: StateFunctional<T>,
    pub onb: OrthoBasisData<T>,
}

impl<T: Real> QuantumSpace<T> {
    pub fn new(algebra: StarAlgebra<T>, phi: StateFunctional<T>, tol: &Tolerance<T>) -> Result<Self> {
        let onb = orthonormalize(&algebra, &phi, tol)?;
        Ok(Self { algebra, phi, onb })
    }

    /// `ℂⁿ` with the uniform state.
    pub fn uniform_points(n: usize) -> Result<Self> {
        Self::new(StarAlgebra::commutative(n)?, StateFunctional::uniform(n), &Tolerance::default())
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && vec::max_diff(&self.phi.coeffs, &other.phi.coeffs) <= T::epsilon()
            && self.onb.change.max_diff(&other.onb.change) <= T::epsilon()
            && self.algebra.structure_tensor() == other.algebra.structure_tensor()
    }
}

/// Linear map `β: M → M ⊗ B` held by its coefficient matrix in the φ-orthonormal
/// basis: `β(e_j) = Σ_i e_i ⊗ b_ij`, with `b_ij` a coordinate vector of `B`.
#[derive(Clone, Debug)]
pub struct QuantumFamily<T: Real> {
    space: Arc<QuantumSpace<T>>,
    index: Arc<StarAlgebra<T>>,
    coeffs: Vec<Vec<C<T>>>,
}

impl<T: Real> QuantumFamily<T> {
    /// `coeffs[i][j]` is `b_ij` in the orthonormal basis of the source.
    pub fn new(space: Arc<QuantumSpace<T>>, index: Arc<StarAlgebra<T>>, coeffs: Vec<Vec<Vec<C<T>>>>) -> Result<Self> {
        let n = space.dim();
        if coeffs.len() != n || coeffs.iter().any(|r| r.len() != n) {
            return Err(shape(format!("coefficient matrix must be {n}x{n}")));
        }
        let db = index.dim();
        if coeffs.iter().flatten().any(|x| x.len() != db) {
            return Err(shape(format!("coefficients must be vectors of length {db}")));
        }
        Ok(Self { space, index, coeffs: coeffs.into_iter().flatten().collect() })
    }

    /// From coefficients `r_ij` in the raw basis `f` of the source, `β(f_j) = Σ_i f_i ⊗ r_ij`.
    pub fn from_raw(space: Arc<QuantumSpace<T>>, index: Arc<StarAlgebra<T>>, raw: Vec<Vec<Vec<C<T>>>>) -> Result<Self> {
        let n = space.dim();
        if raw.len() != n || raw.iter().any(|r| r.len() != n) {
            return Err(shape(format!("coefficient matrix must be {n}x{n}")));
        }
        let db = index.dim();
        if raw.iter().flatten().any(|x| x.len() != db) {
            return Err(shape(format!("coefficients must be vectors of length {db}")));
        }
        let coeffs = change_basis(&raw, &space.onb.to_onb, &space.onb.change, db);
        Self::new(space, index, coeffs)
    }

    /// Coefficients in the raw basis of the source.
    pub fn to_raw(&self) -> Vec<Vec<Vec<C<T>>>> {
        change_basis(&self.coeff_rows(), &self.space.onb.change, &self.space.onb.to_onb, self.index.dim())
    }

    /// `b_ij = δ_ij 𝟙`.
    pub fn trivial(space: Arc<QuantumSpace<T>>, index: Arc<StarAlgebra<T>>) -> Self {
        let n = space.dim();
        let unit = index.unit().to_vec();
        let zero = index.zero_element();
        let coeffs = (0..n * n).map(|ij| if ij / n == ij % n { unit.clone() } else { zero.clone() }).collect();
        Self { space, index, coeffs }
    }

    /// Pullback family of a single permutation of the points of a commutative source:
    /// raw coefficients `[σ(j) = i]` over `B = ℂ`.
    pub fn permutation(space: Arc<QuantumSpace<T>>, sigma: &Permutation) -> Result<Self> {
        let n = space.dim();
        if sigma.degree() != n {
            return Err(argument(format!("permutation of degree {} on a space of dimension {n}", sigma.degree())));
        }
        if space.algebra.blocks().is_none_or(|b| b.iter().any(|&m| m != 1)) {
            return Err(argument("permutation families need a commutative block source"));
        }
        let index = Arc::new(StarAlgebra::commutative(1)?);
        let raw = (0..n)
            .map(|i| (0..n).map(|j| vec![if sigma.apply(j) == i { C::one() } else { C::zero() }]).collect())
            .collect();
        Self::from_raw(space, index, raw)
    }

    /// Family on `ℂⁿ` induced by a magic unitary over `M_d`, raw coefficients `u_ij`.
    pub fn from_magic_unitary(space: Arc<QuantumSpace<T>>, u: &MagicUnitaryRep<T>, tol: &Tolerance<T>) -> Result<Self> {
        let report = u.validate();
        if !report.passes(tol) {
            return Err(precondition(format!("not a magic unitary: {report:?}")));
        }
        if space.dim() != u.n() {
            return Err(shape(format!("magic unitary of size {} on a space of dimension {}", u.n(), space.dim())));
        }
        let index = Arc::new(StarAlgebra::matrix_algebra(u.d())?);
        let n = u.n();
        let raw = (0..n).map(|i| (0..n).map(|j| u.entry(i, j).data().to_vec()).collect()).collect();
        Self::from_raw(space, index, raw)
    }

    /// Action of `C(G)` on the points of `ℂⁿ` for a permutation group `G`:
    /// raw coefficients `a_ij = Σ_{g(j) = i} δ_g`.
    pub fn group_action(space: Arc<QuantumSpace<T>>, g: &FiniteGroup) -> Result<Self> {
        let perms = g.permutations().ok_or_else(|| argument("group has no permutation realization"))?;
        let n = space.dim();
        if perms.iter().any(|p| p.degree() != n) {
            return Err(argument(format!("permutations do not act on {n} points")));
        }
        if space.algebra.blocks().is_none_or(|b| b.iter().any(|&m| m != 1)) {
            return Err(argument("classical actions need a commutative block source"));
        }
        let index = Arc::new(StarAlgebra::function_algebra(g));
        let mut raw = vec![vec![vec![C::zero(); g.order()]; n]; n];
        for (x, p) in perms.iter().enumerate() {
            for j in 0..n {
                raw[p.apply(j)][j][x] = C::one();
            }
        }
        Self::from_raw(space, index, raw)
    }

    /// Family indexed by `B_1 ⊕ ⋯ ⊕ B_r` with coefficients `b_ij = ⊕_k b^{(k)}_ij`.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| argument("empty direct sum"))?;
        if parts.iter().any(|p| !p.space.same_as(&first.space)) {
            return Err(argument("direct sum needs a common source"));
        }
        let algebras: Vec<StarAlgebra<T>> = parts.iter().map(|p| (*p.index).clone()).collect();
        let index = Arc::new(StarAlgebra::direct_sum_all(&algebras)?);
        let coeffs = (0..first.coeffs.len()).map(|ij| parts.iter().flat_map(|p| p.coeffs[ij].iter().copied()).collect()).collect();
        Ok(Self { space: first.space.clone(), index, coeffs })
    }

    pub fn n(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Arc<QuantumSpace<T>> {
        &self.space
    }

    pub fn index(&self) -> &Arc<StarAlgebra<T>> {
        &self.index
    }

    /// `b_ij` (0-based).
    pub fn coeff(&self, i: usize, j: usize) -> &[C<T>] {
        &self.coeffs[i * self.n() + j]
    }

    pub fn coeff_rows(&self) -> Vec<Vec<Vec<C<T>>>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.coeff(i, j).to_vec()).collect()).collect()
    }

    /// `β` as a matrix from orthonormal coordinates of `M` to coordinates of `M ⊗ B`
    /// (row index `i · dim B + r`).
    pub fn beta_matrix(&self) -> Matrix<T> {
        let (n, db) = (self.n(), self.index.dim());
        Matrix::from_fn(n * db, n, |row, j| self.coeff(row / db, j)[row % db])
    }

    /// `Ψ₁ ▵ Ψ₂ = (Ψ₁ ⊗ id) ∘ Ψ₂`, coefficients `Σ_k b_ik ⊗ c_kj` over `B ⊗ C`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.space, &other.space) && !self.space.same_as(&other.space) {
            return Err(argument("composed families must share the source space"));
        }
        let n = self.n();
        let dim = self.index.dim() * other.index.dim();
        let mut coeffs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = vec![C::zero(); dim];
                for k in 0..n {
                    vec::axpy(&mut acc, C::one(), &vec::kron(self.coeff(i, k), other.coeff(k, j)));
                }
                coeffs.push(acc);
            }
        }
        Ok(Self { space: self.space.clone(), index: Arc::new(self.index.tensor(&other.index)), coeffs })
    }

    /// `m`-fold composition `β ▵ ⋯ ▵ β` over `B^{⊗m}`.
    pub fn iterate(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(argument("iterate needs m >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `(id ⊗ γ) ∘ β` for a map `γ: B → C`.
    pub fn push_forward(&self, gamma: &StarHom<T>) -> Result<Self> {
        if gamma.source.dim() != self.index.dim() {
            return Err(shape("push-forward map does not start at the index algebra"));
        }
        Ok(Self {
            space: self.space.clone(),
            index: gamma.target.clone(),
            coeffs: self.coeffs.iter().map(|b| gamma.apply(b)).collect(),
        })
    }

    /// Same coefficients with a relabelled index algebra (for canonical reindexings).
    pub fn with_coefficients(&self, coeffs: Vec<Vec<C<T>>>) -> Result<Self> {
        if coeffs.len() != self.coeffs.len() || coeffs.iter().any(|c| c.len() != self.index.dim()) {
            return Err(shape("coefficient list does not match the family"));
        }
        Ok(Self { space: self.space.clone(), index: self.index.clone(), coeffs })
    }

    pub(crate) fn flat_coeffs(&self) -> &[Vec<C<T>>] {
        &self.coeffs
    }
}

/// `out_ij = Σ_{c,a} left_ic · r_ca · right_aj` applied blockwise to coefficient vectors.
fn change_basis<T: Real>(r: &[Vec<Vec<C<T>>>], left: &Matrix<T>, right: &Matrix<T>, db: usize) -> Vec<Vec<Vec<C<T>>>> {
    let n = r.len();
    // tmp_cj = Σ_a r_ca right_aj
    let mut tmp = vec![vec![vec![C::zero(); db]; n]; n];
    for c in 0..n {
        for j in 0..n {
            for a in 0..n {
                let z = right[(a, j)];
                if !z.is_zero() {
                    vec::axpy(&mut tmp[c][j], z, &r[c][a]);
                }
            }
        }
    }
    let mut out = vec![vec![vec![C::zero(); db]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for c in 0..n {
                let z = left[(i, c)];
                if !z.is_zero() {
                    vec::axpy(&mut out[i][j], z, &tmp[c][j]);
                }
            }
        }
    }
    out
}
