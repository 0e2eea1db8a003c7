use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cnum::{nullspace_floor, rank, vec, Matrix, Tolerance};
use crate::error::{precondition, shape, Result};
use crate::grouporacle::FiniteGroup;
use crate::scalar::{Real, C};
use crate::staralg::{check_star_hom, HomReport, StarAlgebra, StarHom, StateFunctional};

/// Linear functionals on a finite quantum group share the coordinate form of states.
pub type Functional<T> = StateFunctional<T>;

/// Finite-dimensional Hopf *-algebra.
///
/// `delta` is `N² × N` with column `p` holding `Δ(e_p)` in the Kronecker basis
/// `e_a ⊗ e_b ↦ a·N + b`.
#[derive(Clone, Debug)]
pub struct FiniteQuantumGroup<T: Real> {
    alg: Arc<StarAlgebra<T>>,
    delta: Matrix<T>,
    counit: Vec<C<T>>,
    antipode: Matrix<T>,
    haar: Functional<T>,
    delta_cols: Vec<Vec<(usize, C<T>)>>,
}

/// Residuals of the Hopf *-algebra axioms, see [`FiniteQuantumGroup::check`].
#[derive(Clone, Debug, PartialEq)]
pub struct FqgReport<T: Real> {
    pub delta_hom: HomReport<T>,
    pub coassociativity: T,
    pub counit: T,
    pub counit_hom: HomReport<T>,
    pub antipode: T,
    pub haar_invariance: T,
    pub haar_unit: T,
    pub haar_faithful: bool,
    /// Ranks of `a ⊗ b ↦ Δ(a)(𝟙 ⊗ b)` and `a ⊗ b ↦ (a ⊗ 𝟙)Δ(b)`.
    pub cancellation_ranks: (usize, usize),
    pub cancellation_target: usize,
}

impl<T: Real> FqgReport<T> {
    pub fn max_residual(&self) -> T {
        [
            self.delta_hom.max(),
            self.coassociativity,
            self.counit,
            self.counit_hom.max(),
            self.antipode,
            self.haar_invariance,
            self.haar_unit,
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }

    pub fn passes(&self, tol: &Tolerance<T>) -> bool {
        self.max_residual() <= tol.eps_eq
            && self.haar_faithful
            && self.cancellation_ranks.0 == self.cancellation_target
            && self.cancellation_ranks.1 == self.cancellation_target
    }
}

fn sparse_columns<T: Real>(m: &Matrix<T>) -> Vec<Vec<(usize, C<T>)>> {
    (0..m.cols()).map(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)])).collect()).collect()
}

impl<T: Real> FiniteQuantumGroup<T> {
    /// Assembles the data without checking the axioms; see [`Self::check`].
    pub fn new(alg: Arc<StarAlgebra<T>>, delta: Matrix<T>, counit: Vec<C<T>>, antipode: Matrix<T>, haar: Functional<T>) -> Result<Self> {
        let n = alg.dim();
        if delta.shape() != (n * n, n) {
            return Err(shape(format!("coproduct must be {}x{n}", n * n)));
        }
        if counit.len() != n || haar.coeffs.len() != n {
            return Err(shape(format!("counit and Haar state need {n} coefficients")));
        }
        if antipode.shape() != (n, n) {
            return Err(shape(format!("antipode must be {n}x{n}")));
        }
        let delta_cols = sparse_columns(&delta);
        Ok(Self { alg, delta, counit, antipode, haar, delta_cols })
    }

    /// Like [`Self::new`] but rejects data failing any axiom.
    pub fn new_checked(
        alg: Arc<StarAlgebra<T>>,
        delta: Matrix<T>,
        counit: Vec<C<T>>,
        antipode: Matrix<T>,
        haar: Functional<T>,
        tol: &Tolerance<T>,
    ) -> Result<Self> {
        let q = Self::new(alg, delta, counit, antipode, haar)?;
        let r = q.check(tol);
        if !r.passes(tol) {
            return Err(precondition(format!("not a finite quantum group: {r:?}")));
        }
        Ok(q)
    }

    /// `C(G)`: `Δδ_g = Σ_{ab=g} δ_a ⊗ δ_b`, `ε = ev_e`, `S` the pullback of inversion, `h` uniform.
    pub fn function_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let alg = Arc::new(StarAlgebra::function_algebra(g));
        let mut delta = Matrix::zeros(n * n, n);
        for a in 0..n {
            for b in 0..n {
                delta[(a * n + b, g.mul(a, b))] = C::one();
            }
        }
        let counit = vec::basis(n, g.identity());
        let mut antipode = Matrix::zeros(n, n);
        for x in 0..n {
            // (Sf)(x) = f(x⁻¹), so S δ_x = δ_{x⁻¹}
            antipode[(g.inv(x), x)] = C::one();
        }
        Self::new(alg, delta, counit, antipode, StateFunctional::uniform(n)).expect("consistent shapes")
    }

    /// `C*(Γ)` in the basis of group elements `λ_g`, all grouplike.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n * n).map(|kl| vec![(g.mul(kl / n, kl % n), C::one())]).collect();
        let inv = (0..n).map(|j| vec![(g.inv(j), C::one())]).collect();
        let alg = Arc::new(StarAlgebra::from_parts(n, table, vec::basis(n, g.identity()), inv));
        let mut delta = Matrix::zeros(n * n, n);
        let mut antipode = Matrix::zeros(n, n);
        for x in 0..n {
            delta[(x * n + x, x)] = C::one();
            antipode[(g.inv(x), x)] = C::one();
        }
        let counit = vec![C::one(); n];
        let haar = StateFunctional::new(vec::basis(n, g.identity()));
        Self::new(alg, delta, counit, antipode, haar).expect("consistent shapes")
    }

    pub fn alg(&self) -> &Arc<StarAlgebra<T>> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn delta(&self) -> &Matrix<T> {
        &self.delta
    }

    pub fn counit(&self) -> &[C<T>] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix<T> {
        &self.antipode
    }

    pub fn haar(&self) -> &Functional<T> {
        &self.haar
    }

    pub fn counit_functional(&self) -> Functional<T> {
        StateFunctional::new(self.counit.clone())
    }

    pub(crate) fn delta_column(&self, p: usize) -> &[(usize, C<T>)] {
        &self.delta_cols[p]
    }

    /// `Δ(x)` in coordinates of `A ⊗ A`.
    pub fn coproduct(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.delta.apply(x)
    }

    /// The coproduct as a *-homomorphism `A → A ⊗ A`.
    pub fn delta_hom(&self) -> StarHom<T> {
        let aa = Arc::new(self.alg.tensor(&self.alg));
        StarHom::new(self.alg.clone(), aa, self.delta.clone()).expect("shape fixed at construction")
    }

    /// Applies `Δ` to tensor factor `pos` of a vector in `A^{⊗arity}`.
    pub fn apply_delta_at(&self, v: &[C<T>], arity: usize, pos: usize) -> Vec<C<T>> {
        let n = self.dim();
        assert!(pos < arity && v.len() == n.pow(arity as u32), "apply_delta_at: bad arity");
        let post = n.pow((arity - pos - 1) as u32);
        let mut out = vec![C::zero(); v.len() * n];
        for (idx, &z) in v.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            let (pre, rest) = (idx / (n * post), idx % (n * post));
            let (a, r) = (rest / post, rest % post);
            for &(cd, w) in &self.delta_cols[a] {
                let o = (pre * n * n + cd) * post + r;
                out[o] = out[o] + z * w;
            }
        }
        out
    }

    /// `Δ^{(m)} : A → A^{⊗m}`, nested on the left; `m = 1` is the identity.
    pub fn iterated_coproduct(&self, m: usize) -> Result<Matrix<T>> {
        if m == 0 {
            return Err(crate::error::argument("iterated coproduct needs m >= 1"));
        }
        let n = self.dim();
        let cols: Vec<Vec<C<T>>> = (0..n)
            .map(|p| (1..m).fold(vec::basis(n, p), |v, arity| self.apply_delta_at(&v, arity, 0)))
            .collect();
        Ok(Matrix::from_columns(n.pow(m as u32), &cols))
    }

    /// Residuals of every axiom, plus ranks of the cancellation maps.
    pub fn check(&self, tol: &Tolerance<T>) -> FqgReport<T> {
        let n = self.dim();
        let a = &self.alg;
        let delta_hom = check_star_hom(&self.delta_hom());
        let mut coassociativity = T::zero();
        let mut counit = T::zero();
        let mut antipode = T::zero();
        let mut haar_invariance = T::zero();
        let antipode_cols: Vec<Vec<C<T>>> = (0..n).map(|k| self.antipode.column(k)).collect();
        for p in 0..n {
            let d = self.delta.column(p);
            let left = self.apply_delta_at(&d, 2, 0);
            let right = self.apply_delta_at(&d, 2, 1);
            coassociativity = coassociativity.max(vec::max_diff(&left, &right));
            // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
            let mut l = vec![C::zero(); n];
            let mut r = vec![C::zero(); n];
            // m(S ⊗ id)Δ = ε(·)𝟙 = m(id ⊗ S)Δ
            let mut sl = vec![C::zero(); n];
            let mut sr = vec![C::zero(); n];
            // (id ⊗ h)Δ = h(·)𝟙 = (h ⊗ id)Δ
            let mut hl = vec![C::zero(); n];
            let mut hr = vec![C::zero(); n];
            for &(ab, z) in &self.delta_cols[p] {
                let (x, y) = (ab / n, ab % n);
                l[y] = l[y] + z * self.counit[x];
                r[x] = r[x] + z * self.counit[y];
                vec::axpy(&mut sl, z, &a.mul(&antipode_cols[x], &a.basis_vector(y)));
                vec::axpy(&mut sr, z, &a.mul(&a.basis_vector(x), &antipode_cols[y]));
                hl[x] = hl[x] + z * self.haar.coeffs[y];
                hr[y] = hr[y] + z * self.haar.coeffs[x];
            }
            let e = vec::basis::<T>(n, p);
            counit = counit.max(vec::max_diff(&l, &e)).max(vec::max_diff(&r, &e));
            let eps_unit = vec::scale(a.unit(), self.counit[p]);
            antipode = antipode.max(vec::max_diff(&sl, &eps_unit)).max(vec::max_diff(&sr, &eps_unit));
            let h_unit = vec::scale(a.unit(), self.haar.coeffs[p]);
            haar_invariance = haar_invariance.max(vec::max_diff(&hl, &h_unit)).max(vec::max_diff(&hr, &h_unit));
        }
        let scalars = Arc::new(StarAlgebra::commutative(1).expect("dim 1"));
        let counit_hom = check_star_hom(&StarHom::new(a.clone(), scalars, Matrix::row_vector(&self.counit)).expect("row"));
        let state = crate::staralg::check_state(a, &self.haar, tol).expect("shape fixed at construction");
        let (c1, c2) = self.cancellation_matrices();
        FqgReport {
            delta_hom,
            coassociativity,
            counit,
            counit_hom,
            antipode,
            haar_invariance,
            haar_unit: state.unit_residual,
            haar_faithful: state.faithful,
            cancellation_ranks: (rank(&c1, tol), rank(&c2, tol)),
            cancellation_target: n * n,
        }
    }

    /// Matrices of `a ⊗ b ↦ Δ(a)(𝟙 ⊗ b)` and `a ⊗ b ↦ (a ⊗ 𝟙)Δ(b)` on `A ⊗ A`.
    pub fn cancellation_matrices(&self) -> (Matrix<T>, Matrix<T>) {
        let n = self.dim();
        let aa = self.alg.tensor(&self.alg);
        let mut c1 = Matrix::zeros(n * n, n * n);
        let mut c2 = Matrix::zeros(n * n, n * n);
        for x in 0..n {
            let dx = self.delta.column(x);
            for y in 0..n {
                let one_b = vec::kron(self.alg.unit(), &self.alg.basis_vector(y));
                c1.set_column(x * n + y, &aa.mul(&dx, &one_b));
                let a_one = vec::kron(&self.alg.basis_vector(y), self.alg.unit());
                c2.set_column(y * n + x, &aa.mul(&a_one, &dx));
            }
        }
        (c1, c2)
    }

    /// Dual quantum group on `A*` in the dual basis: convolution product,
    /// coproduct the transpose of multiplication, unit `ε`, counit evaluation at `𝟙`,
    /// `f* = conj ∘ f ∘ * ∘ S`, antipode `f ↦ f ∘ S`, and its own Haar state.
    pub fn dual(&self, tol: &Tolerance<T>) -> Result<Self> {
        let n = self.dim();
        let a = &self.alg;
        let mut mult = vec![vec![vec![C::zero(); n]; n]; n];
        for p in 0..n {
            for &(kl, z) in &self.delta_cols[p] {
                mult[p][kl / n][kl % n] = z;
            }
        }
        let mut inv = Matrix::zeros(n, n);
        for q in 0..n {
            let s = a.star(&self.antipode.column(q));
            for p in 0..n {
                inv[(q, p)] = s[p].conj();
            }
        }
        let alg = Arc::new(StarAlgebra::from_structure(&mult, self.counit.clone(), &inv, tol)?);
        let mut delta = Matrix::zeros(n * n, n);
        for k in 0..n {
            for l in 0..n {
                for &(p, z) in a.product_of_basis(k, l) {
                    delta[(k * n + l, p)] = z;
                }
            }
        }
        let counit = a.unit().to_vec();
        let antipode = self.antipode.transpose();
        let provisional = Self::new(alg, delta, counit, antipode, StateFunctional::new(vec![C::zero(); n]))?;
        let haar = provisional.solve_haar(tol)?;
        Ok(Self { haar, ..provisional })
    }

    /// The bi-invariant functional normalized at `𝟙`, from the invariance equations.
    pub fn solve_haar(&self, tol: &Tolerance<T>) -> Result<Functional<T>> {
        let n = self.dim();
        let unit = self.alg.unit();
        // rows: (id ⊗ ψ)Δ(e_p) − ψ(e_p)𝟙 and (ψ ⊗ id)Δ(e_p) − ψ(e_p)𝟙, coordinate a
        let mut sys = Matrix::zeros(2 * n * n, n);
        for p in 0..n {
            for &(ab, z) in &self.delta_cols[p] {
                let (x, y) = (ab / n, ab % n);
                sys[(p * n + x, y)] = sys[(p * n + x, y)] + z;
                sys[(n * n + p * n + y, x)] = sys[(n * n + p * n + y, x)] + z;
            }
            for x in 0..n {
                sys[(p * n + x, p)] = sys[(p * n + x, p)] - unit[x];
                sys[(n * n + p * n + x, p)] = sys[(n * n + p * n + x, p)] - unit[x];
            }
        }
        let ker = nullspace_floor(&sys, tol);
        if ker.dim() != 1 {
            return Err(precondition(format!("invariant functionals form a space of dimension {}, expected 1", ker.dim())));
        }
        let psi = ker.basis().column(0);
        let norm = vec::dot(&unit.iter().map(|z| z.conj()).collect::<Vec<_>>(), &psi);
        if norm.norm() <= tol.eps_rank {
            return Err(precondition("invariant functional vanishes at the unit"));
        }
        Ok(StateFunctional::new(vec::scale(&psi, norm.inv())))
    }

    /// Rebuilds the Haar state from the invariance equations (for data loaded without one).
    pub fn with_solved_haar(self, tol: &Tolerance<T>) -> Result<Self> {
        let haar = self.solve_haar(tol)?;
        Ok(Self { haar, ..self })
    }
}
