use std::sync::Arc;

use num_traits::{One, Zero};

use super::image::{hopf_image, HopfImageResult, Method};
use super::oracle::direct_sum_hom;
use crate::cnum::{vec, Matrix, Tolerance};
use crate::error::{argument, precondition, shape, Error, Result};
use crate::fqg::{cesaro_mean, convolve, CesaroMode, CesaroResult, FiniteQuantumGroup, Functional};
use crate::qfam::{check_family, QuantumFamily};
use crate::scalar::{Real, C};
use crate::staralg::{check_star_hom, check_state, StarHom, StateFunctional};

/// A quantum subgroup given by a surjective morphism `π: A → C(H)`.
#[derive(Clone, Debug)]
pub struct SubgroupMap<T: Real> {
    pub hom: StarHom<T>,
    pub group: FiniteQuantumGroup<T>,
}

impl<T: Real> SubgroupMap<T> {
    /// `‖(π ⊗ π)Δ − Δ_H π‖_max`.
    pub fn intertwining_residual(&self, q: &FiniteQuantumGroup<T>) -> T {
        let n = q.dim();
        let pit = self.hom.matrix.transpose();
        let mut r = T::zero();
        for p in 0..n {
            let dm = Matrix::from_vec(n, n, q.coproduct(&vec::basis(n, p))).expect("n x n");
            let lhs = (&(&self.hom.matrix * &dm) * &pit).into_data();
            let rhs = self.group.coproduct(&self.hom.matrix.column(p));
            r = r.max(vec::max_diff(&lhs, &rhs));
        }
        r
    }

    fn validate(&self, q: &FiniteQuantumGroup<T>, tol: &Tolerance<T>) -> Result<()> {
        if self.hom.source.dim() != q.dim() || self.hom.target.dim() != self.group.dim() {
            return Err(shape("subgroup map does not connect the quantum group to its subgroup"));
        }
        let hr = check_star_hom(&self.hom);
        if !hr.passes(tol) {
            return Err(precondition(format!("subgroup map is not a *-homomorphism: {hr:?}")));
        }
        let r = self.intertwining_residual(q);
        if r > tol.eps_eq {
            return Err(precondition(format!("subgroup map does not intertwine the coproducts (residual {:e})", r.to_f64().unwrap_or(f64::NAN))));
        }
        if !self.hom.is_surjective(tol) {
            return Err(precondition("subgroup map is not surjective"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedSubgroup<T: Real> {
    pub image: HopfImageResult<T>,
    /// `θ_i = p_i ∘ θ: S → C(H_i)`.
    pub theta_parts: Vec<StarHom<T>>,
    pub theta_surjective: Vec<bool>,
    /// Intertwining residuals of the `θ_i`.
    pub theta_morphism: Vec<T>,
}

/// The quantum subgroup generated by the `H_i`: Hopf image of `⊕ π_i`.
pub fn generated_subgroup<T: Real>(
    q: &FiniteQuantumGroup<T>,
    maps: &[SubgroupMap<T>],
    method: Method,
    tol: &Tolerance<T>,
) -> Result<GeneratedSubgroup<T>> {
    if maps.is_empty() {
        return Err(argument("need at least one subgroup"));
    }
    for m in maps {
        m.validate(q, tol)?;
    }
    let homs: Vec<&StarHom<T>> = maps.iter().map(|m| &m.hom).collect();
    let lambda = direct_sum_hom(&homs)?;
    let image = hopf_image(q, &lambda, method, tol)?;
    let mut theta_parts = Vec::new();
    let mut theta_surjective = Vec::new();
    let mut theta_morphism = Vec::new();
    let mut off = 0;
    for m in maps {
        let h = m.group.dim();
        let rows = Matrix::from_fn(h, image.dim(), |r, c| image.theta.matrix[(off + r, c)]);
        off += h;
        let part = StarHom::new(image.quotient.alg().clone(), m.group.alg().clone(), rows)?;
        let piece = SubgroupMap { hom: part.clone(), group: m.group.clone() };
        theta_morphism.push(piece.intertwining_residual(&image.quotient));
        theta_surjective.push(part.is_surjective(tol));
        theta_parts.push(part);
    }
    if theta_surjective.iter().any(|s| !s) {
        return Err(Error::Internal("some θ_i is not surjective".into()));
    }
    Ok(GeneratedSubgroup { image, theta_parts, theta_surjective, theta_morphism })
}

#[derive(Clone, Debug)]
pub struct InnerFaithfulReport<T: Real> {
    /// `ω̃ = h`, within ten times the equality tolerance.
    pub inner_faithful: bool,
    pub cesaro: CesaroResult<T>,
    /// `‖ω̃ − h‖_max`
    pub distance_to_haar: T,
    pub hopf_image_dim: usize,
    pub dim: usize,
    /// Whether the Cesàro verdict matches `dim S = dim A`.
    pub agrees: bool,
}

/// Inner faithfulness of `Λ` through the Cesàro limit of `ω = φ_B ∘ Λ`.
pub fn inner_faithful<T: Real>(
    q: &FiniteQuantumGroup<T>,
    l: &StarHom<T>,
    phi_b: &StateFunctional<T>,
    mode: CesaroMode,
    tol: &Tolerance<T>,
    max_iter: usize,
) -> Result<InnerFaithfulReport<T>> {
    let sr = check_state(&l.target, phi_b, tol)?;
    if !sr.faithful || !sr.positive || !sr.unital {
        return Err(precondition(format!("state on the target is not a faithful state: {sr:?}")));
    }
    let omega = Functional::new((0..q.dim()).map(|p| phi_b.eval(&l.matrix.column(p))).collect());
    let cesaro = cesaro_mean(q, &omega, mode, tol, max_iter)?;
    let distance_to_haar = vec::max_diff(&cesaro.mean.coeffs, &q.haar().coeffs);
    let verdict = distance_to_haar <= T::lit(10.0) * tol.eps_eq;
    let image = hopf_image(q, l, Method::Coideal, tol)?;
    let agrees = verdict == (image.dim() == q.dim());
    Ok(InnerFaithfulReport { inner_faithful: verdict, cesaro, distance_to_haar, hopf_image_dim: image.dim(), dim: q.dim(), agrees })
}

/// Dimension of the smallest unital *-subalgebra of `A*` containing every `π̂_i(C(H_i)*)`
/// and invariant under both slice maps of the dual coproduct.
pub fn dual_generated_dim<T: Real>(q: &FiniteQuantumGroup<T>, maps: &[SubgroupMap<T>], tol: &Tolerance<T>) -> Result<usize> {
    let n = q.dim();
    let alg = q.alg();
    for m in maps {
        m.validate(q, tol)?;
    }
    // f*(x) = conj f(S(x)*)
    let star_cols: Vec<Vec<C<T>>> = (0..n).map(|k| alg.star(&q.antipode().column(k))).collect();
    let dual_star = |f: &[C<T>]| -> Vec<C<T>> { (0..n).map(|k| vec::dot(&star_cols[k], f)).collect() };
    let left_shift = |f: &[C<T>], a: usize| -> Vec<C<T>> {
        (0..n).map(|k| alg.product_of_basis(a, k).iter().fold(C::zero(), |acc, &(p, z)| acc + z * f[p])).collect()
    };
    let right_shift = |f: &[C<T>], b: usize| -> Vec<C<T>> {
        (0..n).map(|k| alg.product_of_basis(k, b).iter().fold(C::zero(), |acc, &(p, z)| acc + z * f[p])).collect()
    };
    let mut basis: Vec<Vec<C<T>>> = Vec::new();
    let mut queue: Vec<Vec<C<T>>> = vec![q.counit().to_vec()];
    for m in maps {
        for r in 0..m.hom.matrix.rows() {
            queue.push(m.hom.matrix.row(r));
        }
    }
    while let Some(v) = queue.pop() {
        let Some(w) = absorb(&mut basis, &v, tol) else { continue };
        let wf = Functional::new(w.clone());
        for b in basis.clone() {
            let bf = Functional::new(b);
            queue.push(convolve(q, &wf, &bf).coeffs);
            queue.push(convolve(q, &bf, &wf).coeffs);
        }
        queue.push(dual_star(&w));
        for a in 0..n {
            queue.push(left_shift(&w, a));
            queue.push(right_shift(&w, a));
        }
    }
    Ok(basis.len())
}

/// Gram–Schmidt step; returns the new normalized direction if `v` leaves the span.
fn absorb<T: Real>(basis: &mut Vec<Vec<C<T>>>, v: &[C<T>], tol: &Tolerance<T>) -> Option<Vec<C<T>>> {
    let scale = vec::norm(v);
    if scale == T::zero() {
        return None;
    }
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis.iter() {
            let p = vec::dot(b, &w);
            vec::axpy(&mut w, -p, b);
        }
    }
    let r = vec::norm(&w);
    if r <= tol.eps_rank * scale {
        return None;
    }
    let w = vec::scale(&w, C::new(T::one() / r, T::zero()));
    basis.push(w.clone());
    Some(w)
}

#[derive(Clone, Debug)]
pub struct FamilyImage<T: Real> {
    pub image: HopfImageResult<T>,
    /// `Λ` with `β = (id ⊗ Λ) ∘ α` for the host action `α`.
    pub lambda: StarHom<T>,
    /// `β̄ = (id ⊗ π) ∘ α`.
    pub beta_bar: QuantumFamily<T>,
    /// `‖β − (id ⊗ θ) ∘ β̄‖_max`
    pub factorization: T,
    /// `‖Σ_k a_ik ⊗ a_kj − Δ(a_ij)‖_max` for the host action.
    pub coaction: T,
}

/// `‖Σ_k a_ik ⊗ a_kj − Δ(a_ij)‖_max`.
pub fn coaction_residual<T: Real>(host: &FiniteQuantumGroup<T>, action: &QuantumFamily<T>) -> T {
    let n = action.n();
    let mut r = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut lhs = vec![C::zero(); host.dim() * host.dim()];
            for k in 0..n {
                vec::axpy(&mut lhs, C::one(), &vec::kron(action.coeff(i, k), action.coeff(k, j)));
            }
            r = r.max(vec::max_diff(&lhs, &host.coproduct(action.coeff(i, j))));
        }
    }
    r
}

/// The quantum group generated by `f`, inside a host acting on the same space.
pub fn generated_from_family<T: Real>(
    f: &QuantumFamily<T>,
    host: &FiniteQuantumGroup<T>,
    action: &QuantumFamily<T>,
    method: Method,
    tol: &Tolerance<T>,
) -> Result<FamilyImage<T>> {
    let n = f.n();
    if action.n() != n || action.index().dim() != host.dim() {
        return Err(shape("action and family must live on the same space, the action over the host"));
    }
    if vec::max_diff(&f.space().phi.coeffs, &action.space().phi.coeffs) > tol.eps_eq {
        return Err(argument("family and action use different reference states"));
    }
    let report = check_family(action, tol);
    if !report.passes(tol) {
        return Err(precondition(format!("host action fails the family checks: {report:?}")));
    }
    let coaction = coaction_residual(host, action);
    if coaction > tol.eps_eq {
        return Err(precondition(format!("host action is not a coaction (residual {:e})", coaction.to_f64().unwrap_or(f64::NAN))));
    }
    let lambda = match_coefficients(f, host, action, tol)?;
    let image = hopf_image(host, &lambda, method, tol)?;
    let beta_bar = action.push_forward(&image.pi)?;
    let rebuilt = beta_bar.push_forward(&image.theta)?;
    let mut factorization = T::zero();
    for i in 0..n {
        for j in 0..n {
            factorization = factorization.max(vec::max_diff(rebuilt.coeff(i, j), f.coeff(i, j)));
        }
    }
    Ok(FamilyImage { image, lambda, beta_bar, factorization, coaction })
}

/// A word in the host together with its image.
type WordImage<T> = (Vec<C<T>>, Vec<C<T>>);

/// Solves `Λ(a_ij) = b_ij` multiplicatively: words in the `a_ij, a_ij*` are matched with
/// the same words in the `b_ij, b_ij*`, and inconsistencies reject the factorization.
fn match_coefficients<T: Real>(
    f: &QuantumFamily<T>,
    host: &FiniteQuantumGroup<T>,
    action: &QuantumFamily<T>,
    tol: &Tolerance<T>,
) -> Result<StarHom<T>> {
    let (a_alg, b_alg) = (host.alg(), f.index());
    let n = f.n();
    let mut letters = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (action.coeff(i, j).to_vec(), f.coeff(i, j).to_vec());
            letters.push((a_alg.star(&a), b_alg.star(&b)));
            letters.push((a, b));
        }
    }
    let mut qs: Vec<Vec<C<T>>> = Vec::new();
    let mut zs: Vec<Vec<C<T>>> = Vec::new();
    let mut worst = T::zero();
    let mut frontier = vec![(a_alg.unit().to_vec(), b_alg.unit().to_vec())];
    let mut first = true;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let candidates: Vec<WordImage<T>> = if first {
            first = false;
            frontier.clone()
        } else {
            frontier.iter().flat_map(|(x, y)| letters.iter().map(move |(a, b)| (a_alg.mul(x, a), b_alg.mul(y, b)))).collect()
        };
        for (x, y) in candidates {
            let s = vec::norm(&x);
            if s == T::zero() {
                worst = worst.max(vec::norm_max(&y));
                continue;
            }
            let inv = C::new(T::one() / s, T::zero());
            let (mut x, mut y) = (vec::scale(&x, inv), vec::scale(&y, inv));
            for _ in 0..2 {
                for (qk, zk) in qs.iter().zip(&zs) {
                    let c = vec::dot(qk, &x);
                    vec::axpy(&mut x, -c, qk);
                    vec::axpy(&mut y, -c, zk);
                }
            }
            let r = vec::norm(&x);
            if r <= tol.eps_rank {
                // x already in the span: its image must vanish on the residual
                worst = worst.max(vec::norm_max(&y));
                continue;
            }
            let inv = C::new(T::one() / r, T::zero());
            let (x, y) = (vec::scale(&x, inv), vec::scale(&y, inv));
            qs.push(x.clone());
            zs.push(y.clone());
            next.push((x, y));
        }
        frontier = next;
    }
    if qs.len() != host.dim() {
        return Err(precondition(format!("action coefficients generate a subalgebra of dimension {} < {}", qs.len(), host.dim())));
    }
    if worst > T::lit(10.0) * tol.eps_eq {
        return Err(argument(format!("family does not factor through the host action (inconsistency {:e})", worst.to_f64().unwrap_or(f64::NAN))));
    }
    // Λ = Z Qᴴ
    let m = b_alg.dim();
    let a = host.dim();
    let qm = Matrix::from_columns(a, &qs);
    let zm = Matrix::from_columns(m, &zs);
    let lambda = StarHom::new(a_alg.clone(), Arc::clone(b_alg), &zm * &qm.adjoint())?;
    let hr = check_star_hom(&lambda);
    if hr.max() > T::lit(10.0) * tol.eps_eq {
        return Err(argument(format!("matched map is not a *-homomorphism: {hr:?}")));
    }
    Ok(lambda)
}
