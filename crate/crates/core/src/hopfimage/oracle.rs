//! Group-derived inputs and the way back from a commutative quotient to a group table.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::cnum::{hermitian_eigen, inverse, vec, Matrix, Tolerance};
use crate::error::{argument, precondition, Error, Result};
use crate::fqg::FiniteQuantumGroup;
use crate::grouporacle::{FiniteGroup, Subgroup};
use crate::random::rng;
use crate::scalar::{Real, C};
use crate::staralg::{StarAlgebra, StarHom};

use super::generated::SubgroupMap;

/// `H` as a group on its own, element `k` being `h.elements()[k]`.
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup) -> Result<FiniteGroup> {
    let els = h.elements();
    let idx = |x: usize| els.binary_search(&x).map_err(|_| Error::Internal("subgroup not closed".into()));
    let cayley = els.iter().map(|&a| els.iter().map(|&b| idx(g.mul(a, b))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_cayley(cayley)
}

/// Restriction `C(G) → C(H)` together with `C(H)`.
pub fn restriction<T: Real>(q: &FiniteQuantumGroup<T>, g: &FiniteGroup, h: &Subgroup) -> Result<SubgroupMap<T>> {
    if q.dim() != g.order() {
        return Err(argument("quantum group is not C(G) for this group"));
    }
    let hg = subgroup_as_group(g, h)?;
    let target = FiniteQuantumGroup::function_algebra(&hg);
    let mut m = Matrix::zeros(h.order(), g.order());
    for (k, &x) in h.elements().iter().enumerate() {
        m[(k, x)] = C::one();
    }
    let hom = StarHom::new(q.alg().clone(), target.alg().clone(), m)?;
    Ok(SubgroupMap { hom, group: target })
}

/// `C*(Γ) → C*(Γ/N)`, `λ_x ↦ λ_{xN}`, together with `C*(Γ/N)`.
pub fn group_algebra_quotient<T: Real>(q: &FiniteQuantumGroup<T>, g: &FiniteGroup, normal: &Subgroup) -> Result<SubgroupMap<T>> {
    if q.dim() != g.order() {
        return Err(argument("quantum group is not C*(Γ) for this group"));
    }
    let (quot, coset) = g.quotient(normal)?;
    let target = FiniteQuantumGroup::group_algebra(&quot);
    let mut m = Matrix::zeros(quot.order(), g.order());
    for (x, &c) in coset.iter().enumerate() {
        m[(c, x)] = C::one();
    }
    let hom = StarHom::new(q.alg().clone(), target.alg().clone(), m)?;
    Ok(SubgroupMap { hom, group: target })
}

/// Evaluation at the point `x` of `C(G)`, into `ℂ`.
pub fn evaluation<T: Real>(alg: &Arc<StarAlgebra<T>>, x: usize) -> Result<StarHom<T>> {
    let scalars = Arc::new(StarAlgebra::commutative(1)?);
    StarHom::new(alg.clone(), scalars, Matrix::row_vector(&vec::basis(alg.dim(), x)))
}

/// The one-dimensional map `λ_x ↦ values[x]` on a group algebra.
pub fn character<T: Real>(alg: &Arc<StarAlgebra<T>>, values: &[C<T>]) -> Result<StarHom<T>> {
    let scalars = Arc::new(StarAlgebra::commutative(1)?);
    StarHom::new(alg.clone(), scalars, Matrix::row_vector(values))
}

/// Stacks maps with a common source into the direct sum of their targets.
pub fn direct_sum_hom<T: Real>(maps: &[&StarHom<T>]) -> Result<StarHom<T>> {
    let first = maps.first().ok_or_else(|| argument("empty list of maps"))?;
    let targets: Vec<StarAlgebra<T>> = maps.iter().map(|m| (*m.target).clone()).collect();
    let matrices: Vec<Matrix<T>> = maps.iter().map(|m| m.matrix.clone()).collect();
    let stacked = Matrix::vstack_all(first.source.dim(), &matrices)?;
    StarHom::new(first.source.clone(), Arc::new(StarAlgebra::direct_sum_all(&targets)?), stacked)
}

/// Minimal projections of a commutative finite quantum group `C(K)` and the group `K`
/// read off from `Δ(p_g) = Σ_{ab=g} p_a ⊗ p_b`.
pub fn classical_points<T: Real>(q: &FiniteQuantumGroup<T>, tol: &Tolerance<T>) -> Result<(FiniteGroup, Vec<Vec<C<T>>>)> {
    let alg = q.alg();
    let n = q.dim();
    if !alg.is_commutative(tol) {
        return Err(precondition("algebra is not commutative"));
    }
    let projections = minimal_projections(q, tol)?;
    let p = Matrix::from_columns(n, &projections);
    let pinv = inverse(&p, tol.eps_rank).ok_or_else(|| Error::Internal("minimal projections are dependent".into()))?;
    let pit = pinv.transpose();
    let mut cayley = vec![vec![usize::MAX; n]; n];
    let half = T::lit(0.5);
    for (gi, pg) in projections.iter().enumerate() {
        let dm = Matrix::from_vec(n, n, q.coproduct(pg))?;
        let coords = &(&pinv * &dm) * &pit;
        for a in 0..n {
            for b in 0..n {
                let z = coords[(a, b)];
                if (z - C::one()).norm() <= half {
                    if cayley[a][b] != usize::MAX {
                        return Err(precondition("coproduct is not induced by a group law"));
                    }
                    cayley[a][b] = gi;
                } else if z.norm() > half {
                    return Err(precondition("coproduct is not induced by a group law"));
                }
            }
        }
    }
    if cayley.iter().flatten().any(|&x| x == usize::MAX) {
        return Err(precondition("coproduct is not induced by a group law"));
    }
    Ok((FiniteGroup::from_cayley(cayley)?, projections))
}

fn minimal_projections<T: Real>(q: &FiniteQuantumGroup<T>, tol: &Tolerance<T>) -> Result<Vec<Vec<C<T>>>> {
    let alg = q.alg();
    let n = q.dim();
    let gram = q.haar().gram(alg);
    let (gv, gu) = hermitian_eigen(&gram);
    if gv.iter().any(|&x| x <= T::zero()) {
        return Err(precondition("Haar state is not faithful"));
    }
    let root = |pw: T| &(&gu * &Matrix::diag(&gv.iter().map(|&x| C::new(x.powf(pw), T::zero())).collect::<Vec<_>>())) * &gu.adjoint();
    let (half, neg_half) = (root(T::lit(0.5)), root(T::lit(-0.5)));
    for seed in 0..8u64 {
        let mut r = rng(0x5eed + seed);
        let mut x = vec![C::zero(); n];
        for k in 0..n {
            let e = alg.basis_vector(k);
            let sa = vec::add(&e, &alg.star(&e));
            vec::axpy(&mut x, C::new(T::lit(r.gen_range(-1.0..1.0)), T::zero()), &sa);
        }
        // multiplication by a self-adjoint element is Hermitian in the GNS inner product
        let lx = &(&half * &alg.left_mult_matrix(&x)) * &neg_half;
        let herm = &(&lx + &lx.adjoint()).scale_real(T::lit(0.5));
        let (vals, vecs) = hermitian_eigen(herm);
        let gap = vals.windows(2).map(|w| (w[1] - w[0]).abs()).fold(T::infinity(), T::min);
        if n > 1 && gap <= T::lit(1e-6) {
            continue;
        }
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let v = neg_half.apply(&vecs.column(k));
            let v2 = alg.mul(&v, &v);
            let i = (0..n).max_by(|&a, &b| v[a].norm().partial_cmp(&v[b].norm()).expect("finite")).expect("n >= 1");
            let lambda = v2[i] / v[i];
            let p = vec::scale(&v, lambda.inv());
            if vec::max_diff(&alg.mul(&p, &p), &p) > tol.eps_eq.sqrt() {
                return Err(precondition("could not isolate minimal projections"));
            }
            out.push(p);
        }
        return Ok(out);
    }
    Err(precondition("no separating element found"))
}

/// The group of grouplike elements of a cocommutative finite quantum group, via its dual.
pub fn grouplike_group<T: Real>(q: &FiniteQuantumGroup<T>, tol: &Tolerance<T>) -> Result<FiniteGroup> {
    Ok(classical_points(&q.dual(tol)?, tol)?.0)
}
