use std::sync::Arc;

use super::completion::complete;
use super::rep::{IncreasingSequenceRep, MagicUnitaryRep};
use crate::cnum::{vec, Matrix, Tolerance};
use crate::error::Result;
use crate::qfam::{QuantumFamily, QuantumSpace};
use crate::scalar::{Real, C};
use crate::staralg::StarAlgebra;

/// Caps for the span closure in [`coefficient_growth`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthCaps {
    /// Longest product of generators considered.
    pub degree: usize,
    /// Stop once the span exceeds this dimension.
    pub dim: usize,
}

impl Default for GrowthCaps {
    fn default() -> Self {
        Self { degree: 8, dim: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// `dims[m - 1]` is the dimension reached for the `m`-fold composite.
    pub dims: Vec<usize>,
    /// Whether the closure for that step hit a cap before stabilizing.
    pub truncated: Vec<bool>,
    pub caps: GrowthCaps,
}

impl GrowthReport {
    pub fn is_monotone(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] <= w[1])
    }
}

/// The family `κ = (id ⊗ γ) ∘ β` on `ℂⁿ` with index algebra the block algebra of the representation.
pub fn completed_family<T: Real>(rep: &IncreasingSequenceRep<T>, tol: &Tolerance<T>) -> Result<QuantumFamily<T>> {
    let u = complete(rep, tol)?;
    magic_family(&u)
}

/// Family on `ℂⁿ` (uniform state) with raw coefficients `u_ij`, indexed by `⊕ M_{b}` over the blocks of `u`.
pub fn magic_family<T: Real>(u: &MagicUnitaryRep<T>) -> Result<QuantumFamily<T>> {
    let index = Arc::new(StarAlgebra::from_blocks(u.blocks())?);
    let space = Arc::new(QuantumSpace::uniform_points(u.n())?);
    let n = u.n();
    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(index.element_from_blocks(&diagonal_blocks(u.entry(i, j), u.blocks()))?);
        }
        raw.push(row);
    }
    QuantumFamily::from_raw(space, index, raw)
}

fn diagonal_blocks<T: Real>(x: &Matrix<T>, blocks: &[usize]) -> Vec<Matrix<T>> {
    let mut off = 0;
    blocks
        .iter()
        .map(|&b| {
            let m = Matrix::from_fn(b, b, |r, c| x[(off + r, off + c)]);
            off += b;
            m
        })
        .collect()
}

/// Dimension of the unital *-algebra generated by `gens` inside `alg`, by span closure
/// under products of length at most `caps.degree`. Returns the dimension and whether a cap cut it short.
pub fn generated_dimension<T: Real>(alg: &StarAlgebra<T>, gens: &[Vec<C<T>>], caps: GrowthCaps, tol: &Tolerance<T>) -> (usize, bool) {
    let mut letters: Vec<Vec<C<T>>> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        letters.push(g.clone());
        letters.push(alg.star(g));
    }
    let mut basis: Vec<Vec<C<T>>> = Vec::new();
    let add = |basis: &mut Vec<Vec<C<T>>>, v: &[C<T>]| -> Option<Vec<C<T>>> {
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
    };
    let mut frontier: Vec<Vec<C<T>>> = add(&mut basis, alg.unit()).into_iter().collect();
    for _ in 1..=caps.degree {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &letters {
                if let Some(w) = add(&mut basis, &alg.mul(x, g)) {
                    next.push(w);
                    if basis.len() > caps.dim {
                        return (basis.len(), true);
                    }
                }
            }
        }
        if next.is_empty() {
            return (basis.len(), false);
        }
        frontier = next;
    }
    // products of maximal length still produced new directions
    (basis.len(), true)
}

/// For `m = 1..=steps`, the dimension of the algebra generated by the coefficients of `κ^{▵m}`.
pub fn coefficient_growth<T: Real>(rep: &IncreasingSequenceRep<T>, steps: usize, caps: GrowthCaps, tol: &Tolerance<T>) -> Result<GrowthReport> {
    let kappa = completed_family(rep, tol)?;
    let mut dims = Vec::with_capacity(steps);
    let mut truncated = Vec::with_capacity(steps);
    let mut acc: Option<QuantumFamily<T>> = None;
    for _ in 0..steps {
        let fam = match acc {
            None => kappa.clone(),
            Some(ref f) => f.compose(&kappa)?,
        };
        let (d, t) = generated_dimension(fam.index(), fam.flat_coeffs(), caps, tol);
        dims.push(d);
        truncated.push(t);
        acc = Some(fam);
    }
    Ok(GrowthReport { dims, truncated, caps })
}
