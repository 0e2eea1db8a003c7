//! Seeded group-derived inputs shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use qsym_core::cnum::{Matrix, Tolerance};
use qsym_core::grouporacle::{FiniteGroup, Permutation};
use qsym_core::random::{self, SeededRng};
use qsym_core::staralg::{StarAlgebra, StarHom, StateFunctional};
use qsym_core::{Complex, FiniteQuantumGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

/// Every group of order at most 8 that the generators below exercise.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let c = |n| FiniteGroup::cyclic(n).unwrap();
    vec![
        ("Z2", c(2)),
        ("Z3", c(3)),
        ("Z4", c(4)),
        ("Z5", c(5)),
        ("Z6", c(6)),
        ("Z7", c(7)),
        ("Z8", c(8)),
        ("Z2xZ2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("Z2xZ4", FiniteGroup::direct_product(&c(2), &c(4))),
        ("Z2^3", FiniteGroup::direct_product(&FiniteGroup::direct_product(&c(2), &c(2)), &c(2))),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", FiniteGroup::dihedral(4).unwrap()),
    ]
}

/// What the Hopf image of a generated map must be, from group theory alone.
pub struct Case {
    pub label: String,
    pub q: FiniteQuantumGroup,
    pub hom: StarHom<f64>,
    pub expected_dim: usize,
}

fn conjugate(u: &Matrix<f64>, x: &Matrix<f64>) -> Matrix<f64> {
    &(u * x) * &u.adjoint()
}

/// `C(G) → M_d`, `δ_g ↦ U P_g U*` where the diagonal slots of `P` carry random points.
/// The Hopf image is `C(⟨points⟩)`.
pub fn random_function_algebra_case(name: &str, g: &FiniteGroup, rng: &mut SeededRng) -> Case {
    let d = rng.gen_range(1..=3);
    let points: Vec<usize> = (0..d).map(|_| rng.gen_range(0..g.order())).collect();
    let u = random::unitary::<f64, _>(d, rng);
    let target = Arc::new(StarAlgebra::matrix_algebra(d).unwrap());
    let q = FiniteQuantumGroup::function_algebra(g);
    let cols: Vec<Vec<Complex>> = (0..g.order())
        .map(|x| {
            let diag: Vec<Complex> = points.iter().map(|&p| if p == x { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) }).collect();
            target.element_from_blocks(&[conjugate(&u, &Matrix::diag(&diag))]).unwrap()
        })
        .collect();
    let hom = StarHom::new(q.alg().clone(), target.clone(), Matrix::from_columns(target.dim(), &cols)).unwrap();
    Case { label: format!("C({name}) points {points:?}"), q, hom, expected_dim: g.subgroup_generated(&points).order() }
}

/// Left-regular permutation matrices of `G`.
pub fn regular_rep(g: &FiniteGroup) -> Vec<Matrix<f64>> {
    (0..g.order())
        .map(|x| Matrix::from_fn(g.order(), g.order(), |i, j| if g.mul(x, j) == i { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) }))
        .collect()
}

/// `C*(Γ) → M_k`, `λ_x ↦ U ρ(xN) U*` for the regular representation `ρ` of `Γ/N` and a random
/// normal subgroup `N`, optionally plus the trivial representation. The Hopf image is `C*(Γ/N)`.
pub fn random_group_algebra_case(name: &str, g: &FiniteGroup, rng: &mut SeededRng) -> Case {
    let normals = g.normal_subgroups(64).unwrap();
    let n = normals.choose(rng).unwrap();
    let (quot, coset) = g.quotient(n).unwrap();
    let reg = regular_rep(&quot);
    let with_trivial = rng.gen_bool(0.5);
    let k = quot.order() + usize::from(with_trivial);
    let u = random::unitary::<f64, _>(k, rng);
    let target = Arc::new(StarAlgebra::matrix_algebra(k).unwrap());
    let q = FiniteQuantumGroup::group_algebra(g);
    let cols: Vec<Vec<Complex>> = (0..g.order())
        .map(|x| {
            let r = &reg[coset[x]];
            let block = Matrix::from_fn(k, k, |i, j| match (i < r.rows(), j < r.rows()) {
                (true, true) => r[(i, j)],
                (false, false) => Complex::new(1.0, 0.0),
                _ => Complex::new(0.0, 0.0),
            });
            target.element_from_blocks(&[conjugate(&u, &block)]).unwrap()
        })
        .collect();
    let hom = StarHom::new(q.alg().clone(), target.clone(), Matrix::from_columns(target.dim(), &cols)).unwrap();
    Case { label: format!("C*({name}) mod normal subgroup of order {}", n.order()), q, hom, expected_dim: quot.order() }
}

/// A seeded faithful state on a block algebra.
pub fn random_faithful_state(a: &StarAlgebra<f64>, rng: &mut SeededRng) -> StateFunctional<f64> {
    let blocks = a.blocks().expect("block algebra").to_vec();
    let w = random::probability_vector::<f64, _>(blocks.len(), 0.1, rng);
    let rho: Vec<Matrix<f64>> = blocks.iter().zip(&w).map(|(&m, &wi)| random::density::<f64, _>(m, 0.1, rng).scale_real(wi)).collect();
    StateFunctional::from_densities(a, &rho).unwrap()
}

pub fn perm(s: &str, n: usize) -> Permutation {
    Permutation::from_cycles(s, n).unwrap()
}
