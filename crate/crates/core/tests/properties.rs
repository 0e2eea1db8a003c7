mod common;

use std::sync::Arc;

use common::{random_function_algebra_case, random_group_algebra_case, small_groups, tol};
use proptest::prelude::*;
use qsym_core::cnum::{kron, Matrix, Subspace};
use qsym_core::grouporacle::Permutation;
use qsym_core::hopfimage::{hopf_image, Method};
use qsym_core::qfam::{check_family, check_podles, check_unitary, check_wang1, QuantumFamily, QuantumSpace};
use qsym_core::qinc::MagicUnitaryRep;
use qsym_core::random::{self, rng};
use qsym_core::staralg::StarAlgebra;
use qsym_core::Complex;

fn points(n: usize) -> Arc<QuantumSpace<f64>> {
    Arc::new(QuantumSpace::uniform_points(n).unwrap())
}

fn magic_family(n: usize, d: usize, seed: u64) -> QuantumFamily<f64> {
    let u = MagicUnitaryRep::new(n, d, random::magic_unitary::<f64, _>(n, d, &mut rng(seed))).unwrap();
    QuantumFamily::from_magic_unitary(points(n), &u, &tol()).unwrap()
}

/// The classical map `f` on `n` points, raw coefficients `[f(i) = j]`.
fn map_family(f: &[usize]) -> QuantumFamily<f64> {
    let n = f.len();
    let raw = (0..n)
        .map(|i| (0..n).map(|j| vec![Complex::new(if f[i] == j { 1.0 } else { 0.0 }, 0.0)]).collect())
        .collect();
    QuantumFamily::from_raw(points(n), Arc::new(StarAlgebra::commutative(1).unwrap()), raw).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_mixed_product(seed in any::<u64>(), m in 1usize..4, n in 1usize..4, p in 1usize..4, q in 1usize..4, r in 1usize..3) {
        let mut g = rng(seed);
        let a = random::gaussian_matrix::<f64, _>(m, n, &mut g);
        let b = random::gaussian_matrix::<f64, _>(p, q, &mut g);
        let c = random::gaussian_matrix::<f64, _>(n, r, &mut g);
        let d = random::gaussian_matrix::<f64, _>(q, r, &mut g);
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12 * (1.0 + lhs.norm_max()));
    }

    #[test]
    fn intersection_dimension_formula(seed in any::<u64>(), n in 2usize..7, k1 in 0usize..7, k2 in 0usize..7) {
        let (k1, k2) = (k1.min(n), k2.min(n));
        let mut g = rng(seed);
        // share a random common part so the intersection is usually nontrivial
        let common = random::gaussian_matrix::<f64, _>(n, k1.min(k2) / 2, &mut g);
        let u = Subspace::span(&common.hstack(&random::gaussian_matrix(n, k1 - common.cols(), &mut g)).unwrap(), &tol());
        let v = Subspace::span(&common.hstack(&random::gaussian_matrix(n, k2 - common.cols(), &mut g)).unwrap(), &tol());
        let cap = u.intersect(&v, &tol()).unwrap();
        let sum = u.sum(&v, &tol()).unwrap();
        prop_assert_eq!(cap.dim() + sum.dim(), u.dim() + v.dim());
        for x in cap.vectors() {
            prop_assert!(u.residual(&x) <= 1e-9 && v.residual(&x) <= 1e-9);
        }
    }

    #[test]
    fn composition_is_associative(n in 2usize..4, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b) = (magic_family(n, 2, s1), magic_family(n, 2, s2));
        let c = map_family(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>());
        let c = if s3 % 2 == 0 { c } else { magic_family(n, 1, s3) };
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let diff = left.coeff(i, j).iter().zip(right.coeff(i, j)).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                prop_assert!(diff <= 1e-12);
            }
        }
    }

    #[test]
    fn composition_preserves_the_state(n in 2usize..5, s1 in any::<u64>(), s2 in any::<u64>(), images in proptest::collection::vec(0usize..4, 4)) {
        let a = magic_family(n, 2, s1);
        let sigma = Permutation::new(permutation_from(&images, n)).unwrap();
        let b = QuantumFamily::permutation(points(n), &sigma).unwrap();
        let c = magic_family(n, 1, s2);
        for f in [a.compose(&b).unwrap(), b.compose(&a).unwrap(), a.compose(&c).unwrap().compose(&a).unwrap()] {
            prop_assert!(check_wang1(&f) <= 1e-9);
            prop_assert!(check_family(&f, &tol()).passes(&tol()));
        }
    }

    #[test]
    fn podles_iff_unitary_for_star_homomorphisms(n in 2usize..5, seed in any::<u64>(), f in proptest::collection::vec(0usize..4, 4)) {
        let f: Vec<usize> = f.iter().take(n).map(|x| x % n).collect();
        let classical = map_family(&f);
        let fam = QuantumFamily::direct_sum(&[magic_family(n, 2, seed), classical]).unwrap();
        let rep = check_family(&fam, &tol());
        prop_assert!(rep.is_star_hom(&tol()));
        let unitary = check_unitary(&fam) <= tol().eps_eq;
        let (_, podles) = check_podles(&fam, &tol());
        let bijective = { let mut s = f.clone(); s.sort(); s.dedup(); s.len() == n };
        prop_assert_eq!(unitary, podles);
        prop_assert_eq!(podles, bijective);
    }
}

fn permutation_from(seed: &[usize], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n) {
        p.swap(i, s % n);
    }
    p
}

#[test]
fn kernel_and_coideal_agree_on_random_group_derived_maps() {
    let groups = small_groups();
    let mut r = rng(0x6e7);
    let mut seen = 0;
    for k in 0..60 {
        let (name, g) = &groups[k % groups.len()];
        let case = if k % 3 == 0 { random_group_algebra_case(name, g, &mut r) } else { random_function_algebra_case(name, g, &mut r) };
        let a = hopf_image(&case.q, &case.hom, Method::Kernel, &tol()).unwrap();
        let b = hopf_image(&case.q, &case.hom, Method::Coideal, &tol()).unwrap();
        assert_eq!(a.dim(), case.expected_dim, "{}", case.label);
        assert_eq!(b.dim(), case.expected_dim, "{}", case.label);
        assert!(a.j.span_distance(&b.j) <= 1e-8, "{}", case.label);
        seen += 1;
    }
    assert!(seen >= 50);
}

#[test]
fn matrix_round_trips_through_json() {
    let m = random::gaussian_matrix::<f64, _>(3, 2, &mut rng(4));
    let text = serde_json::to_string(&m).unwrap();
    let back: Matrix<f64> = serde_json::from_str(&text).unwrap();
    assert!(back.max_diff(&m) <= 1e-15);
}
