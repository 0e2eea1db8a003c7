//! Hopf images, generated quantum subgroups and quantum groups generated by families.

mod generated;
mod image;
pub mod oracle;

pub use generated::{
    coaction_residual, dual_generated_dim, generated_from_family, generated_subgroup, inner_faithful, FamilyImage, GeneratedSubgroup,
    InnerFaithfulReport, SubgroupMap,
};
pub use image::{
    coideal_ideal, hopf_image, kernel_ideal, lambda_n, quotient_by, tensor_through_delta, HopfImageResult, ImageReport, Method, KERNEL_MAX_DEPTH,
    KERNEL_WINDOW,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::oracle::*;
    use super::*;
    use crate::cnum::{vec, Matrix, Tolerance};
    use crate::fqg::{CesaroMode, FiniteQuantumGroup};
    use crate::grouporacle::{is_isomorphic, FiniteGroup, Permutation};
    use crate::qfam::{QuantumFamily, QuantumSpace};
    use crate::scalar::C;
    use crate::staralg::{StarAlgebra, StarHom, StateFunctional};
    use crate::Error;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn idx(g: &FiniteGroup, cycles: &str) -> usize {
        let n = g.permutations().unwrap()[0].degree();
        g.index_of(&Permutation::from_cycles(cycles, n).unwrap()).unwrap()
    }

    fn c(x: f64) -> C<f64> {
        C::new(x, 0.0)
    }

    #[test]
    fn lambda_n_of_point_evaluation_is_evaluation_at_power() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let x = idx(&g, "(1 2 3)");
        let l = evaluation(q.alg(), x).unwrap();
        assert_eq!(lambda_n(&q, &l, 1).unwrap().matrix, l.matrix);
        for n in 1..=4 {
            let ln = lambda_n(&q, &l, n).unwrap();
            assert_eq!(ln.matrix.row(0), vec::basis(6, g.pow(x, n)));
        }
        let eps = evaluation(q.alg(), g.identity()).unwrap();
        assert_eq!(lambda_n(&q, &eps, 3).unwrap().matrix, eps.matrix);
        assert!(lambda_n(&q, &l, 0).is_err());
    }

    #[test]
    fn lambda_n_splits_along_the_coproduct() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::group_algebra(&g);
        let l = permutation_rep(&q, &g);
        let l2 = lambda_n(&q, &l, 2).unwrap();
        let l3 = lambda_n(&q, &l, 3).unwrap();
        let split = tensor_through_delta(&q, &l2.matrix, &l.matrix);
        assert!(split.max_diff(&l3.matrix) < 1e-12);
        let other = tensor_through_delta(&q, &l.matrix, &l2.matrix);
        assert!(other.max_diff(&l3.matrix) < 1e-12);
    }

    /// `λ_g ↦ P_g`, the permutation matrices of the natural action on three points.
    fn permutation_rep(q: &FiniteQuantumGroup<f64>, g: &FiniteGroup) -> StarHom<f64> {
        let m3 = Arc::new(StarAlgebra::matrix_algebra(3).unwrap());
        let cols: Vec<Vec<C<f64>>> = g
            .permutations()
            .unwrap()
            .iter()
            .map(|p| Matrix::from_fn(3, 3, |i, j| if p.apply(j) == i { c(1.0) } else { c(0.0) }).into_data())
            .collect();
        StarHom::new(q.alg().clone(), m3, Matrix::from_columns(9, &cols)).unwrap()
    }

    #[test]
    fn transposition_generates_z2() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let l = evaluation(q.alg(), idx(&g, "(1 2)")).unwrap();
        let r = hopf_image(&q, &l, Method::Both, &tol()).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.j.dim(), 4);
        assert!(r.report.passes(&tol()), "{:?}", r.report);
        let (k, _) = classical_points(&r.quotient, &tol()).unwrap();
        assert!(is_isomorphic(&k, &FiniteGroup::cyclic(2).unwrap(), 24).unwrap());
    }

    #[test]
    fn character_of_z4_generates_z2_dual() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let q = FiniteQuantumGroup::<f64>::group_algebra(&g);
        let values: Vec<C<f64>> = (0..4).map(|k| c(if k % 2 == 0 { 1.0 } else { -1.0 })).collect();
        let l = character(q.alg(), &values).unwrap();
        let r = hopf_image(&q, &l, Method::Both, &tol()).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.report.passes(&tol()));
        let gl = grouplike_group(&r.quotient, &tol()).unwrap();
        // oracle: Z4 / {0, 2}
        let (oracle, _) = g.quotient(&g.subgroup_generated(&[2])).unwrap();
        assert!(is_isomorphic(&gl, &oracle, 24).unwrap());
    }

    #[test]
    fn counit_has_trivial_image() {
        for q in [FiniteQuantumGroup::<f64>::function_algebra(&s3()), FiniteQuantumGroup::group_algebra(&s3())] {
            let eps = character(q.alg(), q.counit()).unwrap();
            let r = hopf_image(&q, &eps, Method::Both, &tol()).unwrap();
            assert_eq!(r.dim(), 1);
            assert!(r.report.passes(&tol()));
        }
    }

    #[test]
    fn faithful_matrix_rep_has_full_image() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::group_algebra(&g);
        let r = hopf_image(&q, &permutation_rep(&q, &g), Method::Both, &tol()).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.j.dim(), 0);
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let q = FiniteQuantumGroup::<f64>::function_algebra(&s3());
        let half = character(q.alg(), &[c(0.5); 6]).unwrap();
        assert!(matches!(hopf_image(&q, &half, Method::Coideal, &tol()), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_transpositions_generate_s3() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let h1 = g.subgroup_generated(&[idx(&g, "(1 2)")]);
        let h2 = g.subgroup_generated(&[idx(&g, "(1 3)")]);
        let maps = vec![restriction(&q, &g, &h1).unwrap(), restriction(&q, &g, &h2).unwrap()];
        let r = generated_subgroup(&q, &maps, Method::Both, &tol()).unwrap();
        assert_eq!(r.image.dim(), g.join(&[&h1, &h2]).order());
        assert_eq!(r.image.dim(), 6);
        assert!(r.theta_morphism.iter().all(|&x| x < 1e-9));
        assert!(r.image.quotient.alg().is_commutative(&tol()));
        assert_eq!(dual_generated_dim(&q, &maps, &tol()).unwrap(), 6);
    }

    #[test]
    fn dual_quotients_with_trivial_intersection_give_everything() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&z2, &z2);
        let q = FiniteQuantumGroup::<f64>::group_algebra(&g);
        // (1,0) has index 2, (0,1) index 1
        let maps = vec![
            group_algebra_quotient(&q, &g, &g.subgroup_generated(&[2])).unwrap(),
            group_algebra_quotient(&q, &g, &g.subgroup_generated(&[1])).unwrap(),
        ];
        let r = generated_subgroup(&q, &maps, Method::Both, &tol()).unwrap();
        assert_eq!(r.image.dim(), 4);
        assert_eq!(dual_generated_dim(&q, &maps, &tol()).unwrap(), 4);
    }

    #[test]
    fn repeated_subgroup_generates_itself() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let h = g.subgroup_generated(&[1, 2]);
        let m = restriction(&q, &g, &h).unwrap();
        let r = generated_subgroup(&q, &[m.clone(), m.clone()], Method::Coideal, &tol()).unwrap();
        assert_eq!(r.image.dim(), h.order());
        let (k, _) = classical_points(&r.image.quotient, &tol()).unwrap();
        assert!(is_isomorphic(&k, &subgroup_as_group(&g, &h).unwrap(), 24).unwrap());
    }

    #[test]
    fn dual_generated_dim_extremes() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let full = restriction(&q, &g, &g.whole()).unwrap();
        assert_eq!(dual_generated_dim(&q, &[full], &tol()).unwrap(), 6);
        let triv = restriction(&q, &g, &g.trivial_subgroup()).unwrap();
        assert_eq!(dual_generated_dim(&q, &[triv], &tol()).unwrap(), 1);
    }

    #[test]
    fn inner_faithfulness_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let q2 = FiniteQuantumGroup::<f64>::function_algebra(&z2);
        let id = StarHom::identity(q2.alg().clone());
        let r = inner_faithful(&q2, &id, &StateFunctional::uniform(2), CesaroMode::Spectral, &tol(), 0).unwrap();
        assert!(r.inner_faithful && r.agrees);

        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let t = evaluation(q.alg(), idx(&g, "(1 2)")).unwrap();
        let one = StateFunctional::uniform(1);
        let r = inner_faithful(&q, &t, &one, CesaroMode::Spectral, &tol(), 0).unwrap();
        assert!(!r.inner_faithful && r.agrees);
        assert_eq!(r.hopf_image_dim, 2);

        let c3 = evaluation(q.alg(), idx(&g, "(1 2 3)")).unwrap();
        let both = direct_sum_hom(&[&t, &c3]).unwrap();
        let r = inner_faithful(&q, &both, &StateFunctional::uniform(2), CesaroMode::Spectral, &tol(), 0).unwrap();
        assert!(r.inner_faithful && r.agrees, "{r:?}");
    }

    #[test]
    fn inner_faithful_requires_faithful_state() {
        let g = s3();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let t = evaluation(q.alg(), idx(&g, "(1 2)")).unwrap();
        let c3 = evaluation(q.alg(), idx(&g, "(1 2 3)")).unwrap();
        let both = direct_sum_hom(&[&t, &c3]).unwrap();
        let degenerate = StateFunctional::new(vec![c(1.0), c(0.0)]);
        assert!(matches!(inner_faithful(&q, &both, &degenerate, CesaroMode::Spectral, &tol(), 0), Err(Error::Precondition(_))));
    }

    fn host_s(n: usize) -> (FiniteGroup, FiniteQuantumGroup<f64>, QuantumFamily<f64>) {
        let g = FiniteGroup::symmetric(n).unwrap();
        let q = FiniteQuantumGroup::function_algebra(&g);
        let space = Arc::new(QuantumSpace::uniform_points(n).unwrap());
        let action = QuantumFamily::group_action(space, &g).unwrap();
        (g, q, action)
    }

    #[test]
    fn action_generates_its_host() {
        let (_, q, action) = host_s(3);
        assert!(coaction_residual(&q, &action) < 1e-12);
        let r = generated_from_family(&action, &q, &action, Method::Coideal, &tol()).unwrap();
        assert_eq!(r.image.dim(), 6);
        assert!(r.lambda.matrix.max_diff(&Matrix::identity(6)) < 1e-9);
        assert!(r.factorization < 1e-9);
    }

    #[test]
    fn trivial_family_generates_trivial_group() {
        let (g, q, action) = host_s(3);
        let f = QuantumFamily::trivial(action.space().clone(), Arc::new(StarAlgebra::commutative(1).unwrap()));
        let r = generated_from_family(&f, &q, &action, Method::Both, &tol()).unwrap();
        assert_eq!(r.image.dim(), 1);
        // π is the counit
        assert!(vec::max_diff(&r.lambda.matrix.row(0), &vec::basis(6, g.identity())) < 1e-9);
        assert!(r.factorization < 1e-9);
    }

    #[test]
    fn permutation_pair_generates_the_classical_closure() {
        let (g, q, action) = host_s(4);
        let space = action.space().clone();
        let sigma = Permutation::from_cycles("(1 2)", 4).unwrap();
        let tau = Permutation::from_cycles("(3 4)", 4).unwrap();
        let f = QuantumFamily::direct_sum(&[
            QuantumFamily::permutation(space.clone(), &sigma).unwrap(),
            QuantumFamily::permutation(space, &tau).unwrap(),
        ])
        .unwrap();
        let r = generated_from_family(&f, &q, &action, Method::Coideal, &tol()).unwrap();
        let oracle = crate::grouporacle::closure(&[sigma, tau]).unwrap();
        assert_eq!(r.image.dim(), oracle.order());
        let (k, _) = classical_points(&r.image.quotient, &tol()).unwrap();
        assert!(is_isomorphic(&k, &oracle, 24).unwrap());
        assert!(r.factorization < 1e-9);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn family_outside_the_host_is_rejected() {
        let (_, q, action) = host_s(3);
        let third = 1.0 / 3.0;
        let raw = vec![vec![vec![c(third)]; 3]; 3];
        let f = QuantumFamily::from_raw(action.space().clone(), Arc::new(StarAlgebra::commutative(1).unwrap()), raw).unwrap();
        assert!(matches!(generated_from_family(&f, &q, &action, Method::Coideal, &tol()), Err(Error::Argument(_))));
    }
}
