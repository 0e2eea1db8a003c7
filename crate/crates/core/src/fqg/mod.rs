//! Finite quantum groups: Hopf *-algebra data, duality and convolution of functionals.

mod conv;
mod group;

pub use conv::{cesaro_mean, convolution_power, convolve, right_convolution_matrix, CesaroMode, CesaroResult};
pub use group::{FiniteQuantumGroup, FqgReport, Functional};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnum::{vec, Tolerance};
    use crate::grouporacle::FiniteGroup;
    use crate::scalar::C;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn ev(n: usize, g: usize) -> Functional<f64> {
        Functional::new(vec::basis(n, g))
    }

    #[test]
    fn function_and_group_algebras_pass_every_check() {
        for g in [FiniteGroup::cyclic(4).unwrap(), FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
            for q in [FiniteQuantumGroup::<f64>::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
                let r = q.check(&tol());
                assert!(r.passes(&tol()), "{r:?}");
            }
        }
    }

    #[test]
    fn broken_counit_is_detected() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let bad = FiniteQuantumGroup::new(q.alg().clone(), q.delta().clone(), vec::basis(3, 1), q.antipode().clone(), q.haar().clone()).unwrap();
        assert!(bad.check(&tol()).counit > 0.5);
        assert!(FiniteQuantumGroup::new_checked(q.alg().clone(), q.delta().clone(), vec::basis(3, 1), q.antipode().clone(), q.haar().clone(), &tol()).is_err());
    }

    #[test]
    fn dual_of_function_algebra_is_group_algebra() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let d = FiniteQuantumGroup::<f64>::function_algebra(&g).dual(&tol()).unwrap();
        let c = FiniteQuantumGroup::<f64>::group_algebra(&g);
        assert!(d.check(&tol()).passes(&tol()));
        assert_eq!(d.alg().structure_tensor(), c.alg().structure_tensor());
        assert!(d.delta().max_diff(c.delta()) < 1e-14);
        assert!(vec::max_diff(&d.haar().coeffs, &c.haar().coeffs) < 1e-12);
        // centre of C*(S3) has one dimension per conjugacy class
        assert_eq!(d.alg().center_dim(&tol()), 3);
    }

    #[test]
    fn bidual_recovers_the_structure() {
        let g = FiniteGroup::dihedral(4).unwrap();
        for q in [FiniteQuantumGroup::<f64>::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
            let dd = q.dual(&tol()).unwrap().dual(&tol()).unwrap();
            assert_eq!(dd.alg().structure_tensor(), q.alg().structure_tensor());
            assert!(dd.delta().max_diff(q.delta()) < 1e-14);
            assert!(dd.antipode().max_diff(q.antipode()) < 1e-14);
            assert!(vec::max_diff(&dd.haar().coeffs, &q.haar().coeffs) < 1e-12);
        }
    }

    #[test]
    fn solved_haar_is_the_uniform_state() {
        let q = FiniteQuantumGroup::<f64>::function_algebra(&FiniteGroup::symmetric(3).unwrap());
        let h = q.solve_haar(&tol()).unwrap();
        assert!(vec::max_diff(&h.coeffs, &q.haar().coeffs) < 1e-12);
    }

    #[test]
    fn iterated_coproduct_nestings_agree() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        assert!(q.iterated_coproduct(2).unwrap().max_diff(q.delta()) == 0.0);
        let left = q.iterated_coproduct(3).unwrap();
        for p in 0..6 {
            let right = q.apply_delta_at(&q.delta().column(p), 2, 1);
            assert!(vec::max_diff(&left.column(p), &right) < 1e-14);
        }
        // Δ⁽³⁾δ_g counts triples with abc = g
        let ones = left.column(0).iter().filter(|z| z.re == 1.0).count();
        assert_eq!(ones, 36);
        assert!(q.iterated_coproduct(0).is_err());
    }

    #[test]
    fn convolution_of_point_evaluations_multiplies() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        for a in 0..6 {
            for b in 0..6 {
                let c = convolve(&q, &ev(6, a), &ev(6, b));
                assert_eq!(c.coeffs, vec::basis(6, g.mul(a, b)));
            }
        }
    }

    #[test]
    fn cesaro_mean_of_generating_measure_is_haar() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let gens = g.generators();
        let mut w = vec![C::new(0.0, 0.0); 6];
        for &x in &gens {
            w[x] = C::new(1.0 / gens.len() as f64, 0.0);
        }
        let res = cesaro_mean(&q, &Functional::new(w), CesaroMode::Spectral, &tol(), 0).unwrap();
        assert!(vec::max_diff(&res.mean.coeffs, &q.haar().coeffs) < 1e-10);
        assert!(res.idempotency < 1e-10);
    }

    #[test]
    fn cesaro_modes_agree_on_a_periodic_measure() {
        // ev_g for an involution: the powers alternate, the mean is the Haar state of {e, g}
        let g = FiniteGroup::symmetric(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let inv = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let w = ev(6, inv);
        let spectral = cesaro_mean(&q, &w, CesaroMode::Spectral, &tol(), 0).unwrap();
        let mut want = vec![C::new(0.0, 0.0); 6];
        want[g.identity()] = C::new(0.5, 0.0);
        want[inv] = C::new(0.5, 0.0);
        assert!(vec::max_diff(&spectral.mean.coeffs, &want) < 1e-10);
        let loose = Tolerance::new(1e-4, 1e-8).unwrap();
        let iterative = cesaro_mean(&q, &w, CesaroMode::Iterative, &loose, 100_000).unwrap();
        assert!(vec::max_diff(&iterative.mean.coeffs, &want) < 1e-3);
        assert!(iterative.iterations > 1);
    }

    #[test]
    fn iterative_cesaro_reports_non_convergence() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::function_algebra(&g);
        let err = cesaro_mean(&q, &ev(3, 1), CesaroMode::Iterative, &tol(), 10).unwrap_err();
        assert!(matches!(err, crate::Error::Convergence { iterations: 10, .. }));
    }
}
