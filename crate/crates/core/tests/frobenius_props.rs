mod common;

use centralizer::algebra::CentralizerAlgebra;
use centralizer::arith::{DenseMatrix, RingSpec, Scalar};
use centralizer::frobenius::{
    check_frobenius_system, check_separability, cycle_type, fixed_subalgebra, group_split_witness,
    group_trace_system, jordan_trace_system, parse_cycles, perm_free_point_criterion,
    separability_element, split_predicate, split_solver, GroupSpec,
};
use centralizer::jordan::JordanType;
use common::{jordan_types, rings, with_ring, Q};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_system_is_frobenius(jt in with_ring(&[2, 3, 7], 7)) {
        let sys = jordan_trace_system(&jt).unwrap();
        let report = check_frobenius_system(&sys).unwrap();
        prop_assert!(report.pass(), "{:?}", report);
        let d = separability_element(&jt);
        let sep = check_separability(&sys, &d).unwrap();
        prop_assert!(sep.pass, "{:?}", sep);
    }

    #[test]
    fn trace_system_over_integers(jt in jordan_types(RingSpec::Integers, 6)) {
        let sys = jordan_trace_system(&jt).unwrap();
        prop_assert!(check_frobenius_system(&sys).unwrap().pass());
    }

    #[test]
    fn corner_identities(jt in with_ring(&[3], 7), coeffs in prop::collection::vec(-2i64..3, 1..10)) {
        let sys = jordan_trace_system(&jt).unwrap();
        let algebra = CentralizerAlgebra::new(&jt);
        let ring = jt.ring();
        let n = jt.n();
        let a = algebra.materialize_element(&centralizer::algebra::AlgebraElement {
            coeffs: (0..algebra.dim()).map(|k| Scalar::from_i64(ring, coeffs[k % coeffs.len()])).collect(),
        });
        let gi = algebra.group(0);
        let top = gi.lambda1() - 1;
        let e00 = DenseMatrix::unit(ring, n, n, 0, 0);
        for i in 0..gi.dim {
            let left = e00.mul(&sys.apply(&DenseMatrix::unit(ring, n, n, top, i).mul(&a).unwrap())).unwrap();
            prop_assert_eq!(left, DenseMatrix::unit(ring, n, n, 0, i).mul(&a).unwrap());
            let right = sys.apply(&a.mul(&DenseMatrix::unit(ring, n, n, i, 0)).unwrap())
                .mul(&DenseMatrix::unit(ring, n, n, top, 0)).unwrap();
            prop_assert_eq!(right, a.mul(&DenseMatrix::unit(ring, n, n, i, 0)).unwrap());
        }
    }

    #[test]
    fn split_iff_diagonalizable(jt in with_ring(&[2, 5], 6)) {
        let report = split_solver(&jt).unwrap();
        prop_assert!(report.agree());
        prop_assert_eq!(report.predicate, split_predicate(&jt));
    }

    #[test]
    fn cyclic_groups(n in 2usize..=7, k in 1usize..7, ring in rings(&[2, 3, 5, 7])) {
        let shift: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
        let g = GroupSpec::from_permutations(ring, n, &[shift]).unwrap();
        let order = g.order();
        let has_free = perm_free_point_criterion(&cycle_type(&g.permutations().unwrap()[1.min(order - 1)]));
        prop_assert_eq!(has_free || order == 1, centralizer::frobenius::find_free_point(&g).is_some());
        if let Some(point) = centralizer::frobenius::find_free_point(&g) {
            let sys = group_trace_system(&g, point).unwrap();
            prop_assert!(check_frobenius_system(&sys).unwrap().pass());
            let witness = group_split_witness(&sys).unwrap();
            let invertible = ring.characteristic() == 0 || !(order as u64).is_multiple_of(ring.characteristic());
            prop_assert_eq!(witness.is_some(), invertible);
        }
    }
}

#[test]
fn symmetric_group_on_three_points() {
    let gens = vec![
        parse_cycles("(1 2 3)", 3).unwrap(),
        parse_cycles("(1 2)", 3).unwrap(),
    ];
    let g = GroupSpec::from_permutations(Q, 3, &gens).unwrap();
    assert_eq!(g.order(), 6);
    assert!(centralizer::frobenius::find_free_point(&g).is_none());
    assert_eq!(fixed_subalgebra(&g).unwrap().len(), 2);
}

#[test]
fn diagonal_type_splits() {
    let jt = JordanType::multi(Q, &[(0, &[(1, 2)]), (1, &[(1, 1)])]);
    let report = split_solver(&jt).unwrap();
    assert!(report.predicate && report.witness.is_some());
}
