mod common;

use centralizer::algebra::{rank_formula, AlgebraElement, CentralizerAlgebra};
use centralizer::arith::{RingSpec, Scalar};
use centralizer::jordan::{assemble_matrix, JordanType};
use centralizer::oracle::{centralizer_nullspace, span_equal, SpanBasis};
use common::{jordan_types, with_ring, Q};
use proptest::prelude::*;

fn element(ring: RingSpec, coeffs: &[i64], dim: usize) -> AlgebraElement {
    AlgebraElement {
        coeffs: (0..dim)
            .map(|k| Scalar::from_i64(ring, coeffs[k % coeffs.len()]))
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_commutes_with_c(jt in with_ring(&[2, 3, 11], 8)) {
        let algebra = CentralizerAlgebra::new(&jt);
        let c = assemble_matrix(&jt);
        for e in algebra.basis() {
            let f = algebra.materialize(e);
            prop_assert_eq!(c.mul(&f).unwrap(), f.mul(&c).unwrap());
        }
    }

    #[test]
    fn span_matches_nullspace(jt in with_ring(&[11, 13], 8)) {
        let algebra = CentralizerAlgebra::new(&jt);
        let ours: Vec<_> = algebra.basis().iter().map(|e| algebra.materialize(e)).collect();
        let ours = SpanBasis::from_matrices(jt.ring(), jt.n(), &ours).unwrap();
        prop_assert_eq!(ours.dim(), algebra.dim());
        let oracle = centralizer_nullspace(&assemble_matrix(&jt)).unwrap();
        prop_assert!(span_equal(&ours, &oracle).unwrap());
    }

    #[test]
    fn dimension_formula(jt in jordan_types(Q, 12)) {
        prop_assert_eq!(CentralizerAlgebra::new(&jt).dim(), rank_formula(&jt));
    }

    #[test]
    fn products_close_and_match_matrices(jt in with_ring(&[2, 5], 7)) {
        let algebra = CentralizerAlgebra::new(&jt);
        for x in algebra.basis() {
            let mx = algebra.materialize(x);
            for y in algebra.basis() {
                let prod = mx.mul(&algebra.materialize(y)).unwrap();
                match algebra.multiply_basis(x, y) {
                    Some(z) => prop_assert_eq!(algebra.materialize(&z), prod.clone()),
                    None => prop_assert!(prod.is_zero()),
                }
                prop_assert!(algebra.element_from_matrix(&prod).is_some());
            }
        }
    }

    #[test]
    fn associativity(jt in with_ring(&[3], 7), a in prop::collection::vec(-2i64..3, 1..8), b in prop::collection::vec(-2i64..3, 1..8), c in prop::collection::vec(-2i64..3, 1..8)) {
        let algebra = CentralizerAlgebra::new(&jt);
        let dim = algebra.dim();
        let (a, b, c) = (element(jt.ring(), &a, dim), element(jt.ring(), &b, dim), element(jt.ring(), &c, dim));
        let left = algebra.multiply(&algebra.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = algebra.multiply(&a, &algebra.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let m = algebra.materialize_element(&a)
            .mul(&algebra.materialize_element(&b)).unwrap()
            .mul(&algebra.materialize_element(&c)).unwrap();
        prop_assert_eq!(algebra.materialize_element(&left), m);
        let one = algebra.identity();
        prop_assert_eq!(algebra.multiply(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(algebra.multiply(&a, &one).unwrap(), a);
    }

    #[test]
    fn basic_radical_leaves_one_dimension_per_size(parts in prop::collection::btree_set(1usize..7, 1..4)) {
        let blocks: Vec<(usize, usize)> = parts.iter().map(|&l| (l, 1)).collect();
        let jt = JordanType::single(Q, 0, &blocks);
        let algebra = CentralizerAlgebra::new(&jt);
        let rad = algebra.radical_basis_basic().unwrap();
        prop_assert_eq!(algebra.dim() - rad.len(), parts.len());
    }
}

#[test]
fn radical_formula_preconditions() {
    let several = CentralizerAlgebra::new(&JordanType::multi(Q, &[(0, &[(2, 1)]), (1, &[(1, 1)])]));
    assert!(several.radical_basis_basic().is_err());
    let repeated = CentralizerAlgebra::new(&JordanType::single(Q, 0, &[(2, 2)]));
    assert!(repeated.radical_basis_basic().is_err());
    let ints = CentralizerAlgebra::new(&JordanType::single(RingSpec::Integers, 0, &[(2, 1)]));
    assert!(ints.radical_basis_basic().is_err());
}
