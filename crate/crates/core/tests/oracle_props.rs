mod common;

use centralizer::algebra::rank_formula;
use centralizer::arith::{RingSpec, Scalar};
use centralizer::jordan::{assemble_matrix, JordanType};
use centralizer::oracle::{centralizer_nullspace, radical_oracle, simple_count_oracle, SpanBasis};
use common::{with_ring, Q};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nullspace_dimension(jt in with_ring(&[7, 11], 8)) {
        prop_assert_eq!(centralizer_nullspace(&assemble_matrix(&jt)).unwrap().dim(), rank_formula(&jt));
    }

    #[test]
    fn radical_is_a_nilpotent_ideal(jt in with_ring(&[7], 5)) {
        let a = centralizer_nullspace(&assemble_matrix(&jt)).unwrap();
        let rad = radical_oracle(&a).unwrap();
        let ring = jt.ring();
        let n = jt.n();
        let rads = rad.matrices();
        for r in &rads {
            for x in a.matrices() {
                prop_assert!(rad.contains(&x.mul(r).unwrap()).unwrap());
                prop_assert!(rad.contains(&r.mul(&x).unwrap()).unwrap());
            }
        }
        // rad^n = 0, checked through a random-ish product chain
        let mut prod = centralizer::arith::DenseMatrix::identity(ring, n);
        for k in 0..n {
            if rads.is_empty() {
                break;
            }
            prod = prod.mul(&rads[k % rads.len()]).unwrap();
        }
        prop_assert!(rads.is_empty() || prod.is_zero());
    }

    #[test]
    fn simples_count_distinct_sizes(jt in with_ring(&[7, 11], 6)) {
        let a = centralizer_nullspace(&assemble_matrix(&jt)).unwrap();
        let s: usize = jt.groups().iter().map(|g| g.distinct_sizes()).sum();
        prop_assert_eq!(simple_count_oracle(&a).unwrap(), s);
    }
}

#[test]
fn small_characteristic_is_refused() {
    let jt = JordanType::single(RingSpec::PrimeField(2), 0, &[(3, 1)]);
    let a = centralizer_nullspace(&assemble_matrix(&jt)).unwrap();
    assert!(radical_oracle(&a).is_err());
}

#[test]
fn full_matrix_algebra_is_simple() {
    let a = SpanBasis::from_matrices(
        Q,
        2,
        &(0..4)
            .map(|k| centralizer::arith::DenseMatrix::unit(Q, 2, 2, k / 2, k % 2))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(radical_oracle(&a).unwrap().dim(), 0);
    assert_eq!(simple_count_oracle(&a).unwrap(), 1);
    let _ = Scalar::one(Q);
}
