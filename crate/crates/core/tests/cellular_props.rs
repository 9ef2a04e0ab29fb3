mod common;

use centralizer::algebra::BasisElement;
use centralizer::cellular::{build_cell_datum, is_quasi_hereditary};
use centralizer::jordan::JordanType;
use common::{jordan_types, with_ring, Q};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn star_product_agrees_with_structure_constants(jt in with_ring(&[2, 7], 8)) {
        let datum = build_cell_datum(&jt).unwrap();
        let algebra = datum.algebra();
        for g in 0..jt.groups().len() {
            for q in datum.levels(g) {
                for p in datum.levels(g) {
                    for u in datum.cell_indices(g, q) {
                        for v in datum.cell_indices(g, q) {
                            for i in datum.cell_indices(g, p) {
                                for j in datum.cell_indices(g, p) {
                                    let star = datum.product_star(g, q, u, v, p, i, j).unwrap();
                                    let direct = algebra.multiply_basis(
                                        &BasisElement::new(g, u, v, q),
                                        &BasisElement::new(g, i, j, p),
                                    );
                                    prop_assert_eq!(star.map(|(l, a, b)| BasisElement::new(g, a, b, l)), direct);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cellularity_holds(jt in with_ring(&[2, 3], 7)) {
        let report = build_cell_datum(&jt).unwrap().check_cellularity().unwrap();
        prop_assert!(report.pass(), "{:?}", report);
    }

    #[test]
    fn involution_reverses_products(jt in with_ring(&[5], 7)) {
        let datum = build_cell_datum(&jt).unwrap();
        let algebra = datum.algebra();
        for x in algebra.basis() {
            for y in algebra.basis() {
                let ex = algebra.basis_element(x);
                let ey = algebra.basis_element(y);
                let lhs = datum.involution_apply(&algebra.multiply(&ex, &ey).unwrap());
                let rhs = algebra
                    .multiply(&datum.involution_apply(&ey), &datum.involution_apply(&ex))
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cell_chain_counts_distinct_sizes(jt in jordan_types(Q, 8)) {
        let chain = build_cell_datum(&jt).unwrap().cell_chain_simples().unwrap();
        prop_assert!(chain.agree());
        let s: usize = jt.groups().iter().map(|g| g.distinct_sizes()).sum();
        prop_assert_eq!(chain.count, s);
    }

    #[test]
    fn quasi_hereditary_iff_consecutive_sizes(jt in jordan_types(Q, 10)) {
        let qh = is_quasi_hereditary(&jt).unwrap();
        let expected = jt.groups().iter().all(|g| g.largest() == g.distinct_sizes());
        prop_assert_eq!(qh.value, expected);
        prop_assert_eq!(qh.witness.is_none(), expected);
    }
}

#[test]
fn broken_involution_is_rejected() {
    let jt = JordanType::single(Q, 0, &[(3, 1), (1, 1)]);
    let mut datum = build_cell_datum(&jt).unwrap();
    datum.swap_involution_entries(0, 1);
    let report = datum.check_cellularity().unwrap();
    assert!(!report.c2.pass);
    assert!(report.c2.counterexample.is_some());
}
