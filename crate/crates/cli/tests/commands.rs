use centralizer_cli::{run, Command, Options};
use serde_json::Value;

fn report(command: Command, text: &str) -> Value {
    let out = run(command, text, &Options::default()).unwrap_or_else(|e| panic!("{}", e.message()));
    assert!(out.pass, "{:#}", out.report["failed_checks"]);
    out.report["results"].clone()
}

const BLOCKS_3_2: &str = include_str!("../fixtures/blocks_3_2.json");

#[test]
fn basis_of_blocks_3_2() {
    let r = report(Command::Basis, BLOCKS_3_2);
    assert_eq!(r["rank"], 9);
    assert_eq!(r["rank_formula"]["value"], 9);
    assert_eq!(r["oracle"]["span_equal"]["pass"], true);
    assert_eq!(r["basis"].as_array().unwrap().len(), 9);
}

#[test]
fn matrix_input_reaches_the_same_block_type() {
    let a = report(
        Command::Basis,
        include_str!("../fixtures/blocks_3_2_matrix.json"),
    );
    let b = report(Command::Basis, BLOCKS_3_2);
    assert_eq!(a["jordan_type"], b["jordan_type"]);
    assert_eq!(a["oracle"]["input_matrix_nullspace_dim"]["pass"], true);
}

#[test]
fn cell_of_staircase() {
    let r = report(
        Command::Cell,
        include_str!("../fixtures/staircase_321.json"),
    );
    assert_eq!(r["quasi_hereditary"]["value"], true);
    assert_eq!(r["cell_chain"]["simple_count"], 3);
    assert_eq!(r["cell_chain"]["oracle_simple_count"]["value"], 3);
    let r = report(Command::Cell, BLOCKS_3_2);
    assert_eq!(r["quasi_hereditary"]["value"], false);
    assert_eq!(r["quasi_hereditary"]["witness"]["largest_size"], 3);
}

#[test]
fn cell_over_integers_refuses_field_only_parts() {
    let r = report(
        Command::Cell,
        include_str!("../fixtures/integers_mixed.json"),
    );
    assert_eq!(r["axioms"]["c3_multiplication"]["pass"], true);
    assert!(r["cell_chain"]["refused"].is_string());
    assert!(r["quasi_hereditary"]["refused"].is_string());
}

#[test]
fn cyclic_group_frobenius() {
    let r = report(
        Command::Frobenius,
        include_str!("../fixtures/cyclic3_q.json"),
    );
    assert_eq!(r["free_point"], 1);
    assert_eq!(r["system"]["dual_basis_left"]["pass"], true);
    assert_eq!(r["split"]["witness"][0][0], "1/3");
    let r = report(
        Command::Frobenius,
        include_str!("../fixtures/cyclic3_gf3.json"),
    );
    assert!(r["split"]["witness"].is_null());
}

#[test]
fn jordan_frobenius_and_split() {
    let r = report(
        Command::Frobenius,
        include_str!("../fixtures/diagonal.json"),
    );
    assert!(r["split"]["witness"].is_array());
    assert_eq!(r["split"]["predicate_diagonalizable"], true);
    let r = report(Command::Frobenius, BLOCKS_3_2);
    assert!(r["split"]["witness"].is_null());
    assert_eq!(r["separability"]["check"]["pass"], true);
}

#[test]
fn structure_of_two_eigenvalues() {
    let r = report(
        Command::Structure,
        include_str!("../fixtures/two_eigenvalues_gf7.json"),
    );
    assert_eq!(r["decomposition"].as_array().unwrap().len(), 2);
    assert_eq!(r["rank"], 16);
    assert!(r["quiver"]["skipped"].is_string());
    assert_eq!(r["cartan"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_outputs() {
    let r = report(Command::Oracle, BLOCKS_3_2);
    assert_eq!(r["centralizer"]["dim"], 9);
    assert_eq!(r["radical"]["dim"], 7);
    assert_eq!(r["simple_count"], 2);
    let r = report(Command::Oracle, include_str!("../fixtures/s3_gf3.json"));
    assert_eq!(r["centralizer"]["dim"], 2);
    assert!(r["radical"]["refused"].is_string());
}

#[test]
fn input_errors() {
    for text in [
        "not json",
        r#"{"ring": {"kind": "R"}, "matrix": [["1"]]}"#,
        r#"{"ring": {"kind": "Q"}}"#,
        r#"{"ring": {"kind": "Q"}, "matrix": [["1", "2"]]}"#,
        r#"{"ring": {"kind": "Q"}, "jordan_type": [{"eigenvalue": "1", "blocks": []}]}"#,
        r#"{"ring": {"kind": "Q"}, "jordan_type": [{"eigenvalue": "1", "blocks": [{"size": 1}]}, {"eigenvalue": "1", "blocks": [{"size": 2}]}]}"#,
        r#"{"ring": {"kind": "Q"}, "group": {"permutations": ["(1 2)"], "n": 1}}"#,
        r#"{"ring": {"kind": "Q"}, "group": {"permutations": ["(1 2"]}}"#,
        r#"{"ring": {"kind": "Q"}, "matrix": [["1"]], "extra": 1}"#,
    ] {
        let e = run(Command::Basis, text, &Options::default())
            .err()
            .unwrap_or_else(|| panic!("accepted {text}"));
        assert_eq!(e.exit_code(), 2, "{text}");
    }
}
