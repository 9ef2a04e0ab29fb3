//! Command logic behind the `centralizer` binary. Every command turns an
//! instance description into a JSON report and an overall pass flag.

pub mod input;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use centralizer::algebra::{rank_formula, AlgebraElement, BasisElement, CentralizerAlgebra};
use centralizer::arith::{DenseMatrix, RingSpec, Scalar};
use centralizer::cellular::{build_cell_datum, is_quasi_hereditary, AxiomCheck};
use centralizer::frobenius::{
    check_frobenius_system, check_separability, dimension_obstruction, find_free_point,
    fixed_subalgebra, group_split_witness, group_trace_candidate, group_trace_system,
    jordan_trace_system, separability_element, split_solver, FrobeniusReport, GroupSpec,
};
use centralizer::jordan::{assemble_matrix, idempotent_eps, idempotent_f, BlockIndex, JordanType};
use centralizer::oracle::{
    centralizer_nullspace, centralizer_of_set, radical_oracle, simple_count_oracle, span_equal,
    SpanBasis,
};
use centralizer::Error;

use input::Instance;

#[derive(Debug, Parser)]
#[command(
    name = "centralizer",
    version,
    about = "Centralizer algebras of Jordan-block matrices"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Report file, or `-` for stdout.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Largest n for which brute-force oracles run.
    #[arg(long, default_value_t = 10)]
    pub oracle_cap: usize,
    #[arg(long)]
    pub no_oracle: bool,
    /// Seed for randomized product sampling.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Subcommand)]
pub enum Command {
    Basis,
    Cell,
    Frobenius,
    Structure,
    Oracle,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Cell => "cell",
            Command::Frobenius => "frobenius",
            Command::Structure => "structure",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub oracle_cap: usize,
    pub no_oracle: bool,
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            oracle_cap: 10,
            no_oracle: false,
            seed: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input or an analysis the instance does not admit. Exit code 2.
    Input(String),
    /// A library invariant broke during the run. Exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Tracks verification results while a report is assembled.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
}

impl Checks {
    fn record(&mut self, name: &str, pass: bool, counterexample: Option<String>) -> Value {
        if !pass {
            self.failed.push(name.to_string());
        }
        json!({ "pass": pass, "counterexample": counterexample })
    }

    fn axiom(&mut self, name: &str, c: &AxiomCheck) -> Value {
        self.record(name, c.pass, c.counterexample.clone())
    }

    fn frobenius(&mut self, prefix: &str, r: &FrobeniusReport) -> Value {
        json!({
            "image_in_subalgebra": self.axiom(&format!("{prefix}.image"), &r.image),
            "bimodule": self.axiom(&format!("{prefix}.bimodule"), &r.bimodule),
            "dual_basis_left": self.axiom(&format!("{prefix}.dual_left"), &r.dual_left),
            "dual_basis_right": self.axiom(&format!("{prefix}.dual_right"), &r.dual_right),
        })
    }
}

fn ring_json(ring: RingSpec) -> Value {
    match ring {
        RingSpec::Integers => json!({ "kind": "Z" }),
        RingSpec::Rationals => json!({ "kind": "Q" }),
        RingSpec::PrimeField(p) => json!({ "kind": "GF", "p": p }),
    }
}

fn matrix_json(m: &DenseMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn jordan_json(jt: &JordanType) -> Value {
    Value::Array(
        jt.groups()
            .iter()
            .map(|g| {
                json!({
                    "eigenvalue": g.eigenvalue.to_string(),
                    "blocks": g.blocks.iter().map(|&(size, mult)| json!({ "size": size, "mult": mult })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn element_json(e: &BasisElement) -> Value {
    json!({ "group": e.group + 1, "row": e.row + 1, "col": e.col + 1, "level": e.level })
}

fn refused(e: Error) -> Value {
    json!({ "refused": e.to_string() })
}

fn skipped(reason: &str) -> Value {
    json!({ "skipped": reason })
}

/// Reason the brute-force oracle cannot run, if any.
fn oracle_gate(ring: RingSpec, n: usize, opts: &Options) -> Option<String> {
    if opts.no_oracle {
        Some("oracle disabled".into())
    } else if !ring.is_field() {
        Some(format!("oracle needs a field, got {ring}"))
    } else if n > opts.oracle_cap {
        Some(format!(
            "n = {n} exceeds the oracle cap {}",
            opts.oracle_cap
        ))
    } else {
        None
    }
}

/// The trace-form radical needs characteristic 0 or larger than `n`.
fn trace_form_ok(ring: RingSpec, n: usize) -> bool {
    let p = ring.characteristic();
    p == 0 || p > n as u64
}

fn jordan_only(inst: &Instance, command: Command) -> Res<(&JordanType, Option<&DenseMatrix>)> {
    match inst {
        Instance::Jordan { jt, matrix } => Ok((jt, matrix.as_ref())),
        Instance::Group(_) => Err(CliError::Input(format!(
            "the {} command needs a matrix or jordan_type instance",
            command.name()
        ))),
    }
}

/// Parses the instance and runs one command on it.
pub fn run(command: Command, text: &str, opts: &Options) -> Res<Outcome> {
    let (echo, inst) = input::parse(text).map_err(CliError::Input)?;
    let mut checks = Checks::default();
    let results = match command {
        Command::Basis => cmd_basis(&inst, opts, &mut checks)?,
        Command::Cell => cmd_cell(&inst, opts, &mut checks)?,
        Command::Frobenius => cmd_frobenius(&inst, &mut checks)?,
        Command::Structure => cmd_structure(&inst, opts, &mut checks)?,
        Command::Oracle => cmd_oracle(&inst, opts, &mut checks)?,
    };
    let pass = checks.failed.is_empty();
    let report = json!({
        "tool": { "name": "centralizer", "version": env!("CARGO_PKG_VERSION") },
        "command": command.name(),
        "instance": echo,
        "options": {
            "oracle_cap": opts.oracle_cap,
            "no_oracle": opts.no_oracle,
            "seed": opts.seed,
        },
        "results": results,
        "failed_checks": checks.failed,
        "pass": pass,
    });
    Ok(Outcome { report, pass })
}

fn basis_matrices(algebra: &CentralizerAlgebra) -> Vec<DenseMatrix> {
    algebra
        .basis()
        .iter()
        .map(|e| algebra.materialize(e))
        .collect()
}

fn structure_constant_check(algebra: &CentralizerAlgebra) -> (bool, Option<String>) {
    let mats = basis_matrices(algebra);
    for (x, mx) in algebra.basis().iter().zip(&mats) {
        for (y, my) in algebra.basis().iter().zip(&mats) {
            let prod = mx.mul(my).expect("square");
            let ok = match algebra.multiply_basis(x, y) {
                Some(z) => algebra.materialize(&z) == prod,
                None => prod.is_zero(),
            };
            if !ok {
                return (false, Some(format!("product of {x:?} and {y:?}")));
            }
        }
    }
    (true, None)
}

fn sampled_products(algebra: &CentralizerAlgebra, seed: u64) -> (usize, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = algebra.ring();
    let random = |rng: &mut ChaCha8Rng| AlgebraElement {
        coeffs: (0..algebra.dim())
            .map(|_| Scalar::from_i64(ring, rng.random_range(-3..=3)))
            .collect(),
    };
    let samples = 16;
    for _ in 0..samples {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let ab = algebra.multiply(&a, &b).expect("same algebra");
        let direct = algebra
            .materialize_element(&a)
            .mul(&algebra.materialize_element(&b))
            .expect("square");
        if algebra.materialize_element(&ab) != direct {
            return (samples, false);
        }
    }
    (samples, true)
}

fn cmd_basis(inst: &Instance, opts: &Options, checks: &mut Checks) -> Res<Value> {
    match inst {
        Instance::Jordan { jt, matrix } => {
            let algebra = CentralizerAlgebra::new(jt);
            let formula = rank_formula(jt);
            let mut out = json!({
                "ring": ring_json(jt.ring()),
                "n": jt.n(),
                "jordan_type": jordan_json(jt),
                "rank": algebra.dim(),
                "rank_formula": {
                    "value": formula,
                    "check": checks.record("rank_formula", formula == algebra.dim(), None),
                },
                "basis": algebra.basis().iter().map(element_json).collect::<Vec<_>>(),
            });
            out["oracle"] = match oracle_gate(jt.ring(), jt.n(), opts) {
                Some(reason) => skipped(&reason),
                None => {
                    let ours =
                        SpanBasis::from_matrices(jt.ring(), jt.n(), &basis_matrices(&algebra))?;
                    let oracle = centralizer_nullspace(&assemble_matrix(jt))?;
                    let equal = ours.dim() == algebra.dim() && span_equal(&ours, &oracle)?;
                    let (sc, counter) = structure_constant_check(&algebra);
                    let mut o = json!({
                        "nullspace_dim": oracle.dim(),
                        "span_equal": checks.record("oracle.span_equal", equal, None),
                        "structure_constants": checks.record("oracle.structure_constants", sc, counter),
                    });
                    if let Some(m) = matrix {
                        let d = centralizer_nullspace(m)?.dim();
                        o["input_matrix_nullspace_dim"] =
                            checks.record("oracle.input_matrix_dim", d == algebra.dim(), None);
                    }
                    o
                }
            };
            if let Some(seed) = opts.seed {
                let (samples, ok) = sampled_products(&algebra, seed);
                out["sampled_products"] = json!({
                    "samples": samples,
                    "check": checks.record("sampled_products", ok, None),
                });
            }
            Ok(out)
        }
        Instance::Group(g) => {
            let fixed = fixed_subalgebra(g)?;
            let mut out = json!({
                "ring": ring_json(g.ring()),
                "n": g.n(),
                "group_order": g.order(),
                "free_point": find_free_point(g).map(|i| i + 1),
                "rank": fixed.len(),
                "basis": fixed.iter().map(matrix_json).collect::<Vec<_>>(),
            });
            out["oracle"] = match oracle_gate(g.ring(), g.n(), opts) {
                Some(reason) => skipped(&reason),
                None => {
                    let ours = SpanBasis::from_matrices(g.ring(), g.n(), &fixed)?;
                    let oracle = centralizer_of_set(g.elements())?;
                    let equal = ours.dim() == fixed.len() && span_equal(&ours, &oracle)?;
                    json!({
                        "nullspace_dim": oracle.dim(),
                        "span_equal": checks.record("oracle.span_equal", equal, None),
                    })
                }
            };
            Ok(out)
        }
    }
}

fn cmd_cell(inst: &Instance, opts: &Options, checks: &mut Checks) -> Res<Value> {
    let (jt, _) = jordan_only(inst, Command::Cell)?;
    let datum = build_cell_datum(jt)?;
    let report = datum.check_cellularity()?;
    let algebra = datum.algebra();
    let posets: Vec<Value> = jt
        .groups()
        .iter()
        .enumerate()
        .map(|(g, group)| {
            json!({
                "group": g + 1,
                "eigenvalue": group.eigenvalue.to_string(),
                "levels": datum.levels(g).map(|p| json!({ "level": p, "cell_size": datum.cell_indices(g, p).len() })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = json!({
        "ring": ring_json(jt.ring()),
        "n": jt.n(),
        "jordan_type": jordan_json(jt),
        "dim": algebra.dim(),
        "posets": posets,
        "involution": "transpose of cell indices: C^p_ij -> C^p_ji",
        "axioms": {
            "c1_basis": checks.axiom("c1", &report.c1),
            "c2_involution": checks.axiom("c2", &report.c2),
            "c3_multiplication": checks.axiom("c3", &report.c3),
        },
    });
    out["cell_chain"] = match datum.cell_chain_simples() {
        Ok(chain) => {
            let groups: Vec<Value> = chain
                .groups
                .iter()
                .enumerate()
                .map(|(g, c)| json!({ "group": g + 1, "surviving_levels": c.exhaustive, "formula_levels": c.formula }))
                .collect();
            let agree = chain.agree();
            let expected: usize = jt.groups().iter().map(|g| g.distinct_sizes()).sum();
            let mut o = json!({
                "groups": groups,
                "agree": checks.record("cell_chain.agree", agree, None),
                "simple_count": chain.count,
                "sum_of_distinct_sizes": checks.record("cell_chain.count", chain.count == expected, None),
            });
            o["oracle_simple_count"] = match oracle_gate(jt.ring(), jt.n(), opts) {
                Some(reason) => skipped(&reason),
                None if !trace_form_ok(jt.ring(), jt.n()) => {
                    skipped("trace-form oracle needs characteristic 0 or p > n")
                }
                None => {
                    let a = centralizer_nullspace(&assemble_matrix(jt))?;
                    let k = simple_count_oracle(&a)?;
                    json!({ "value": k, "check": checks.record("oracle.simple_count", k == chain.count, None) })
                }
            };
            o
        }
        Err(e) => refused(e),
    };
    out["quasi_hereditary"] = match is_quasi_hereditary(jt) {
        Ok(q) => json!({
            "value": q.value,
            "witness": q.witness.map(|(g, l1, s)| json!({ "group": g + 1, "largest_size": l1, "distinct_sizes": s })),
        }),
        Err(e) => refused(e),
    };
    Ok(out)
}

fn cmd_frobenius(inst: &Instance, checks: &mut Checks) -> Res<Value> {
    match inst {
        Instance::Jordan { jt, .. } => {
            let sys = jordan_trace_system(jt)?;
            let report = check_frobenius_system(&sys)?;
            let d = separability_element(jt);
            let sep = check_separability(&sys, &d)?;
            let mut out = json!({
                "ring": ring_json(jt.ring()),
                "n": jt.n(),
                "jordan_type": jordan_json(jt),
                "route": "jordan",
                "subalgebra_dim": sys.basis.len(),
                "system": checks.frobenius("system", &report),
                "separability": {
                    "element": matrix_json(&d),
                    "check": checks.axiom("separability", &sep),
                },
            });
            out["split"] = match split_solver(jt) {
                Ok(s) => json!({
                    "witness": s.witness.as_ref().map(matrix_json),
                    "predicate_diagonalizable": s.predicate,
                    "solver_agrees_with_predicate": checks.record("split.agree", s.agree(), None),
                }),
                Err(e) => refused(e),
            };
            Ok(out)
        }
        Instance::Group(g) => cmd_frobenius_group(g, checks),
    }
}

fn cmd_frobenius_group(g: &GroupSpec, checks: &mut Checks) -> Res<Value> {
    let mut out = json!({
        "ring": ring_json(g.ring()),
        "n": g.n(),
        "route": "group",
        "group_order": g.order(),
    });
    match find_free_point(g) {
        Some(point) => {
            let sys = group_trace_system(g, point)?;
            let report = check_frobenius_system(&sys)?;
            out["free_point"] = json!(point + 1);
            out["status"] = json!(if report.pass() {
                "free point found: system verified"
            } else {
                "free point found: system check failed"
            });
            out["subalgebra_dim"] = json!(sys.basis.len());
            out["system"] = checks.frobenius("system", &report);
            out["split"] = match group_split_witness(&sys)? {
                Some(w) => {
                    json!({ "witness": matrix_json(&w), "trace_of_witness_is_identity": true })
                }
                None => json!({
                    "witness": Value::Null,
                    "reason": format!("|G| = {} is not invertible in {}", g.order(), g.ring()),
                }),
            };
        }
        None => {
            // no free point: try the first point anyway and look for an obstruction
            let sys = group_trace_candidate(g, 0)?;
            let report = check_frobenius_system(&sys)?;
            out["free_point"] = Value::Null;
            out["status"] = json!("no free point: undetermined by the free-point criterion");
            out["subalgebra_dim"] = json!(sys.basis.len());
            out["candidate_point"] = json!(1);
            out["candidate_system"] = checks.frobenius("candidate", &report);
            out["obstruction"] = match dimension_obstruction(g.ring(), g.n(), &sys.basis)? {
                Some(text) => json!({ "detected": true, "explanation": text }),
                None => json!({ "detected": false }),
            };
        }
    }
    Ok(out)
}

fn cmd_structure(inst: &Instance, opts: &Options, checks: &mut Checks) -> Res<Value> {
    let (jt, _) = jordan_only(inst, Command::Structure)?;
    let algebra = CentralizerAlgebra::new(jt);
    let ring = jt.ring();
    let n = jt.n();
    let idx = BlockIndex::new(jt);
    let id = DenseMatrix::identity(ring, n);
    let mats = basis_matrices(&algebra);

    let mut fs = Vec::new();
    let mut groups = Vec::new();
    let mut eps_sum = DenseMatrix::zeros(ring, n, n);
    let mut central = true;
    for (g, gi) in idx.groups.iter().enumerate() {
        let mut blocks = Vec::new();
        for i in 0..gi.num_blocks() {
            fs.push(idempotent_f(jt, g, i)?);
            let first = gi.offset + gi.start[i] + 1;
            blocks.push(json!({ "block": i + 1, "size": gi.block_size(i), "rows": [first, first + gi.block_size(i) - 1] }));
        }
        let e = idempotent_eps(jt, g)?;
        central &= mats
            .iter()
            .all(|b| b.mul(&e).expect("square") == e.mul(b).expect("square"));
        eps_sum = eps_sum.add(&e)?;
        groups.push(json!({
            "group": g + 1,
            "eigenvalue": jt.groups()[g].eigenvalue.to_string(),
            "rows": [gi.offset + 1, gi.offset + gi.dim],
            "blocks": blocks,
        }));
    }
    let mut f_sum = DenseMatrix::zeros(ring, n, n);
    let mut orthogonal = true;
    for (a, x) in fs.iter().enumerate() {
        f_sum = f_sum.add(x)?;
        for (b, y) in fs.iter().enumerate() {
            let p = x.mul(y)?;
            orthogonal &= if a == b { p == *x } else { p.is_zero() };
        }
    }
    let total = f_sum == id && eps_sum == id;

    let basic =
        jt.groups().len() == 1 && jt.groups()[0].blocks.iter().all(|b| b.1 == 1) && ring.is_field();
    let mut radical = json!({});
    let formula_dim = if basic {
        let rad = algebra.radical_basis_basic()?;
        radical["formula"] =
            json!({ "dim": rad.len(), "basis": rad.iter().map(element_json).collect::<Vec<_>>() });
        Some(rad.len())
    } else {
        radical["formula"] =
            skipped("closed form needs one eigenvalue with all multiplicities 1 over a field");
        None
    };
    radical["oracle"] = match oracle_gate(ring, n, opts) {
        Some(reason) => skipped(&reason),
        None if !trace_form_ok(ring, n) => {
            skipped("trace-form oracle needs characteristic 0 or p > n")
        }
        None => {
            let a = SpanBasis::from_matrices(ring, n, &mats)?;
            let rad = radical_oracle(&a)?;
            let mut o = json!({ "dim": rad.dim() });
            if let Some(d) = formula_dim {
                o["agrees_with_formula"] =
                    checks.record("radical.oracle_agrees", d == rad.dim(), None);
            }
            o
        }
    };

    let quiver = if basic {
        let q = algebra.gabriel_quiver()?;
        let relations: Vec<Value> = q
            .relations
            .iter()
            .map(|r| json!({ "relation": r.text, "check": checks.record(&format!("quiver: {}", r.text), r.holds, None) }))
            .collect();
        json!({ "vertices": q.vertices, "arrows": q.arrows, "relations": relations })
    } else {
        skipped("quiver needs one eigenvalue with all multiplicities 1 over a field")
    };

    let decomposition: Vec<Value> = algebra
        .product_decomposition()
        .iter()
        .map(|(r, t)| json!({ "eigenvalue": r.to_string(), "jordan_type": jordan_json(t), "dim": rank_formula(t) }))
        .collect();
    let simples: usize = jt.groups().iter().map(|g| g.distinct_sizes()).sum();

    Ok(json!({
        "ring": ring_json(ring),
        "n": n,
        "jordan_type": jordan_json(jt),
        "rank": algebra.dim(),
        "idempotents": {
            "groups": groups,
            "orthogonal": checks.record("idempotents.orthogonal", orthogonal, None),
            "sum_to_identity": checks.record("idempotents.sum", total, None),
            "group_idempotents_central": checks.record("idempotents.central", central, None),
        },
        "radical": radical,
        "cartan": algebra.cartan_dims(),
        "quiver": quiver,
        "decomposition": decomposition,
        "simple_count": simples,
        "quasi_hereditary": match is_quasi_hereditary(jt) {
            Ok(q) => json!(q.value),
            Err(e) => refused(e),
        },
    }))
}

fn cmd_oracle(inst: &Instance, opts: &Options, checks: &mut Checks) -> Res<Value> {
    let ring = inst.ring();
    let n = inst.n();
    if let Some(reason) = oracle_gate(ring, n, opts) {
        return Err(CliError::Input(reason));
    }
    let (span, expected) = match inst {
        Instance::Jordan { jt, matrix } => {
            let c = matrix.clone().unwrap_or_else(|| assemble_matrix(jt));
            (centralizer_nullspace(&c)?, rank_formula(jt))
        }
        Instance::Group(g) => (
            centralizer_of_set(g.elements())?,
            fixed_subalgebra(g)?.len(),
        ),
    };
    let mut out = json!({
        "ring": ring_json(ring),
        "n": n,
        "centralizer": {
            "dim": span.dim(),
            "matches_rank": checks.record("oracle.dim", span.dim() == expected, None),
            "basis": span.matrices().iter().map(matrix_json).collect::<Vec<_>>(),
        },
    });
    if trace_form_ok(ring, n) {
        let rad = radical_oracle(&span)?;
        out["radical"] = json!({
            "dim": rad.dim(),
            "basis": rad.matrices().iter().map(matrix_json).collect::<Vec<_>>(),
        });
        out["simple_count"] = json!(simple_count_oracle(&span)?);
    } else {
        let e = Error::SmallCharacteristic(format!("{ring} with n = {n}"));
        out["radical"] = refused(e.clone());
        out["simple_count"] = refused(e);
    }
    Ok(out)
}
