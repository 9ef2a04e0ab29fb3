//! Instance descriptions read from JSON.

use serde::Deserialize;
use serde_json::Value;

use centralizer::arith::{DenseMatrix, RingSpec, Scalar};
use centralizer::frobenius::{max_point, parse_cycles, GroupSpec};
use centralizer::jordan::{jordan_type_of_matrix, JordanType};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingInput {
    Z,
    Q,
    GF { p: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockInput {
    pub size: usize,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTypeInput {
    pub eigenvalue: Value,
    pub blocks: Vec<BlockInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    #[serde(default)]
    pub permutations: Option<Vec<String>>,
    #[serde(default)]
    pub matrices: Option<Vec<Vec<Vec<Value>>>>,
    /// Degree for permutation groups; defaults to the largest point named.
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub ring: RingInput,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub jordan_type: Option<Vec<GroupTypeInput>>,
    #[serde(default)]
    pub group: Option<GroupInput>,
}

/// A parsed instance, ready for the commands.
#[derive(Debug)]
pub enum Instance {
    Jordan {
        jt: JordanType,
        /// The matrix as given, when the instance was a matrix.
        matrix: Option<DenseMatrix>,
    },
    Group(GroupSpec),
}

impl Instance {
    pub fn ring(&self) -> RingSpec {
        match self {
            Instance::Jordan { jt, .. } => jt.ring(),
            Instance::Group(g) => g.ring(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Jordan { jt, .. } => jt.n(),
            Instance::Group(g) => g.n(),
        }
    }
}

fn scalar(ring: RingSpec, v: &Value) -> Result<Scalar, String> {
    match v {
        Value::String(s) => Scalar::parse(ring, s).map_err(|e| e.to_string()),
        Value::Number(x) => match x.as_i64() {
            Some(k) => Ok(Scalar::from_i64(ring, k)),
            None => Err(format!(
                "{x}: numbers must be integers; write fractions as strings \"p/q\""
            )),
        },
        other => Err(format!("{other} is not a scalar")),
    }
}

fn matrix(ring: RingSpec, rows: &[Vec<Value>]) -> Result<DenseMatrix, String> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| scalar(ring, v))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = DenseMatrix::from_rows(ring, rows).map_err(|e| e.to_string())?;
    if !m.is_square() || m.rows() == 0 {
        return Err("matrix must be square and non-empty".into());
    }
    Ok(m)
}

pub fn parse(text: &str) -> Result<(Value, Instance), String> {
    let echo: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let spec: InstanceSpec =
        serde_json::from_value(echo.clone()).map_err(|e| format!("invalid instance: {e}"))?;
    let ring = match spec.ring {
        RingInput::Z => RingSpec::Integers,
        RingInput::Q => RingSpec::Rationals,
        RingInput::GF { p } => RingSpec::prime_field(p).map_err(|e| e.to_string())?,
    };
    let given = [
        spec.matrix.is_some(),
        spec.jordan_type.is_some(),
        spec.group.is_some(),
    ];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err("give exactly one of matrix, jordan_type, group".into());
    }
    let instance = if let Some(rows) = &spec.matrix {
        let m = matrix(ring, rows)?;
        let jt = jordan_type_of_matrix(&m).map_err(|e| e.to_string())?;
        Instance::Jordan {
            jt,
            matrix: Some(m),
        }
    } else if let Some(groups) = &spec.jordan_type {
        let groups = groups
            .iter()
            .map(|g| {
                let r = scalar(ring, &g.eigenvalue)?;
                Ok((r, g.blocks.iter().map(|b| (b.size, b.mult)).collect()))
            })
            .collect::<Result<Vec<_>, String>>()?;
        let jt = JordanType::new(ring, groups).map_err(|e| e.to_string())?;
        Instance::Jordan { jt, matrix: None }
    } else {
        let g = spec.group.as_ref().expect("checked above");
        match (&g.permutations, &g.matrices) {
            (Some(cycles), None) => {
                let largest = cycles.iter().map(|c| max_point(c)).max().unwrap_or(0);
                let n = g.n.unwrap_or(largest).max(1);
                if n < largest {
                    return Err(format!("point {largest} exceeds the degree {n}"));
                }
                let gens = cycles
                    .iter()
                    .map(|c| parse_cycles(c, n).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                Instance::Group(
                    GroupSpec::from_permutations(ring, n, &gens).map_err(|e| e.to_string())?,
                )
            }
            (None, Some(mats)) => {
                if g.n.is_some() {
                    return Err("\"n\" only applies to permutation groups".into());
                }
                let elements = mats
                    .iter()
                    .map(|m| matrix(ring, m))
                    .collect::<Result<Vec<_>, _>>()?;
                Instance::Group(
                    GroupSpec::from_matrices(ring, elements).map_err(|e| e.to_string())?,
                )
            }
            _ => return Err("group needs exactly one of permutations, matrices".into()),
        }
    };
    Ok((echo, instance))
}
