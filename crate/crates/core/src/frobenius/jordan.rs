use std::collections::BTreeMap;

use super::{FrobeniusSystem, Subring};
use crate::algebra::{semicirculant_basis, BasisElement, CentralizerAlgebra};
use crate::arith::{DenseMatrix, LinearSystem, Scalar};
use crate::error::{Error, Result};
use crate::jordan::JordanType;

/// `E_ij` on `λ_{g(i)} x λ_{g(j)}` matrices of one eigenvalue group. Every
/// matrix unit is sent to a single `G^p_ij` or to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EijMap {
    pub rows: usize,
    pub cols: usize,
    pub rho: isize,
    /// `(row, col)` of a unit (0-based) and the level `p` of its image.
    pub terms: Vec<((usize, usize), usize)>,
}

impl EijMap {
    pub fn level_of(&self, r: usize, c: usize) -> Option<usize> {
        self.terms.iter().find(|t| t.0 == (r, c)).map(|t| t.1)
    }

    pub fn apply(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        if a.rows() != self.rows || a.cols() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "E_ij acts on {}x{} matrices",
                self.rows, self.cols
            )));
        }
        let g = semicirculant_basis(a.ring(), self.rows, self.cols);
        let mut out = DenseMatrix::zeros(a.ring(), self.rows, self.cols);
        for &((r, c), p) in &self.terms {
            let v = a.get(r, c);
            if !v.is_zero() {
                out.add_scaled(v, &g[p - 1])?;
            }
        }
        Ok(out)
    }
}

/// `a ↦ Σ_{p=1}^{ρ} Σ_{u=1}^{ρ-p+1} a_{λ_{g(i)}-u+1, ρ-p+2-u} G^p_ij`
/// with `ρ = λ_{g(i)} + λ_{g(j)} - λ_1`, and the zero map when `ρ <= 0`.
pub fn build_eij(jt: &JordanType, group: usize, i: usize, j: usize) -> Result<EijMap> {
    let algebra = CentralizerAlgebra::new(jt);
    let gi = algebra
        .block_index()
        .groups
        .get(group)
        .ok_or_else(|| Error::IndexOutOfRange(format!("group {group}")))?;
    if i >= gi.num_blocks() || j >= gi.num_blocks() {
        return Err(Error::IndexOutOfRange(format!("block pair ({i}, {j})")));
    }
    Ok(eij(gi.block_size(i), gi.block_size(j), gi.rho(i, j)))
}

fn eij(li: usize, lj: usize, rho: isize) -> EijMap {
    let mut terms = Vec::new();
    if rho > 0 {
        let rho = rho as usize;
        for p in 1..=rho {
            for u in 1..=rho - p + 1 {
                terms.push(((li - u, rho - p + 1 - u), p));
            }
        }
    }
    terms.sort();
    EijMap {
        rows: li,
        cols: lj,
        rho,
        terms,
    }
}

/// The trace `E` assembled group by group from the maps `E_ij`, with
/// `x_w = Σ_g e_{w, τ_g}` and `y_w = Σ_g e_{τ_g + λ_{g,1} - 1, w}`.
pub fn jordan_trace_system(jt: &JordanType) -> Result<FrobeniusSystem> {
    let algebra = CentralizerAlgebra::new(jt);
    let ring = jt.ring();
    let n = algebra.n();
    let idx = algebra.block_index();
    let mut images = vec![DenseMatrix::zeros(ring, n, n); n * n];
    for (g, gi) in idx.groups.iter().enumerate() {
        for bi in 0..gi.num_blocks() {
            for bj in 0..gi.num_blocks() {
                let map = eij(gi.block_size(bi), gi.block_size(bj), gi.rho(bi, bj));
                for &((r, c), p) in &map.terms {
                    let k = gi.offset + gi.start[bi] + r;
                    let l = gi.offset + gi.start[bj] + c;
                    images[k * n + l] = algebra.materialize(&BasisElement::new(g, bi, bj, p));
                }
            }
        }
    }
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for w in 0..n {
        let mut xw = DenseMatrix::zeros(ring, n, n);
        let mut yw = DenseMatrix::zeros(ring, n, n);
        for gi in &idx.groups {
            xw.set(w, gi.offset, Scalar::one(ring));
            yw.set(gi.offset + gi.lambda1() - 1, w, Scalar::one(ring));
        }
        x.push(xw);
        y.push(yw);
    }
    let basis = algebra
        .basis()
        .iter()
        .map(|e| algebra.materialize(e))
        .collect();
    FrobeniusSystem::new(Subring::Jordan(jt.clone()), ring, n, images, x, y, basis)
}

/// `d = ψ_1(diag(D_1, …))` with `D_i` the all-ones upper triangular
/// matrix of size `λ_{g(i)}`, placed on the first eigenvalue group.
pub fn separability_element(jt: &JordanType) -> DenseMatrix {
    let algebra = CentralizerAlgebra::new(jt);
    let gi = algebra.group(0);
    let mut d = DenseMatrix::zeros(jt.ring(), algebra.n(), algebra.n());
    for i in 0..gi.num_blocks() {
        for p in 1..=gi.block_size(i) {
            let f = algebra.materialize(&BasisElement::new(0, i, i, p));
            d = d.add(&f).expect("shape");
        }
    }
    d
}

/// Every eigenvalue group is a single size with `λ = 1`, i.e. `c` is
/// diagonalizable.
pub fn split_predicate(jt: &JordanType) -> bool {
    jt.is_diagonal()
}

pub fn semisimple_predicate(jt: &JordanType) -> Result<bool> {
    jt.ring().require_field()?;
    Ok(jt.is_diagonal())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    /// `z` commuting with the structured basis and with `E(z) = I`.
    pub witness: Option<DenseMatrix>,
    pub predicate: bool,
}

impl SplitReport {
    pub fn agree(&self) -> bool {
        self.witness.is_some() == self.predicate
    }
}

/// Solves `{z : z b = b z for every basis element b, E(z) = I}` over the
/// field and compares solvability with [`split_predicate`].
pub fn split_solver(jt: &JordanType) -> Result<SplitReport> {
    let ring = jt.ring();
    ring.require_field()?;
    let sys = jordan_trace_system(jt)?;
    let n = sys.n();
    let var = |k: usize, l: usize| k * n + l;
    let mut eqs: BTreeMap<(usize, usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (t, b) in sys.basis.iter().enumerate() {
        // (z b - b z)_ij = Σ_k z_ik b_kj - Σ_k b_ik z_kj
        for (k, j, v) in b.nonzero_entries() {
            for i in 0..n {
                eqs.entry((t, i, j))
                    .or_default()
                    .push((var(i, k), v.clone()));
            }
        }
        for (i, k, v) in b.nonzero_entries() {
            for j in 0..n {
                eqs.entry((t, i, j)).or_default().push((var(k, j), -v));
            }
        }
    }
    let mut linear = LinearSystem::new(ring, n * n)?;
    for terms in eqs.values() {
        linear.add_equation(terms, Scalar::zero(ring));
    }
    let mut trace_eqs: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for k in 0..n {
        for l in 0..n {
            for (r, c, v) in sys.image_of_unit(k, l).nonzero_entries() {
                trace_eqs
                    .entry((r, c))
                    .or_default()
                    .push((var(k, l), v.clone()));
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            let rhs = if r == c {
                Scalar::one(ring)
            } else {
                Scalar::zero(ring)
            };
            let terms = trace_eqs.get(&(r, c)).cloned().unwrap_or_default();
            linear.add_equation(&terms, rhs);
        }
    }
    let witness = match linear.solution() {
        None => None,
        Some(v) => {
            let z = DenseMatrix::from_vec(ring, n, n, v)?;
            if sys.apply(&z) != DenseMatrix::identity(ring, n) {
                return Err(Error::Internal("split witness fails E(z) = I".into()));
            }
            for b in &sys.basis {
                if z.mul(b)? != b.mul(&z)? {
                    return Err(Error::Internal("split witness is not central".into()));
                }
            }
            Some(z)
        }
    };
    Ok(SplitReport {
        witness,
        predicate: split_predicate(jt),
    })
}
