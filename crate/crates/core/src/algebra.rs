//! The centralizer algebra of a Jordan-block matrix in its structured basis.

use std::collections::{BTreeSet, HashMap};

use crate::arith::{DenseMatrix, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::jordan::{BlockIndex, GroupIndex, JordanType};

/// `F^p_ij` of an eigenvalue group: block row `row`, block column `col`
/// (both 0-based) and level `p` with `1 <= p <= θ_ij`.
///
/// The derived order `(group, row, col, level)` is the coefficient layout
/// of [`AlgebraElement`] and of every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub group: usize,
    pub row: usize,
    pub col: usize,
    pub level: usize,
}

impl BasisElement {
    pub fn new(group: usize, row: usize, col: usize, level: usize) -> Self {
        BasisElement {
            group,
            row,
            col,
            level,
        }
    }
}

/// `G^1, …, G^{min(m,n)}` spanning `{a : J_m a = a J_n}` for nilpotent
/// Jordan blocks, with `G^p = Σ_{u=1}^{p} e_{p-u+1, n-u+1}`.
pub fn semicirculant_basis(ring: RingSpec, m: usize, n: usize) -> Vec<DenseMatrix> {
    (1..=m.min(n))
        .map(|p| {
            let mut g = DenseMatrix::zeros(ring, m, n);
            for u in 1..=p {
                g.set(p - u, n - u, Scalar::one(ring));
            }
            g
        })
        .collect()
}

/// `Σ_i Σ_j (m_ij² - m_{i,j-1}²) λ_ij`.
pub fn rank_formula(jt: &JordanType) -> usize {
    let idx = BlockIndex::new(jt);
    idx.groups
        .iter()
        .map(|g| {
            (1..g.m.len())
                .map(|k| (g.m[k] * g.m[k] - g.m[k - 1] * g.m[k - 1]) * g.sizes[k - 1])
                .sum::<usize>()
        })
        .sum()
}

/// The basis elements `F^p_ij` in `(group, i, j, p)` order.
pub fn structured_basis(jt: &JordanType) -> Vec<BasisElement> {
    CentralizerAlgebra::new(jt).basis().to_vec()
}

/// Coefficients over the structured basis, in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn zero(ring: RingSpec, dim: usize) -> Self {
        AlgebraElement {
            coeffs: vec![Scalar::zero(ring); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// `S_n(c, R)` for a Jordan-block matrix `c`, with its structured basis.
#[derive(Clone, Debug)]
pub struct CentralizerAlgebra {
    jt: JordanType,
    index: BlockIndex,
    basis: Vec<BasisElement>,
    position: HashMap<BasisElement, usize>,
}

impl CentralizerAlgebra {
    pub fn new(jt: &JordanType) -> Self {
        let index = BlockIndex::new(jt);
        let mut basis = Vec::new();
        for (g, gi) in index.groups.iter().enumerate() {
            for i in 0..gi.num_blocks() {
                for j in 0..gi.num_blocks() {
                    for p in 1..=gi.theta(i, j) {
                        basis.push(BasisElement::new(g, i, j, p));
                    }
                }
            }
        }
        let position = basis.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        CentralizerAlgebra {
            jt: jt.clone(),
            index,
            basis,
            position,
        }
    }

    pub fn jordan_type(&self) -> &JordanType {
        &self.jt
    }

    pub fn ring(&self) -> RingSpec {
        self.jt.ring()
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    pub fn block_index(&self) -> &BlockIndex {
        &self.index
    }

    pub fn group(&self, g: usize) -> &GroupIndex {
        &self.index.groups[g]
    }

    /// The structured basis in `(group, row, col, level)` order.
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, e: &BasisElement) -> Option<usize> {
        self.position.get(e).copied()
    }

    pub fn is_valid(&self, e: &BasisElement) -> bool {
        self.position.contains_key(e)
    }

    /// Product of two basis elements by the closed form: zero across groups,
    /// when the inner blocks differ, or when `p + q - λ_{g(k)} < 1`.
    pub fn multiply_basis(&self, x: &BasisElement, y: &BasisElement) -> Option<BasisElement> {
        if x.group != y.group || x.col != y.row {
            return None;
        }
        let lk = self.group(x.group).block_size(x.col);
        let level = (x.level + y.level).checked_sub(lk).filter(|&l| l >= 1)?;
        Some(BasisElement::new(x.group, x.row, y.col, level))
    }

    /// Matrix positions (row, col) of the ones of `F^p_ij` in the full matrix.
    pub fn support(&self, e: &BasisElement) -> impl Iterator<Item = (usize, usize)> {
        let gi = self.group(e.group);
        let r0 = gi.offset + gi.start[e.row];
        let c_end = gi.offset + gi.end(e.col);
        let p = e.level;
        (1..=p).map(move |u| (r0 + p - u, c_end - u))
    }

    pub fn materialize(&self, e: &BasisElement) -> DenseMatrix {
        let ring = self.ring();
        let mut m = DenseMatrix::zeros(ring, self.n(), self.n());
        for (r, c) in self.support(e) {
            m.set(r, c, Scalar::one(ring));
        }
        m
    }

    pub fn materialize_element(&self, a: &AlgebraElement) -> DenseMatrix {
        let ring = self.ring();
        let mut m = DenseMatrix::zeros(ring, self.n(), self.n());
        for (e, c) in self.basis.iter().zip(&a.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (r, col) in self.support(e) {
                let v = m.get(r, col) + c;
                m.set(r, col, v);
            }
        }
        m
    }

    /// Reads the coordinates of a matrix of the algebra, or `None` when the
    /// matrix does not lie in the span of the structured basis.
    pub fn element_from_matrix(&self, m: &DenseMatrix) -> Option<AlgebraElement> {
        if m.rows() != self.n() || m.cols() != self.n() || m.ring() != self.ring() {
            return None;
        }
        let coeffs: Vec<Scalar> = self
            .basis
            .iter()
            .map(|e| {
                let (r, c) = self.support(e).next().expect("level >= 1");
                m.get(r, c).clone()
            })
            .collect();
        let a = AlgebraElement { coeffs };
        (self.materialize_element(&a) == *m).then_some(a)
    }

    pub fn basis_element(&self, e: &BasisElement) -> AlgebraElement {
        let mut a = AlgebraElement::zero(self.ring(), self.dim());
        a.coeffs[self.position[e]] = Scalar::one(self.ring());
        a
    }

    /// `Σ F^{λ}_{ii}`
    pub fn identity(&self) -> AlgebraElement {
        let mut a = AlgebraElement::zero(self.ring(), self.dim());
        for (g, gi) in self.index.groups.iter().enumerate() {
            for i in 0..gi.num_blocks() {
                let e = BasisElement::new(g, i, i, gi.block_size(i));
                a.coeffs[self.position[&e]] = Scalar::one(self.ring());
            }
        }
        a
    }

    /// Bilinear extension of [`Self::multiply_basis`].
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        if a.coeffs.len() != self.dim() || b.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch("coefficient vector length".into()));
        }
        for c in a.coeffs.iter().chain(&b.coeffs) {
            if c.ring() != self.ring() {
                return Err(Error::RingMismatch {
                    left: self.ring(),
                    right: c.ring(),
                });
            }
        }
        // nonzero terms of b keyed by (group, block row)
        let mut by_row: HashMap<(usize, usize), Vec<(BasisElement, &Scalar)>> = HashMap::new();
        for (e, c) in self.basis.iter().zip(&b.coeffs) {
            if !c.is_zero() {
                by_row.entry((e.group, e.row)).or_default().push((*e, c));
            }
        }
        let mut out = AlgebraElement::zero(self.ring(), self.dim());
        for (x, cx) in self.basis.iter().zip(&a.coeffs) {
            if cx.is_zero() {
                continue;
            }
            let Some(terms) = by_row.get(&(x.group, x.col)) else {
                continue;
            };
            for (y, cy) in terms {
                if let Some(z) = self.multiply_basis(x, y) {
                    let k = self.position[&z];
                    out.coeffs[k] = &out.coeffs[k] + &(cx * *cy);
                }
            }
        }
        Ok(out)
    }

    fn require_basic_field(&self, what: &str) -> Result<()> {
        self.ring().require_field()?;
        if self.index.groups.len() != 1 || self.group(0).mults.iter().any(|&b| b != 1) {
            return Err(Error::Precondition(format!(
                "{what} needs a single eigenvalue with all multiplicities 1; use the oracle radical"
            )));
        }
        Ok(())
    }

    /// Radical basis for a single eigenvalue with all multiplicities 1: the
    /// structured basis without the diagonal tops `F^{λ_i}_{ii}`.
    pub fn radical_basis_basic(&self) -> Result<Vec<BasisElement>> {
        self.require_basic_field("the radical formula")?;
        let gi = self.group(0);
        Ok(self
            .basis
            .iter()
            .filter(|e| !(e.row == e.col && e.level == gi.block_size(e.row)))
            .copied()
            .collect())
    }

    /// `dim f_i S f_j` over all blocks, block-diagonal across groups.
    pub fn cartan_dims(&self) -> Vec<Vec<usize>> {
        let total: usize = self.index.groups.iter().map(GroupIndex::num_blocks).sum();
        let mut table = vec![vec![0; total]; total];
        let mut base = 0;
        for gi in &self.index.groups {
            for i in 0..gi.num_blocks() {
                for j in 0..gi.num_blocks() {
                    table[base + i][base + j] = gi.theta(i, j);
                }
            }
            base += gi.num_blocks();
        }
        table
    }

    /// Arrow counts of the Gabriel quiver from `rad / rad²`, for a single
    /// eigenvalue with all multiplicities 1. When the sizes are `s, s-1, …, 1`
    /// the Auslander-algebra relations are checked as matrix identities, and
    /// for two blocks `βαβα = 0` is checked as well.
    pub fn gabriel_quiver(&self) -> Result<Quiver> {
        let rad = self.radical_basis_basic()?;
        let mut rad2: BTreeSet<BasisElement> = BTreeSet::new();
        for x in &rad {
            for y in &rad {
                if let Some(z) = self.multiply_basis(x, y) {
                    rad2.insert(z);
                }
            }
        }
        let gi = self.group(0);
        let s = gi.num_blocks();
        let mut arrows = vec![vec![0; s]; s];
        for e in rad.iter().filter(|e| !rad2.contains(e)) {
            arrows[e.row][e.col] += 1;
        }
        let lambda = &gi.sizes;
        let alpha = |i: usize| self.materialize(&BasisElement::new(0, i, i + 1, lambda[i + 1]));
        let beta = |i: usize| self.materialize(&BasisElement::new(0, i + 1, i, lambda[i + 1]));
        let mut relations = Vec::new();
        if (0..s).all(|i| lambda[i] == s - i) && s >= 2 {
            let ba = beta(s - 2).mul(&alpha(s - 2))?;
            relations.push(Relation {
                text: format!("beta_{0} alpha_{0} = 0", s - 1),
                holds: ba.is_zero(),
            });
            for i in 1..s - 1 {
                let lhs = alpha(i).mul(&beta(i))?;
                let rhs = beta(i - 1).mul(&alpha(i - 1))?;
                relations.push(Relation {
                    text: format!("alpha_{} beta_{} = beta_{} alpha_{}", i + 1, i + 1, i, i),
                    holds: lhs == rhs,
                });
            }
        }
        if s == 2 {
            let (a, b) = (alpha(0), beta(0));
            let w = b.mul(&a)?.mul(&b)?.mul(&a)?;
            relations.push(Relation {
                text: "beta alpha beta alpha = 0".into(),
                holds: w.is_zero(),
            });
        }
        Ok(Quiver {
            vertices: s,
            arrows,
            relations,
        })
    }

    /// Per-group block types; the algebra is the product of their centralizers.
    pub fn product_decomposition(&self) -> Vec<(Scalar, JordanType)> {
        self.jt
            .split_groups()
            .into_iter()
            .map(|t| (t.groups()[0].eigenvalue.clone(), t))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `arrows[u][v]`: number of arrows from vertex `u` to vertex `v`.
    pub arrows: Vec<Vec<usize>>,
    pub relations: Vec<Relation>,
}
