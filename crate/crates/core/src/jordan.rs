//! Block types of Jordan-block matrices and the index bookkeeping around them.
//!
//! Indices are 0-based throughout the library: blocks `i`, size classes
//! `g(i)`, matrix rows and columns. Levels `p` stay 1-based because level 0
//! never denotes a basis element.

use std::collections::BTreeMap;

use crate::arith::{charpoly, rank, DenseMatrix, RingSpec, Scalar};
use crate::error::{Error, Result};

/// One eigenvalue together with its Jordan blocks, sizes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenGroup {
    pub eigenvalue: Scalar,
    /// `(size, multiplicity)` pairs.
    pub blocks: Vec<(usize, usize)>,
}

impl EigenGroup {
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(|b| b.0)
    }

    /// `n_i`, the dimension this group occupies.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(l, b)| l * b).sum()
    }

    /// Number of distinct block sizes `s_i`.
    pub fn distinct_sizes(&self) -> usize {
        self.blocks.len()
    }

    pub fn largest(&self) -> usize {
        self.blocks[0].0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanType {
    ring: RingSpec,
    groups: Vec<EigenGroup>,
}

impl JordanType {
    /// Builds a block type. Within a group, blocks may be listed in any
    /// order and sizes may repeat; equal sizes are merged and the list is
    /// sorted by decreasing size. Groups keep the given order.
    pub fn new(ring: RingSpec, groups: Vec<(Scalar, Vec<(usize, usize)>)>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidJordanType("no eigenvalue groups".into()));
        }
        let mut out: Vec<EigenGroup> = Vec::with_capacity(groups.len());
        for (eigenvalue, blocks) in groups {
            if eigenvalue.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: eigenvalue.ring(),
                });
            }
            if out.iter().any(|g| g.eigenvalue == eigenvalue) {
                return Err(Error::InvalidJordanType(format!(
                    "eigenvalue {eigenvalue} appears in two groups"
                )));
            }
            let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
            for (size, mult) in blocks {
                if size == 0 || mult == 0 {
                    return Err(Error::InvalidJordanType(
                        "block sizes and multiplicities must be positive".into(),
                    ));
                }
                *merged.entry(size).or_default() += mult;
            }
            if merged.is_empty() {
                return Err(Error::InvalidJordanType(format!(
                    "eigenvalue {eigenvalue} has no blocks"
                )));
            }
            out.push(EigenGroup {
                eigenvalue,
                blocks: merged.into_iter().rev().collect(),
            });
        }
        Ok(JordanType { ring, groups: out })
    }

    /// Single eigenvalue given as an integer; panics on invalid input.
    /// Meant for tests and examples.
    pub fn single(ring: RingSpec, eigenvalue: i64, blocks: &[(usize, usize)]) -> Self {
        Self::new(
            ring,
            vec![(Scalar::from_i64(ring, eigenvalue), blocks.to_vec())],
        )
        .expect("valid block type")
    }

    /// Several eigenvalue groups with integer eigenvalues; panics on invalid
    /// input.
    pub fn multi(ring: RingSpec, groups: &[(i64, &[(usize, usize)])]) -> Self {
        Self::new(
            ring,
            groups
                .iter()
                .map(|(r, b)| (Scalar::from_i64(ring, *r), b.to_vec()))
                .collect(),
        )
        .expect("valid block type")
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn n(&self) -> usize {
        self.groups.iter().map(EigenGroup::dim).sum()
    }

    /// The same block type with eigenvalues moved into another ring.
    pub fn convert(&self, ring: RingSpec) -> Result<Self> {
        let groups = self
            .groups
            .iter()
            .map(|g| Ok((g.eigenvalue.convert(ring)?, g.blocks.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, groups)
    }

    /// Each eigenvalue group as a block type of its own.
    pub fn split_groups(&self) -> Vec<JordanType> {
        self.groups
            .iter()
            .map(|g| JordanType {
                ring: self.ring,
                groups: vec![g.clone()],
            })
            .collect()
    }

    /// True when every group consists of 1x1 blocks only, i.e. the matrix is
    /// diagonalizable with the given eigenvalues.
    pub fn is_diagonal(&self) -> bool {
        self.groups
            .iter()
            .all(|g| g.blocks.len() == 1 && g.blocks[0].0 == 1)
    }
}

/// Index data of one eigenvalue group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIndex {
    /// `λ_1 > … > λ_s`
    pub sizes: Vec<usize>,
    pub mults: Vec<usize>,
    /// `m_0 = 0 < m_1 < … < m_s`
    pub m: Vec<usize>,
    /// size class `g(i)` of every block, 0-based
    pub class: Vec<usize>,
    /// first row of every block, relative to the group
    pub start: Vec<usize>,
    /// `τ_{i-1}`, first row of the group in the full matrix
    pub offset: usize,
    pub dim: usize,
}

impl GroupIndex {
    fn new(group: &EigenGroup, offset: usize) -> Self {
        let sizes: Vec<usize> = group.sizes().collect();
        let mults: Vec<usize> = group.blocks.iter().map(|b| b.1).collect();
        let mut m = vec![0];
        let mut class = Vec::new();
        let mut start = Vec::new();
        let mut row = 0;
        for (g, (&l, &b)) in sizes.iter().zip(&mults).enumerate() {
            m.push(m[g] + b);
            for _ in 0..b {
                class.push(g);
                start.push(row);
                row += l;
            }
        }
        GroupIndex {
            sizes,
            mults,
            m,
            class,
            start,
            offset,
            dim: row,
        }
    }

    /// `m_s`, the number of Jordan blocks.
    pub fn num_blocks(&self) -> usize {
        self.class.len()
    }

    /// `s`, the number of distinct sizes.
    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn lambda1(&self) -> usize {
        self.sizes[0]
    }

    /// `λ_{g(i)}`
    pub fn block_size(&self, i: usize) -> usize {
        self.sizes[self.class[i]]
    }

    /// `h(i)`, 1-based position of block `i` among the blocks of its size.
    pub fn h(&self, i: usize) -> usize {
        i - self.m[self.class[i]] + 1
    }

    /// `n_{g(i)h(i)}`: one past the last row of block `i`, relative to the group.
    pub fn end(&self, i: usize) -> usize {
        self.start[i] + self.block_size(i)
    }

    pub fn theta(&self, i: usize, j: usize) -> usize {
        self.block_size(i).min(self.block_size(j))
    }

    pub fn rho(&self, i: usize, j: usize) -> isize {
        self.block_size(i) as isize + self.block_size(j) as isize - self.lambda1() as isize
    }

    /// `l(p)` as a count: the number of sizes that are at least `p`.
    /// Read as a 1-based size class, this is the class of level `p`.
    pub fn l(&self, p: usize) -> usize {
        self.sizes.iter().filter(|&&l| l >= p).count()
    }

    /// `|M(p)| = m_{l(p)}`; `M(p)` is the block range `0..cell_size(p)`.
    pub fn cell_size(&self, p: usize) -> usize {
        self.m[self.l(p)]
    }

    pub fn in_cell(&self, i: usize, p: usize) -> bool {
        i < self.cell_size(p)
    }

    pub fn theta_table(&self) -> Vec<Vec<usize>> {
        let k = self.num_blocks();
        (0..k)
            .map(|i| (0..k).map(|j| self.theta(i, j)).collect())
            .collect()
    }

    /// Group-local block containing row `r`, with the row inside the block.
    pub fn locate(&self, r: usize) -> (usize, usize) {
        let i = self.start.partition_point(|&s| s <= r) - 1;
        (i, r - self.start[i])
    }
}

/// Index data for a whole block type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIndex {
    pub groups: Vec<GroupIndex>,
    /// `τ_0 = 0, τ_1, …, τ_t = n`
    pub tau: Vec<usize>,
}

impl BlockIndex {
    pub fn new(jt: &JordanType) -> Self {
        let mut tau = vec![0];
        let mut groups = Vec::new();
        for g in jt.groups() {
            let offset = *tau.last().unwrap();
            let gi = GroupIndex::new(g, offset);
            tau.push(offset + gi.dim);
            groups.push(gi);
        }
        BlockIndex { groups, tau }
    }

    pub fn n(&self) -> usize {
        *self.tau.last().unwrap()
    }

    /// Group containing row `r` of the full matrix.
    pub fn group_of(&self, r: usize) -> usize {
        self.tau.partition_point(|&t| t <= r) - 1
    }
}

pub fn block_index(jt: &JordanType) -> BlockIndex {
    BlockIndex::new(jt)
}

/// The block-diagonal Jordan matrix of the given type.
pub fn assemble_matrix(jt: &JordanType) -> DenseMatrix {
    let ring = jt.ring();
    let idx = BlockIndex::new(jt);
    let mut c = DenseMatrix::zeros(ring, jt.n(), jt.n());
    for (g, gi) in jt.groups().iter().zip(&idx.groups) {
        for i in 0..gi.num_blocks() {
            let s = gi.offset + gi.start[i];
            let l = gi.block_size(i);
            for k in 0..l {
                c.set(s + k, s + k, g.eigenvalue.clone());
                if k + 1 < l {
                    c.set(s + k, s + k + 1, Scalar::one(ring));
                }
            }
        }
    }
    c
}

fn check_group(jt: &JordanType, group: usize) -> Result<()> {
    if group >= jt.groups().len() {
        return Err(Error::IndexOutOfRange(format!(
            "group {group} of {}",
            jt.groups().len()
        )));
    }
    Ok(())
}

fn check_block(idx: &BlockIndex, group: usize, i: usize) -> Result<()> {
    if i >= idx.groups[group].num_blocks() {
        return Err(Error::IndexOutOfRange(format!(
            "block {i} of {} in group {group}",
            idx.groups[group].num_blocks()
        )));
    }
    Ok(())
}

/// `f_i`: the identity on block `i` of `group`.
pub fn idempotent_f(jt: &JordanType, group: usize, i: usize) -> Result<DenseMatrix> {
    check_group(jt, group)?;
    let idx = BlockIndex::new(jt);
    check_block(&idx, group, i)?;
    let gi = &idx.groups[group];
    let mut f = DenseMatrix::zeros(jt.ring(), jt.n(), jt.n());
    for r in gi.offset + gi.start[i]..gi.offset + gi.end(i) {
        f.set(r, r, Scalar::one(jt.ring()));
    }
    Ok(f)
}

/// `ε_i`: the identity on the rows of eigenvalue group `group`.
pub fn idempotent_eps(jt: &JordanType, group: usize) -> Result<DenseMatrix> {
    check_group(jt, group)?;
    let idx = BlockIndex::new(jt);
    let mut e = DenseMatrix::zeros(jt.ring(), jt.n(), jt.n());
    for r in idx.tau[group]..idx.tau[group + 1] {
        e.set(r, r, Scalar::one(jt.ring()));
    }
    Ok(e)
}

/// `φ_ij`: places a `λ_{g(i)} x λ_{g(j)}` matrix at block position `(i, j)`.
pub fn embed_phi(
    jt: &JordanType,
    group: usize,
    i: usize,
    j: usize,
    b: &DenseMatrix,
) -> Result<DenseMatrix> {
    check_group(jt, group)?;
    let idx = BlockIndex::new(jt);
    check_block(&idx, group, i)?;
    check_block(&idx, group, j)?;
    let gi = &idx.groups[group];
    if b.rows() != gi.block_size(i) || b.cols() != gi.block_size(j) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{} block, got {}x{}",
            gi.block_size(i),
            gi.block_size(j),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = DenseMatrix::zeros(jt.ring(), jt.n(), jt.n());
    out.place(gi.offset + gi.start[i], gi.offset + gi.start[j], b)?;
    Ok(out)
}

/// `ψ_j`: places an `n_j x n_j` matrix on the diagonal slot of group `group`.
pub fn embed_psi(jt: &JordanType, group: usize, x: &DenseMatrix) -> Result<DenseMatrix> {
    check_group(jt, group)?;
    let idx = BlockIndex::new(jt);
    let nj = idx.groups[group].dim;
    if x.rows() != nj || x.cols() != nj {
        return Err(Error::DimensionMismatch(format!(
            "expected {nj}x{nj}, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let mut out = DenseMatrix::zeros(jt.ring(), jt.n(), jt.n());
    out.place(idx.tau[group], idx.tau[group], x)?;
    Ok(out)
}

/// Recovers the block type of a matrix whose characteristic polynomial
/// splits over its ring. Block sizes come from the rank sequence of
/// `(c - rI)^k`. Integer matrices are analysed over ℚ and must have integer
/// eigenvalues. Eigenvalue groups are returned in increasing order.
pub fn jordan_type_of_matrix(c: &DenseMatrix) -> Result<JordanType> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    let ring = c.ring();
    let work = c.convert(ring.fraction_field())?;
    let field = work.ring();
    let n = c.rows();
    let roots = charpoly(&work)?.roots()?;
    let found: usize = roots.iter().map(|r| r.1).sum();
    if found < n {
        return Err(Error::NotSplit(format!(
            "only {found} of {n} eigenvalues lie in {field}"
        )));
    }
    let mut groups = Vec::new();
    for (r, mult) in roots {
        let shifted = work.sub(&DenseMatrix::identity(field, n).scale(&r))?;
        // ranks[k] = rank((c - rI)^k)
        let mut ranks = vec![n];
        let mut power = DenseMatrix::identity(field, n);
        while ranks.len() <= mult {
            power = power.mul(&shifted)?;
            let rk = rank(&power)?;
            let done = Some(&rk) == ranks.last();
            ranks.push(rk);
            if done {
                break;
            }
        }
        let at_least = |k: usize| -> usize {
            if k < ranks.len() {
                ranks[k - 1] - ranks[k]
            } else {
                0
            }
        };
        let mut blocks = Vec::new();
        for k in 1..ranks.len() {
            let b = at_least(k) - at_least(k + 1);
            if b > 0 {
                blocks.push((k, b));
            }
        }
        let eigenvalue = r
            .convert(ring)
            .map_err(|_| Error::NotSplit(format!("eigenvalue {r} does not lie in {ring}")))?;
        groups.push((eigenvalue, blocks));
    }
    let jt = JordanType::new(ring, groups)?;
    if jt.n() != n {
        return Err(Error::Internal(
            "rank sequence does not account for every row".into(),
        ));
    }
    Ok(jt)
}
