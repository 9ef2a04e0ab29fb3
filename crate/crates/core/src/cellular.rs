//! Cell datum `(P, M, C, ι)` of the centralizer algebra and checks of the
//! cellular axioms, the cell chain and quasi-heredity.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::{AlgebraElement, BasisElement, CentralizerAlgebra};
use crate::arith::{rank, DenseMatrix, Echelon, Scalar};
use crate::error::{Error, Result};
use crate::jordan::JordanType;

/// Cell datum. The poset of every group is `1 < 2 < … < λ_1`; groups are
/// unrelated. `M(p)` is the block range `0..m_{l(p)}` of the group.
#[derive(Clone, Debug)]
pub struct CellDatum {
    algebra: CentralizerAlgebra,
    /// `C^p_ij` in `(group, p, i, j)` order, stored as `BasisElement`s
    /// `{group, row: i, col: j, level: p}`.
    basis: Vec<BasisElement>,
    position: HashMap<BasisElement, usize>,
    /// `ι` as a permutation of cell basis indices.
    involution: Vec<usize>,
}

/// Outcome of one axiom check; `counterexample` holds the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    fn ok() -> Self {
        AxiomCheck {
            pass: true,
            counterexample: None,
        }
    }

    fn fail(msg: String) -> Self {
        AxiomCheck {
            pass: false,
            counterexample: Some(msg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularityReport {
    pub c1: AxiomCheck,
    pub c2: AxiomCheck,
    pub c3: AxiomCheck,
}

impl CellularityReport {
    pub fn pass(&self) -> bool {
        self.c1.pass && self.c2.pass && self.c3.pass
    }
}

/// Surviving levels of one group's cell chain, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChain {
    pub exhaustive: Vec<usize>,
    pub formula: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellChain {
    pub groups: Vec<GroupChain>,
    pub count: usize,
}

impl CellChain {
    pub fn agree(&self) -> bool {
        self.groups.iter().all(|g| g.exhaustive == g.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHeredity {
    pub value: bool,
    /// First group with `λ_1 ≠ s`, as `(group, λ_1, s)`.
    pub witness: Option<(usize, usize, usize)>,
}

fn fmt_cell(e: &BasisElement) -> String {
    format!(
        "C^{}_{},{} (group {})",
        e.level,
        e.row + 1,
        e.col + 1,
        e.group + 1
    )
}

impl CellDatum {
    pub fn new(jt: &JordanType) -> Result<Self> {
        let algebra = CentralizerAlgebra::new(jt);
        let mut basis = Vec::new();
        for (g, gi) in algebra.block_index().groups.iter().enumerate() {
            for p in 1..=gi.lambda1() {
                let m = gi.cell_size(p);
                for i in 0..m {
                    for j in 0..m {
                        basis.push(BasisElement::new(g, i, j, p));
                    }
                }
            }
        }
        let cells: BTreeSet<_> = basis.iter().copied().collect();
        let structured: BTreeSet<_> = algebra.basis().iter().copied().collect();
        if cells != structured || cells.len() != basis.len() {
            return Err(Error::Internal(
                "cell basis differs from the structured basis".into(),
            ));
        }
        let position: HashMap<_, _> = basis.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let involution = basis
            .iter()
            .map(|e| position[&BasisElement::new(e.group, e.col, e.row, e.level)])
            .collect();
        Ok(CellDatum {
            algebra,
            basis,
            position,
            involution,
        })
    }

    pub fn algebra(&self) -> &CentralizerAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn involution_table(&self) -> &[usize] {
        &self.involution
    }

    /// Poset of group `g`: levels `1..=λ_1`.
    pub fn levels(&self, g: usize) -> std::ops::RangeInclusive<usize> {
        1..=self.algebra.group(g).lambda1()
    }

    /// `M(p)` of group `g` as 0-based block indices.
    pub fn cell_indices(&self, g: usize, p: usize) -> std::ops::Range<usize> {
        0..self.algebra.group(g).cell_size(p)
    }

    /// Swaps two entries of the involution table. Only useful for building
    /// broken data that the checker must reject.
    pub fn swap_involution_entries(&mut self, a: usize, b: usize) {
        self.involution.swap(a, b);
    }

    pub fn involution_apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.algebra.ring(), self.algebra.dim());
        for (k, e) in self.basis.iter().enumerate() {
            let c = &a.coeffs[self.algebra.position(e).expect("cell")];
            if !c.is_zero() {
                let t = &self.basis[self.involution[k]];
                out.coeffs[self.algebra.position(t).expect("cell")] = c.clone();
            }
        }
        out
    }

    /// `C^q_uv · C^p_ij` by the cellular product rule, within group `g`.
    /// Returns `(level, u, j)` of the product or `None` when it vanishes.
    #[allow(clippy::too_many_arguments)]
    pub fn product_star(
        &self,
        g: usize,
        q: usize,
        u: usize,
        v: usize,
        p: usize,
        i: usize,
        j: usize,
    ) -> Result<Option<(usize, usize, usize)>> {
        let gi = self
            .algebra
            .block_index()
            .groups
            .get(g)
            .ok_or_else(|| Error::IndexOutOfRange(format!("group {g}")))?;
        for (lvl, a, b) in [(q, u, v), (p, i, j)] {
            if lvl == 0 || lvl > gi.lambda1() || !gi.in_cell(a, lvl) || !gi.in_cell(b, lvl) {
                return Err(Error::IndexOutOfRange(format!(
                    "({a}, {b}) not in M({lvl})"
                )));
            }
        }
        if v != i {
            return Ok(None);
        }
        Ok((p + q)
            .checked_sub(gi.block_size(v))
            .filter(|&l| l >= 1)
            .map(|l| (l, u, j)))
    }

    fn unit(&self, k: usize) -> AlgebraElement {
        self.algebra.basis_element(&self.basis[k])
    }

    /// Nonzero terms of an element, keyed by cell basis index.
    fn terms(&self, a: &AlgebraElement) -> Vec<(usize, Scalar)> {
        let mut out: Vec<(usize, Scalar)> = self
            .algebra
            .basis()
            .iter()
            .zip(&a.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (self.position[e], c.clone()))
            .collect();
        out.sort_by_key(|t| t.0);
        out
    }

    /// Checks (C1)–(C3). Products come from the structure constants.
    pub fn check_cellularity(&self) -> Result<CellularityReport> {
        Ok(CellularityReport {
            c1: self.check_c1()?,
            c2: self.check_c2()?,
            c3: self.check_c3()?,
        })
    }

    fn check_c1(&self) -> Result<AxiomCheck> {
        let dim = self.algebra.dim();
        if self.basis.len() != dim {
            return Ok(AxiomCheck::fail(format!(
                "{} cell basis elements for an algebra of rank {dim}",
                self.basis.len()
            )));
        }
        let n = self.algebra.n();
        let field = self.algebra.ring().fraction_field();
        let rows = DenseMatrix::from_fn(field, dim, n * n, |k, idx| {
            let (r, c) = (idx / n, idx % n);
            let inside = self.algebra.support(&self.basis[k]).any(|s| s == (r, c));
            if inside {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        });
        let rk = rank(&rows)?;
        if rk != dim {
            return Ok(AxiomCheck::fail(format!(
                "materialized rank {rk}, expected {dim}"
            )));
        }
        Ok(AxiomCheck::ok())
    }

    fn check_c2(&self) -> Result<AxiomCheck> {
        for (k, e) in self.basis.iter().enumerate() {
            let t = self.basis[self.involution[k]];
            let want = BasisElement::new(e.group, e.col, e.row, e.level);
            if t != want {
                return Ok(AxiomCheck::fail(format!(
                    "iota({}) = {}, expected {}",
                    fmt_cell(e),
                    fmt_cell(&t),
                    fmt_cell(&want)
                )));
            }
            if self.involution[self.involution[k]] != k {
                return Ok(AxiomCheck::fail(format!("iota^2 moves {}", fmt_cell(e))));
            }
        }
        for x in 0..self.basis.len() {
            let ix = self.involution_apply(&self.unit(x));
            for y in 0..self.basis.len() {
                let lhs =
                    self.involution_apply(&self.algebra.multiply(&self.unit(x), &self.unit(y))?);
                let iy = self.involution_apply(&self.unit(y));
                let rhs = self.algebra.multiply(&iy, &ix)?;
                if lhs != rhs {
                    return Ok(AxiomCheck::fail(format!(
                        "iota(xy) != iota(y) iota(x) for x = {}, y = {}",
                        fmt_cell(&self.basis[x]),
                        fmt_cell(&self.basis[y])
                    )));
                }
            }
        }
        Ok(AxiomCheck::ok())
    }

    fn check_c3(&self) -> Result<AxiomCheck> {
        for (ka, a) in self.basis.iter().enumerate() {
            let ua = self.unit(ka);
            for g in 0..self.algebra.block_index().groups.len() {
                for p in self.levels(g) {
                    for i in self.cell_indices(g, p) {
                        // leading coefficients r_a(k, i), fixed by the first j
                        let mut lead: Option<Vec<Scalar>> = None;
                        for j in self.cell_indices(g, p) {
                            let x = BasisElement::new(g, i, j, p);
                            let prod = self
                                .algebra
                                .multiply(&ua, &self.algebra.basis_element(&x))?;
                            let mut coeffs = vec![
                                Scalar::zero(self.algebra.ring());
                                self.cell_indices(g, p).len()
                            ];
                            for (kt, c) in self.terms(&prod) {
                                let t = &self.basis[kt];
                                let lower = t.group == g && t.level < p;
                                let leading = t.group == g && t.level == p && t.col == j;
                                if leading {
                                    coeffs[t.row] = c;
                                } else if !lower {
                                    return Ok(AxiomCheck::fail(format!(
                                        "{} * {} has the term {} outside the allowed span",
                                        fmt_cell(a),
                                        fmt_cell(&x),
                                        fmt_cell(t)
                                    )));
                                }
                            }
                            match &lead {
                                None => lead = Some(coeffs),
                                Some(l) if *l != coeffs => {
                                    return Ok(AxiomCheck::fail(format!(
                                        "leading coefficients of {} * C^{p}_{},j depend on j (j = {})",
                                        fmt_cell(a),
                                        i + 1,
                                        j + 1
                                    )));
                                }
                                Some(_) => {}
                            }
                        }
                    }
                }
            }
        }
        Ok(AxiomCheck::ok())
    }

    /// Levels `p` with `C_p² ⊄ C_{p-1}` in every group, found by testing all
    /// products of materialized basis matrices against the span of
    /// `C_{p-1}`, next to the levels with `p = λ_{l(p)}`.
    pub fn cell_chain_simples(&self) -> Result<CellChain> {
        let ring = self.algebra.ring();
        ring.require_field()?;
        let n = self.algebra.n();
        let flat = |m: &DenseMatrix| m.entries().to_vec();
        let mut groups = Vec::new();
        for g in 0..self.algebra.block_index().groups.len() {
            let gi = self.algebra.group(g);
            let mut lower = Echelon::new(ring, n * n)?;
            let mut chain: Vec<DenseMatrix> = Vec::new();
            let mut exhaustive = Vec::new();
            for p in self.levels(g) {
                let level: Vec<DenseMatrix> = self
                    .basis
                    .iter()
                    .filter(|e| e.group == g && e.level == p)
                    .map(|e| self.algebra.materialize(e))
                    .collect();
                let start = chain.len();
                chain.extend(level);
                // a product escapes C_{p-1} only if one factor lies at level p
                let survives = (start..chain.len()).any(|x| {
                    chain.iter().any(|y| {
                        [chain[x].mul(y), y.mul(&chain[x])].into_iter().any(|prod| {
                            let prod = prod.expect("square");
                            !prod.is_zero() && !lower.contains(&flat(&prod))
                        })
                    })
                });
                if survives {
                    exhaustive.push(p);
                }
                for m in &chain[start..] {
                    lower.insert(flat(m));
                }
            }
            let formula = self
                .levels(g)
                .filter(|&p| p == gi.sizes[gi.l(p) - 1])
                .collect();
            groups.push(GroupChain {
                exhaustive,
                formula,
            });
        }
        let count = groups.iter().map(|c| c.exhaustive.len()).sum();
        Ok(CellChain { groups, count })
    }
}

pub fn build_cell_datum(jt: &JordanType) -> Result<CellDatum> {
    CellDatum::new(jt)
}

/// Quasi-hereditary exactly when `λ_1 = s` in every eigenvalue group.
pub fn is_quasi_hereditary(jt: &JordanType) -> Result<QuasiHeredity> {
    jt.ring().require_field()?;
    let witness = jt
        .groups()
        .iter()
        .enumerate()
        .find(|(_, g)| g.largest() != g.distinct_sizes())
        .map(|(k, g)| (k, g.largest(), g.distinct_sizes()));
    Ok(QuasiHeredity {
        value: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RingSpec;

    const Q: RingSpec = RingSpec::Rationals;

    fn datum(sizes: &[(usize, usize)]) -> CellDatum {
        CellDatum::new(&JordanType::single(Q, 1, sizes)).unwrap()
    }

    #[test]
    fn blocks_3_2_datum() {
        let d = datum(&[(3, 1), (2, 1)]);
        assert_eq!(d.levels(0), 1..=3);
        assert_eq!(d.cell_indices(0, 1), 0..2);
        assert_eq!(d.cell_indices(0, 2), 0..2);
        assert_eq!(d.cell_indices(0, 3), 0..1);
        assert_eq!(d.basis().len(), 9);
        assert!(d.check_cellularity().unwrap().pass());
    }

    #[test]
    fn full_matrix_algebra() {
        let d = datum(&[(1, 3)]);
        assert_eq!(d.levels(0), 1..=1);
        assert_eq!(d.basis().len(), 9);
        let chain = d.cell_chain_simples().unwrap();
        assert_eq!(chain.count, 1);
        assert!(chain.agree());
    }

    #[test]
    fn involution_on_elements() {
        let d = datum(&[(3, 1), (2, 1)]);
        let a = d.algebra();
        let x = a.basis_element(&BasisElement::new(0, 0, 1, 2));
        assert_eq!(
            d.involution_apply(&x),
            a.basis_element(&BasisElement::new(0, 1, 0, 2))
        );
        assert_eq!(d.involution_apply(&a.identity()), a.identity());
    }

    #[test]
    fn star_products() {
        let d = datum(&[(3, 1), (2, 1)]);
        assert_eq!(
            d.product_star(0, 3, 0, 0, 3, 0, 0).unwrap(),
            Some((3, 0, 0))
        );
        assert_eq!(
            d.product_star(0, 2, 1, 0, 2, 0, 1).unwrap(),
            Some((1, 1, 1))
        );
        assert_eq!(d.product_star(0, 2, 1, 0, 2, 1, 1).unwrap(), None);
        assert!(d.product_star(0, 3, 1, 1, 1, 0, 0).is_err());
        let a = d.algebra();
        let x = a.materialize(&BasisElement::new(0, 1, 0, 2));
        let y = a.materialize(&BasisElement::new(0, 0, 1, 2));
        assert_eq!(
            x.mul(&y).unwrap(),
            a.materialize(&BasisElement::new(0, 1, 1, 1))
        );
    }

    #[test]
    fn prime_field_and_integers() {
        let gf5 = RingSpec::PrimeField(5);
        let d = CellDatum::new(&JordanType::single(gf5, 0, &[(2, 1), (1, 1)])).unwrap();
        assert!(d.check_cellularity().unwrap().pass());
        let z = CellDatum::new(&JordanType::single(
            RingSpec::Integers,
            2,
            &[(2, 2), (1, 1)],
        ))
        .unwrap();
        assert!(z.check_cellularity().unwrap().pass());
        assert!(z.cell_chain_simples().is_err());
    }

    #[test]
    fn corrupted_involution_fails_c2() {
        let mut d = datum(&[(3, 1), (2, 1)]);
        d.swap_involution_entries(0, 1);
        let r = d.check_cellularity().unwrap();
        assert!(r.c1.pass);
        assert!(!r.c2.pass);
        assert!(r.c2.counterexample.is_some());
    }

    #[test]
    fn chains_and_quasi_heredity() {
        let chain = datum(&[(3, 1), (2, 1)]).cell_chain_simples().unwrap();
        assert_eq!(chain.groups[0].exhaustive, vec![2, 3]);
        assert!(chain.agree());
        assert_eq!(chain.count, 2);
        let jt = JordanType::single(Q, 1, &[(3, 1), (2, 1)]);
        assert_eq!(is_quasi_hereditary(&jt).unwrap().witness, Some((0, 3, 2)));

        let jt = JordanType::single(Q, 0, &[(3, 1), (2, 1), (1, 1)]);
        let chain = CellDatum::new(&jt).unwrap().cell_chain_simples().unwrap();
        assert_eq!(chain.groups[0].exhaustive, vec![1, 2, 3]);
        assert!(is_quasi_hereditary(&jt).unwrap().value);

        let jt = JordanType::multi(Q, &[(0, &[(2, 1), (1, 1)]), (1, &[(1, 1)])]);
        let chain = CellDatum::new(&jt).unwrap().cell_chain_simples().unwrap();
        assert_eq!(chain.count, 3);
        assert!(chain.agree());
    }
}
