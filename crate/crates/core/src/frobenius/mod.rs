//! Frobenius systems `(E, x_i, y_i)` for `B ⊆ M_n(R)` and their
//! verification on matrix units.

mod group;
mod jordan;

pub use group::{
    cycle_type, dimension_obstruction, find_free_point, fixed_subalgebra, group_split_witness,
    group_trace_candidate, group_trace_system, max_point, parse_cycles, perm_free_point_criterion,
    GroupSpec,
};
pub use jordan::{
    build_eij, jordan_trace_system, semisimple_predicate, separability_element, split_predicate,
    split_solver, EijMap, SplitReport,
};

use crate::arith::{DenseMatrix, Echelon, RingSpec, Scalar};
use crate::cellular::AxiomCheck;
use crate::error::{Error, Result};
use crate::jordan::JordanType;

#[derive(Clone, Debug)]
pub enum Subring {
    Group { spec: GroupSpec, point: usize },
    Jordan(JordanType),
}

/// `E` stored as the images of the `n²` matrix units, with dual families
/// and a basis of the subalgebra `B`.
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    pub subring: Subring,
    ring: RingSpec,
    n: usize,
    /// `E(e_kl)` at index `k * n + l`.
    images: Vec<DenseMatrix>,
    pub x: Vec<DenseMatrix>,
    pub y: Vec<DenseMatrix>,
    pub basis: Vec<DenseMatrix>,
}

impl FrobeniusSystem {
    pub fn new(
        subring: Subring,
        ring: RingSpec,
        n: usize,
        images: Vec<DenseMatrix>,
        x: Vec<DenseMatrix>,
        y: Vec<DenseMatrix>,
        basis: Vec<DenseMatrix>,
    ) -> Result<Self> {
        if images.len() != n * n || x.len() != y.len() {
            return Err(Error::DimensionMismatch(
                "malformed Frobenius system".into(),
            ));
        }
        for m in images.iter().chain(&x).chain(&y).chain(&basis) {
            if m.rows() != n || m.cols() != n || m.ring() != ring {
                return Err(Error::DimensionMismatch(
                    "every matrix of the system must be n x n over the system's ring".into(),
                ));
            }
        }
        Ok(FrobeniusSystem {
            subring,
            ring,
            n,
            images,
            x,
            y,
            basis,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image_of_unit(&self, k: usize, l: usize) -> &DenseMatrix {
        &self.images[k * self.n + l]
    }

    /// `E(a)`, summing over the nonzero entries of `a`.
    pub fn apply(&self, a: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.ring, self.n, self.n);
        for (k, l, c) in a.nonzero_entries() {
            out.add_scaled(c, &self.images[k * self.n + l])
                .expect("shape");
        }
        out
    }
}

/// Decides membership in the span of a fixed list of matrices and returns
/// coordinates against that list. Over ℤ the coordinates are computed in ℚ
/// and must be integral.
pub struct Membership {
    ring: RingSpec,
    width: usize,
    len: usize,
    echelon: Echelon,
}

impl Membership {
    pub fn new(ring: RingSpec, n: usize, basis: &[DenseMatrix]) -> Result<Self> {
        let field = ring.fraction_field();
        let width = n * n;
        let mut echelon = Echelon::new(field, width + basis.len())?;
        for (k, b) in basis.iter().enumerate() {
            let mut row: Vec<Scalar> = b.convert(field)?.into_entries();
            row.extend((0..basis.len()).map(|t| {
                if t == k {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                }
            }));
            if echelon.insert(row).is_some_and(|p| p >= width) {
                return Err(Error::Precondition(
                    "basis matrices are linearly dependent".into(),
                ));
            }
        }
        Ok(Membership {
            ring,
            width,
            len: basis.len(),
            echelon,
        })
    }

    pub fn coordinates(&self, m: &DenseMatrix) -> Option<Vec<Scalar>> {
        let field = self.ring.fraction_field();
        let mut row = m.convert(field).ok()?.into_entries();
        row.extend((0..self.len).map(|_| Scalar::zero(field)));
        self.echelon.reduce(&mut row);
        if row[..self.width].iter().any(|x| !x.is_zero()) {
            return None;
        }
        row[self.width..]
            .iter()
            .map(|c| (-c).convert(self.ring).ok())
            .collect()
    }

    pub fn contains(&self, m: &DenseMatrix) -> bool {
        self.coordinates(m).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    /// `E(M_n) ⊆ B`
    pub image: AxiomCheck,
    /// `E(ba) = bE(a)` and `E(ab) = E(a)b`
    pub bimodule: AxiomCheck,
    /// `Σ x_i E(y_i a) = a`
    pub dual_left: AxiomCheck,
    /// `Σ E(a x_i) y_i = a`
    pub dual_right: AxiomCheck,
}

impl FrobeniusReport {
    pub fn pass(&self) -> bool {
        self.image.pass && self.bimodule.pass && self.dual_left.pass && self.dual_right.pass
    }
}

fn pass() -> AxiomCheck {
    AxiomCheck {
        pass: true,
        counterexample: None,
    }
}

fn fail(msg: String) -> AxiomCheck {
    AxiomCheck {
        pass: false,
        counterexample: Some(msg),
    }
}

/// Checks the system on all `n²` matrix units.
pub fn check_frobenius_system(sys: &FrobeniusSystem) -> Result<FrobeniusReport> {
    let n = sys.n;
    let ring = sys.ring;
    let member = Membership::new(ring, n, &sys.basis)?;
    let units = || (0..n).flat_map(move |k| (0..n).map(move |l| (k, l)));

    let mut image = pass();
    for (k, l) in units() {
        if !member.contains(sys.image_of_unit(k, l)) {
            image = fail(format!("E(e_{},{}) is not in the subalgebra", k + 1, l + 1));
            break;
        }
    }

    let mut bimodule = pass();
    'outer: for (t, b) in sys.basis.iter().enumerate() {
        for (k, l) in units() {
            let a = DenseMatrix::unit(ring, n, n, k, l);
            let ea = sys.image_of_unit(k, l);
            if sys.apply(&b.mul(&a)?) != b.mul(ea)? {
                bimodule = fail(format!(
                    "E(b a) != b E(a) for basis element {} and a = e_{},{}",
                    t + 1,
                    k + 1,
                    l + 1
                ));
                break 'outer;
            }
            if sys.apply(&a.mul(b)?) != ea.mul(b)? {
                bimodule = fail(format!(
                    "E(a b) != E(a) b for basis element {} and a = e_{},{}",
                    t + 1,
                    k + 1,
                    l + 1
                ));
                break 'outer;
            }
        }
    }

    let mut dual_left = pass();
    let mut dual_right = pass();
    for (k, l) in units() {
        let a = DenseMatrix::unit(ring, n, n, k, l);
        if dual_left.pass {
            let mut s = DenseMatrix::zeros(ring, n, n);
            for (x, y) in sys.x.iter().zip(&sys.y) {
                s = s.add(&x.mul(&sys.apply(&y.mul(&a)?))?)?;
            }
            if s != a {
                dual_left = fail(format!(
                    "sum x_i E(y_i a) != a for a = e_{},{}",
                    k + 1,
                    l + 1
                ));
            }
        }
        if dual_right.pass {
            let mut s = DenseMatrix::zeros(ring, n, n);
            for (x, y) in sys.x.iter().zip(&sys.y) {
                s = s.add(&sys.apply(&a.mul(x)?).mul(y)?)?;
            }
            if s != a {
                dual_right = fail(format!(
                    "sum E(a x_i) y_i != a for a = e_{},{}",
                    k + 1,
                    l + 1
                ));
            }
        }
    }

    Ok(FrobeniusReport {
        image,
        bimodule,
        dual_left,
        dual_right,
    })
}

/// `d` commutes with `B` and `Σ x_w d y_w = I`.
pub fn check_separability(sys: &FrobeniusSystem, d: &DenseMatrix) -> Result<AxiomCheck> {
    for (t, b) in sys.basis.iter().enumerate() {
        if d.mul(b)? != b.mul(d)? {
            return Ok(fail(format!(
                "d does not commute with basis element {}",
                t + 1
            )));
        }
    }
    let mut s = DenseMatrix::zeros(sys.ring, sys.n, sys.n);
    for (x, y) in sys.x.iter().zip(&sys.y) {
        s = s.add(&x.mul(d)?.mul(y)?)?;
    }
    if s != DenseMatrix::identity(sys.ring, sys.n) {
        return Ok(fail("sum x_w d y_w != I".into()));
    }
    Ok(pass())
}
