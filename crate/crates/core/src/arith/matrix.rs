use std::fmt;

use super::{RingSpec, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix with exact entries from a single ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    /// Matrix unit `e_{ij}` (0-based indices).
    pub fn unit(ring: RingSpec, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        m.set(i, j, Scalar::one(ring));
        m
    }

    pub fn from_fn(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.ring(), ring);
                entries.push(v);
            }
        }
        DenseMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for v in row {
                if v.ring() != ring {
                    return Err(Error::RingMismatch {
                        left: ring,
                        right: v.ring(),
                    });
                }
                entries.push(v);
            }
        }
        Ok(DenseMatrix {
            ring,
            rows: n_rows,
            cols: n_cols,
            entries,
        })
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(ring, rows.len(), n_cols, |i, j| {
            Scalar::from_i64(ring, rows[i][j])
        })
    }

    /// Column vector from a list of entries.
    pub fn column(ring: RingSpec, entries: Vec<Scalar>) -> Self {
        DenseMatrix {
            ring,
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    /// Reshapes a row-major vector of length `rows * cols`.
    pub fn from_vec(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(DenseMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.ring(), self.ring);
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / cols, k % cols, v))
    }

    fn check_same_shape(&self, other: &DenseMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        mat_mul(self, other)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DenseMatrix { entries, ..*self })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseMatrix { entries, ..*self })
    }

    /// `self += coeff * other`, skipping the zero entries of `other`.
    pub fn add_scaled(&mut self, coeff: &Scalar, other: &DenseMatrix) -> Result<()> {
        self.check_same_shape(other)?;
        if coeff.is_zero() {
            return Ok(());
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + &(coeff * b);
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        DenseMatrix { entries, ..*self }
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero(self.ring);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// The same matrix with entries re-embedded into `ring`.
    pub fn convert(&self, ring: RingSpec) -> Result<DenseMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|v| v.convert(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn place(&mut self, row: usize, col: usize, block: &DenseMatrix) -> Result<()> {
        if block.ring != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: block.ring,
            });
        }
        if row + block.rows > self.rows || col + block.cols > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} block at ({row},{col}) exceeds {}x{}",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
        Ok(())
    }

    /// Copies out the `rows x cols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(self.ring, rows, cols, |i, j| {
            self.get(row + i, col + j).clone()
        })
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: usize) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = DenseMatrix::identity(self.ring, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Exact matrix product. Zero entries of the left factor are skipped, which
/// makes products of the sparse 0/1 basis matrices cheap.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch {
            left: a.ring,
            right: b.ring,
        });
    }
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = DenseMatrix::zeros(a.ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            let unit = x.is_one();
            for j in 0..b.cols {
                let y = b.get(k, j);
                if y.is_zero() {
                    continue;
                }
                let idx = i * out.cols + j;
                let term = if unit { y.clone() } else { x * y };
                out.entries[idx] = &out.entries[idx] + &term;
            }
        }
    }
    Ok(out)
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn matrix_unit_rule() {
        let e12 = DenseMatrix::unit(Q, 3, 3, 0, 1);
        let e23 = DenseMatrix::unit(Q, 3, 3, 1, 2);
        assert_eq!(
            mat_mul(&e12, &e23).unwrap(),
            DenseMatrix::unit(Q, 3, 3, 0, 2)
        );
        assert!(mat_mul(&e23, &e12).unwrap().is_zero());
    }

    #[test]
    fn identity_is_neutral() {
        let a = DenseMatrix::from_i64_rows(
            Q,
            &[&[1, -2, 3, 0], &[4, 5, 6, 7], &[0, 0, 1, 9], &[2, 2, 2, 2]],
        );
        let id = DenseMatrix::identity(Q, 4);
        assert_eq!(mat_mul(&id, &a).unwrap(), a);
        assert_eq!(mat_mul(&a, &id).unwrap(), a);
    }

    #[test]
    fn shape_and_ring_errors() {
        let a = DenseMatrix::zeros(Q, 2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch(_))));
        let b = DenseMatrix::zeros(RingSpec::Integers, 3, 2);
        assert!(matches!(mat_mul(&a, &b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn place_and_block_round_trip() {
        let mut m = DenseMatrix::zeros(Q, 4, 4);
        let b = DenseMatrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]);
        m.place(1, 2, &b).unwrap();
        assert_eq!(m.block(1, 2, 2, 2), b);
        assert!(m.place(3, 3, &b).is_err());
    }

    #[test]
    fn conversion_between_rings() {
        let a = DenseMatrix::from_i64_rows(RingSpec::Integers, &[&[3, -1], &[7, 10]]);
        let gf5 = a.convert(RingSpec::PrimeField(5)).unwrap();
        assert_eq!(
            gf5,
            DenseMatrix::from_i64_rows(RingSpec::PrimeField(5), &[&[3, 4], &[2, 0]])
        );
        assert_eq!(
            a.convert(Q).unwrap().convert(RingSpec::Integers).unwrap(),
            a
        );
    }
}
