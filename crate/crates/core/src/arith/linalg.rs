use super::{DenseMatrix, RingSpec, Scalar};
use crate::error::{Error, Result};

/// Row space kept in reduced row echelon form, grown one vector at a time.
///
/// Rows are sorted by pivot column, every pivot entry is 1 and every pivot
/// column is zero outside its own row.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: RingSpec,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ring: RingSpec, width: usize) -> Result<Self> {
        ring.require_field()?;
        Ok(Echelon {
            ring,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears the pivot columns of `v` in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the row space. Returns the new pivot column, or `None`
    /// when `v` was already in the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Option<usize> {
        self.reduce(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].inv().expect("field");
        if !inv.is_one() {
            for x in v.iter_mut().skip(p) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        Some(p)
    }

    /// Coefficients of `v` against the stored rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

fn matrix_rows(a: &DenseMatrix) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    (0..a.rows()).map(move |i| (0..a.cols()).map(|j| a.get(i, j).clone()).collect())
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn rref(a: &DenseMatrix) -> Result<(Vec<Vec<Scalar>>, Vec<usize>)> {
    let mut e = Echelon::new(a.ring(), a.cols())?;
    for row in matrix_rows(a) {
        e.insert(row);
    }
    Ok((e.rows, e.pivots))
}

/// Rank; over ℤ it is computed in ℚ, which gives the same value.
pub fn rank(a: &DenseMatrix) -> Result<usize> {
    let a = match a.ring() {
        RingSpec::Integers => a.convert(RingSpec::Rationals)?,
        _ => a.clone(),
    };
    Ok(rref(&a)?.0.len())
}

/// Basis of `{x : A x = 0}` as column vectors. The basis is itself put in
/// reduced echelon form, so the output is canonical.
pub fn nullspace(a: &DenseMatrix) -> Result<Vec<DenseMatrix>> {
    let ring = a.ring();
    let n = a.cols();
    let (rows, pivots) = rref(a)?;
    let mut basis = Echelon::new(ring, n)?;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let mut v = vec![Scalar::zero(ring); n];
        v[f] = Scalar::one(ring);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[f];
        }
        basis.insert(v);
    }
    Ok(basis
        .rows
        .into_iter()
        .map(|v| DenseMatrix::column(ring, v))
        .collect())
}

/// Solves `A X = B`. Returns `Ok(None)` when some column of `B` is not in
/// the column space of `A`; free variables are set to zero.
pub fn solve_linear(a: &DenseMatrix, b: &DenseMatrix) -> Result<Option<DenseMatrix>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let n = a.cols();
    let mut x = DenseMatrix::zeros(ring, n, b.cols());
    for k in 0..b.cols() {
        let mut e = Echelon::new(ring, n + 1)?;
        for i in 0..a.rows() {
            let mut row: Vec<Scalar> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b.get(i, k).clone());
            e.insert(row);
        }
        if e.pivots.last() == Some(&n) {
            return Ok(None);
        }
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            x.set(p, k, row[n].clone());
        }
    }
    Ok(Some(x))
}

/// Incrementally assembled linear system `sum_j c_j x_j = rhs`, for systems
/// with many sparse equations where building `A` densely is wasteful.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    echelon: Echelon,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(ring: RingSpec, unknowns: usize) -> Result<Self> {
        Ok(LinearSystem {
            unknowns,
            echelon: Echelon::new(ring, unknowns + 1)?,
            inconsistent: false,
        })
    }

    /// Adds one equation given as sparse `(unknown, coefficient)` terms.
    pub fn add_equation(&mut self, terms: &[(usize, Scalar)], rhs: Scalar) {
        if self.inconsistent {
            return;
        }
        let ring = self.echelon.ring;
        let mut row = vec![Scalar::zero(ring); self.unknowns + 1];
        for (j, c) in terms {
            row[*j] = &row[*j] + c;
        }
        row[self.unknowns] = rhs;
        if self.echelon.insert(row) == Some(self.unknowns) {
            self.inconsistent = true;
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Number of independent equations so far.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// A particular solution (free unknowns set to zero).
    pub fn solution(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let ring = self.echelon.ring;
        let mut x = vec![Scalar::zero(ring); self.unknowns];
        for (row, &p) in self.echelon.rows.iter().zip(&self.echelon.pivots) {
            x[p] = row[self.unknowns].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn nullspace_of_zero_matrix_is_standard_basis() {
        let ns = nullspace(&DenseMatrix::zeros(Q, 2, 2)).unwrap();
        assert_eq!(
            ns,
            vec![
                DenseMatrix::unit(Q, 2, 1, 0, 0),
                DenseMatrix::unit(Q, 2, 1, 1, 0)
            ]
        );
    }

    #[test]
    fn nullspace_needs_a_field() {
        let a = DenseMatrix::zeros(RingSpec::Integers, 2, 2);
        assert!(matches!(nullspace(&a), Err(Error::NotAField(_))));
    }

    #[test]
    fn inconsistent_system() {
        let a = DenseMatrix::from_i64_rows(Q, &[&[1, 1], &[2, 2]]);
        let b = DenseMatrix::from_i64_rows(Q, &[&[1], &[3]]);
        assert_eq!(solve_linear(&a, &b).unwrap(), None);
        let b = DenseMatrix::from_i64_rows(Q, &[&[1], &[2]]);
        let x = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn rank_over_integers_and_prime_fields() {
        let a = DenseMatrix::from_i64_rows(RingSpec::Integers, &[&[2, 4], &[1, 2]]);
        assert_eq!(rank(&a).unwrap(), 1);
        let b = DenseMatrix::from_i64_rows(RingSpec::PrimeField(3), &[&[1, 2], &[2, 1]]);
        assert_eq!(rank(&b).unwrap(), 1);
        let b = DenseMatrix::from_i64_rows(RingSpec::PrimeField(5), &[&[1, 2], &[2, 1]]);
        assert_eq!(rank(&b).unwrap(), 2);
    }

    #[test]
    fn sparse_system_matches_dense_solver() {
        let gf = RingSpec::PrimeField(7);
        let mut sys = LinearSystem::new(gf, 3).unwrap();
        let s = |v| Scalar::from_i64(gf, v);
        sys.add_equation(&[(0, s(1)), (2, s(3))], s(4));
        sys.add_equation(&[(1, s(2))], s(6));
        let x = sys.solution().unwrap();
        assert_eq!(x, vec![s(4), s(3), s(0)]);
        sys.add_equation(&[(1, s(1))], s(1));
        assert!(!sys.is_consistent());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..5, 1usize..6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, v) in small_matrix(), p in prop::sample::select(vec![0u64, 2, 3, 7])) {
            let ring = if p == 0 { Q } else { RingSpec::PrimeField(p) };
            let a = DenseMatrix::from_fn(ring, r, c, |i, j| Scalar::from_i64(ring, v[i * c + j]));
            let ns = nullspace(&a).unwrap();
            prop_assert_eq!(rank(&a).unwrap() + ns.len(), c);
            for x in &ns {
                prop_assert!(a.mul(x).unwrap().is_zero());
            }
        }

        #[test]
        fn rref_is_canonical_under_row_shuffles((r, c, v) in small_matrix()) {
            let a = DenseMatrix::from_fn(Q, r, c, |i, j| Scalar::from_i64(Q, v[i * c + j]));
            let rev = DenseMatrix::from_fn(Q, r, c, |i, j| a.get(r - 1 - i, j).clone());
            prop_assert_eq!(rref(&a).unwrap(), rref(&rev).unwrap());
        }
    }
}
