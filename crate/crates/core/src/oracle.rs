//! Brute-force linear algebra on raw matrices, used to cross-check the
//! structural formulas. Nothing here looks at block types or bases.

use crate::arith::{nullspace, DenseMatrix, Echelon, RingSpec, Scalar};
use crate::error::{Error, Result};

/// A subspace of `M_n` kept as an echelonized list of flattened matrices.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    n: usize,
    echelon: Echelon,
}

fn flatten(m: &DenseMatrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

impl SpanBasis {
    pub fn new(ring: RingSpec, n: usize) -> Result<Self> {
        Ok(SpanBasis {
            n,
            echelon: Echelon::new(ring, n * n)?,
        })
    }

    pub fn from_matrices(ring: RingSpec, n: usize, mats: &[DenseMatrix]) -> Result<Self> {
        let mut s = Self::new(ring, n)?;
        for m in mats {
            s.insert(m)?;
        }
        Ok(s)
    }

    fn check(&self, m: &DenseMatrix) -> Result<()> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0}, got {1}x{2}",
                self.n,
                m.rows(),
                m.cols()
            )));
        }
        if m.ring() != self.ring() {
            return Err(Error::RingMismatch {
                left: self.ring(),
                right: m.ring(),
            });
        }
        Ok(())
    }

    /// Adds a matrix; returns whether the span grew.
    pub fn insert(&mut self, m: &DenseMatrix) -> Result<bool> {
        self.check(m)?;
        Ok(self.echelon.insert(flatten(m)).is_some())
    }

    pub fn contains(&self, m: &DenseMatrix) -> Result<bool> {
        self.check(m)?;
        Ok(self.echelon.contains(&flatten(m)))
    }

    pub fn ring(&self) -> RingSpec {
        self.echelon.ring()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// The echelon basis as matrices.
    pub fn matrices(&self) -> Vec<DenseMatrix> {
        self.echelon
            .rows()
            .iter()
            .map(|r| DenseMatrix::from_vec(self.ring(), self.n, self.n, r.clone()).expect("shape"))
            .collect()
    }

    /// Coordinates against [`Self::matrices`], if `m` lies in the span.
    pub fn coordinates(&self, m: &DenseMatrix) -> Result<Option<Vec<Scalar>>> {
        self.check(m)?;
        Ok(self.echelon.coordinates(&flatten(m)))
    }

    /// Coordinates read off the pivot entries, without a membership check.
    fn pivot_coordinates(&self, m: &DenseMatrix) -> Vec<Scalar> {
        self.echelon
            .pivots()
            .iter()
            .map(|&p| m.entries()[p].clone())
            .collect()
    }
}

/// `{a : c a - a c = 0}` as the nullspace of the `n² x n²` Sylvester operator.
pub fn centralizer_nullspace(c: &DenseMatrix) -> Result<SpanBasis> {
    centralizer_of_set(std::slice::from_ref(c))
}

/// Common centralizer of a set of `n x n` matrices.
pub fn centralizer_of_set(cs: &[DenseMatrix]) -> Result<SpanBasis> {
    let first = cs
        .first()
        .ok_or_else(|| Error::Precondition("centralizer of an empty set".into()))?;
    let ring = first.ring();
    ring.require_field()?;
    let n = first.rows();
    for c in cs {
        if !c.is_square() || c.rows() != n {
            return Err(Error::DimensionMismatch(
                "matrices must be square of one size".into(),
            ));
        }
        if c.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring,
                right: c.ring(),
            });
        }
    }
    let nn = n * n;
    let mut op = DenseMatrix::zeros(ring, nn * cs.len(), nn);
    for (t, c) in cs.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = t * nn + i * n + j;
                for k in 0..n {
                    // (c a)_ij picks a_kj, (a c)_ij picks a_ik
                    let v = op.get(row, k * n + j) + c.get(i, k);
                    op.set(row, k * n + j, v);
                    let v = op.get(row, i * n + k) - c.get(k, j);
                    op.set(row, i * n + k, v);
                }
            }
        }
    }
    let mut s = SpanBasis::new(ring, n)?;
    for v in nullspace(&op)? {
        s.echelon.insert(v.into_entries());
    }
    Ok(s)
}

/// Mutual containment.
pub fn span_equal(a: &SpanBasis, b: &SpanBasis) -> Result<bool> {
    if a.n != b.n || a.ring() != b.ring() {
        return Err(Error::DimensionMismatch(
            "spans live in different spaces".into(),
        ));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    for m in a.matrices() {
        if !b.contains(&m)? {
            return Ok(false);
        }
    }
    for m in b.matrices() {
        if !a.contains(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The basis of `a` together with the products of basis elements in
/// coordinates, `table[i][j] = coords(b_i b_j)`.
struct Regular {
    basis: Vec<DenseMatrix>,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl Regular {
    fn new(a: &SpanBasis) -> Result<Self> {
        let basis = a.matrices();
        let mut table = Vec::with_capacity(basis.len());
        for x in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in &basis {
                let prod = x.mul(y)?;
                let coords = a.pivot_coordinates(&prod);
                if !a.echelon.contains(&flatten(&prod)) {
                    return Err(Error::Precondition(
                        "the span is not closed under multiplication".into(),
                    ));
                }
                row.push(coords);
            }
            table.push(row);
        }
        Ok(Regular { basis, table })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn combine(&self, v: &[Scalar]) -> DenseMatrix {
        let ring = self.basis[0].ring();
        let n = self.basis[0].rows();
        let mut m = DenseMatrix::zeros(ring, n, n);
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                m.add_scaled(c, b).expect("shape");
            }
        }
        m
    }
}

fn require_trace_form_domain(ring: RingSpec, n: usize) -> Result<()> {
    ring.require_field()?;
    if let RingSpec::PrimeField(p) = ring {
        if p <= n as u64 {
            return Err(Error::SmallCharacteristic(format!(
                "the trace-form radical needs characteristic 0 or p > n, got p = {p}, n = {n}"
            )));
        }
    }
    Ok(())
}

/// Radical in coordinates: the kernel of the trace form `tr(L_x L_y)`.
fn radical_coordinates(reg: &Regular) -> Result<Vec<Vec<Scalar>>> {
    let d = reg.dim();
    let ring = reg.basis[0].ring();
    // t_m = tr(L_{b_m}); tr(L_x L_y) = tr(L_{xy}) = Σ_m coords_m(xy) t_m
    let t: Vec<Scalar> = (0..d)
        .map(|m| (0..d).fold(Scalar::zero(ring), |acc, k| &acc + &reg.table[m][k][k]))
        .collect();
    let gram = DenseMatrix::from_fn(ring, d, d, |i, j| {
        reg.table[i][j]
            .iter()
            .zip(&t)
            .fold(Scalar::zero(ring), |acc, (c, tm)| &acc + &(c * tm))
    });
    Ok(nullspace(&gram)?
        .into_iter()
        .map(DenseMatrix::into_entries)
        .collect())
}

/// Radical of the algebra spanned by `a` through the trace form of the
/// regular representation. Refuses characteristic `p <= n`. The result is
/// checked to be a two-sided ideal with `N^n = 0`.
pub fn radical_oracle(a: &SpanBasis) -> Result<SpanBasis> {
    require_trace_form_domain(a.ring(), a.n())?;
    let mut rad = SpanBasis::new(a.ring(), a.n())?;
    if a.dim() == 0 {
        return Ok(rad);
    }
    let reg = Regular::new(a)?;
    for v in radical_coordinates(&reg)? {
        rad.insert(&reg.combine(&v))?;
    }
    let rad_mats = rad.matrices();
    for b in &reg.basis {
        for x in &rad_mats {
            if !rad.contains(&b.mul(x)?)? || !rad.contains(&x.mul(b)?)? {
                return Err(Error::Internal("trace-form kernel is not an ideal".into()));
            }
        }
    }
    // N^{k+1} = N^k N
    let mut power = rad_mats.clone();
    for _ in 1..a.n() {
        if power.is_empty() {
            break;
        }
        let mut next = SpanBasis::new(a.ring(), a.n())?;
        for x in &power {
            for y in &rad_mats {
                next.insert(&x.mul(y)?)?;
            }
        }
        power = next.matrices();
    }
    if !power.is_empty() {
        return Err(Error::Internal("trace-form kernel is not nilpotent".into()));
    }
    Ok(rad)
}

/// `dim Z(A / rad A)`, the number of simple modules when the semisimple
/// quotient is split.
pub fn simple_count_oracle(a: &SpanBasis) -> Result<usize> {
    require_trace_form_domain(a.ring(), a.n())?;
    if a.dim() == 0 {
        return Ok(0);
    }
    let ring = a.ring();
    let reg = Regular::new(a)?;
    let d = reg.dim();
    let mut rad = Echelon::new(ring, d)?;
    for v in radical_coordinates(&reg)? {
        rad.insert(v);
    }
    let r = rad.rank();
    // basis vectors representing A / rad
    let mut span = rad.clone();
    let mut reps = Vec::new();
    for k in 0..d {
        let mut e = vec![Scalar::zero(ring); d];
        e[k] = Scalar::one(ring);
        if span.insert(e).is_some() {
            reps.push(k);
        }
    }
    // x = Σ v_i b_i is central mod rad iff [x, b_k] ∈ rad for the reps
    let mut eqs = Echelon::new(ring, d)?;
    for &k in &reps {
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                let mut c: Vec<Scalar> = reg.table[i][k]
                    .iter()
                    .zip(&reg.table[k][i])
                    .map(|(x, y)| x - y)
                    .collect();
                rad.reduce(&mut c);
                c
            })
            .collect();
        for pos in 0..d {
            let row: Vec<Scalar> = cols.iter().map(|c| c[pos].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                eqs.insert(row);
            }
        }
    }
    let central = d - eqs.rank();
    Ok(central - r)
}
