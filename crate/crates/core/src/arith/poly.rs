use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RingSpec, Scalar};
use crate::error::{Error, Result};

/// Largest modulus for which roots are found by exhaustive search.
pub const MAX_ROOT_SEARCH_MODULUS: u64 = 1 << 20;

/// Univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(ring: RingSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { ring, coeffs }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Quotient by `x - r` when `r` is a root.
    fn deflate(&self, r: &Scalar) -> Option<Polynomial> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![Scalar::zero(self.ring); n - 1];
        let mut carry = Scalar::zero(self.ring);
        for k in (1..n).rev() {
            carry = &(&carry * r) + &self.coeffs[k];
            q[k - 1] = carry.clone();
        }
        let rem = &(&carry * r) + &self.coeffs[0];
        rem.is_zero().then(|| Polynomial::new(self.ring, q))
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Scalar) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.deflate(r) {
            p = q;
            k += 1;
        }
        k
    }

    /// All roots in the base ring with multiplicities, sorted by value.
    ///
    /// Over ℤ and ℚ candidates come from the rational root theorem; over
    /// GF(p) every residue is tried, so the modulus is capped.
    pub fn roots(&self) -> Result<Vec<(Scalar, usize)>> {
        if self.coeffs.is_empty() {
            return Err(Error::Precondition("roots of the zero polynomial".into()));
        }
        let mut out = Vec::new();
        match self.ring {
            RingSpec::PrimeField(p) => {
                if p > MAX_ROOT_SEARCH_MODULUS {
                    return Err(Error::Precondition(format!(
                        "root search over GF({p}) is limited to moduli up to {MAX_ROOT_SEARCH_MODULUS}"
                    )));
                }
                let mut rest = self.clone();
                for v in 0..p {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let r = Scalar::Mod {
                        residue: v,
                        modulus: p,
                    };
                    let k = rest.root_multiplicity(&r);
                    if k > 0 {
                        for _ in 0..k {
                            rest = rest.deflate(&r).expect("root");
                        }
                        out.push((r, k));
                    }
                }
            }
            RingSpec::Integers | RingSpec::Rationals => {
                let ints = self.primitive_integer_coeffs();
                let mut rest = self.clone();
                let zero = Scalar::zero(self.ring);
                let k0 = rest.root_multiplicity(&zero);
                for _ in 0..k0 {
                    rest = rest.deflate(&zero).expect("root");
                }
                if k0 > 0 {
                    out.push((zero, k0));
                }
                let lead = ints.last().expect("nonzero").abs();
                let low = ints[k0].abs();
                let mut cands: Vec<BigRational> = Vec::new();
                for d in divisors(&low) {
                    for e in divisors(&lead) {
                        let c = BigRational::new(d.clone(), e);
                        cands.push(c.clone());
                        cands.push(-c);
                    }
                }
                cands.sort();
                cands.dedup();
                for c in cands {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let Ok(r) = Scalar::from_rational(self.ring, &c) else {
                        continue;
                    };
                    let k = rest.root_multiplicity(&r);
                    for _ in 0..k {
                        rest = rest.deflate(&r).expect("root");
                    }
                    if k > 0 {
                        out.push((r, k));
                    }
                }
                out.sort_by_key(|a| a.0.to_rational());
            }
        }
        Ok(out)
    }

    /// Integer coefficients proportional to `self` (ℤ or ℚ only).
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let qs: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| c.to_rational().expect("characteristic zero"))
            .collect();
        let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        qs.iter()
            .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
            .collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Characteristic polynomial `det(xI - A)` by the division-free Berkowitz
/// recurrence, so it is exact over any commutative ring.
pub fn charpoly(a: &super::DenseMatrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "charpoly of a non-square matrix".into(),
        ));
    }
    let ring = a.ring();
    let n = a.rows();
    // descending coefficients of the leading principal minor's polynomial
    let mut c: Vec<Scalar> = vec![Scalar::one(ring)];
    for r in 0..n {
        // q = [1, -a_rr, -S R, -S M R, ..., -S M^{r-1} R]
        let mut q = Vec::with_capacity(r + 2);
        q.push(Scalar::one(ring));
        q.push(-a.get(r, r));
        let mut v: Vec<Scalar> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for k in 0..r {
            if k > 0 {
                v = (0..r)
                    .map(|i| {
                        let mut acc = Scalar::zero(ring);
                        for (j, vj) in v.iter().enumerate() {
                            if !vj.is_zero() {
                                acc = &acc + &(a.get(i, j) * vj);
                            }
                        }
                        acc
                    })
                    .collect();
            }
            let mut s = Scalar::zero(ring);
            for (j, vj) in v.iter().enumerate() {
                s = &s + &(a.get(r, j) * vj);
            }
            q.push(-&s);
        }
        let mut next = vec![Scalar::zero(ring); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && !cj.is_zero() {
                    *slot = &*slot + &(&q[i - j] * cj);
                }
            }
        }
        c = next;
    }
    c.reverse();
    Ok(Polynomial::new(ring, c))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = matches!(c.to_rational(), Some(q) if q.is_negative());
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DenseMatrix;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn charpoly_of_identity() {
        let p = charpoly(&DenseMatrix::identity(Q, 2)).unwrap();
        assert_eq!(p.to_string(), "x^2 - 2x + 1");
        assert_eq!(p.roots().unwrap(), vec![(Scalar::one(Q), 2)]);
    }

    #[test]
    fn charpoly_of_generic_2x2() {
        let a = DenseMatrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(charpoly(&a).unwrap().to_string(), "x^2 - 5x - 2");
    }

    #[test]
    fn charpoly_matches_cofactor_expansion_3x3() {
        let a =
            DenseMatrix::from_i64_rows(RingSpec::Integers, &[&[2, -1, 0], &[4, 0, 3], &[1, 5, -2]]);
        let p = charpoly(&a).unwrap();
        // trace 0, sum of principal 2-minors, det
        let c: Vec<String> = p.coeffs().iter().map(|s| s.to_string()).collect();
        assert_eq!(c, vec!["41", "-15", "0", "1"]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2x - 1)^2 (x + 3) x
        let p = Polynomial::new(
            Q,
            ["0", "3", "-11", "8", "4"]
                .iter()
                .map(|s| Scalar::parse(Q, s).unwrap())
                .collect(),
        );
        let r: Vec<(String, usize)> = p
            .roots()
            .unwrap()
            .into_iter()
            .map(|(s, k)| (s.to_string(), k))
            .collect();
        assert_eq!(
            r,
            vec![("-3".into(), 1), ("0".into(), 1), ("1/2".into(), 2)]
        );
    }

    #[test]
    fn irreducible_has_no_rational_roots() {
        let p = Polynomial::new(
            Q,
            vec![Scalar::from_i64(Q, -2), Scalar::zero(Q), Scalar::one(Q)],
        );
        assert!(p.roots().unwrap().is_empty());
    }

    #[test]
    fn roots_over_prime_field() {
        let gf5 = RingSpec::PrimeField(5);
        // x^2 + 1 = (x - 2)(x - 3) over GF(5)
        let p = Polynomial::new(
            gf5,
            vec![Scalar::one(gf5), Scalar::zero(gf5), Scalar::one(gf5)],
        );
        let r: Vec<u64> = p
            .roots()
            .unwrap()
            .into_iter()
            .map(|(s, _)| match s {
                Scalar::Mod { residue, .. } => residue,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(r, vec![2, 3]);
    }
}
