use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;

use super::{FrobeniusSystem, Membership, Subring};
use crate::arith::{DenseMatrix, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::oracle::centralizer_of_set;

/// A finite subgroup of `GL_n(R)`, either listed in full or generated by
/// permutations. Elements are kept in a fixed order with the identity first.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    ring: RingSpec,
    n: usize,
    elements: Vec<DenseMatrix>,
    /// Images `σ(i)` (0-based) of every element, for permutation groups.
    perms: Option<Vec<Vec<usize>>>,
}

/// Parses cycle notation such as `(1 2 3)(4 5)`, 1-based, into the image
/// list of a permutation of `{0, …, degree-1}`. `()` or an empty string is
/// the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("bad cycle notation: {text:?}")))?;
        let points: Vec<usize> = body
            .0
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= degree)
                    .map(|v| v - 1)
                    .ok_or_else(|| Error::Parse(format!("bad point {t:?} for degree {degree}")))
            })
            .collect::<Result<_>>()?;
        for &p in &points {
            if !seen.insert(p) {
                return Err(Error::Parse(format!(
                    "point {} repeated in {text:?}",
                    p + 1
                )));
            }
        }
        for (k, &p) in points.iter().enumerate() {
            perm[p] = points[(k + 1) % points.len()];
        }
        rest = body.1.trim_start();
    }
    Ok(perm)
}

/// Largest point mentioned in a cycle string.
pub fn max_point(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

/// Cycle lengths of a permutation, fixed points included, sorted decreasing.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// A permutation with this cycle type has a free point exactly when some
/// part is divisible by every part.
pub fn perm_free_point_criterion(cycle_type: &[usize]) -> bool {
    let l = cycle_type.iter().fold(1usize, |acc, &x| acc.lcm(&x));
    !cycle_type.is_empty() && cycle_type.contains(&l)
}

fn perm_matrix(ring: RingSpec, perm: &[usize]) -> DenseMatrix {
    let n = perm.len();
    let mut m = DenseMatrix::zeros(ring, n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, Scalar::one(ring));
    }
    m
}

impl GroupSpec {
    /// The group generated by the given permutations of `{0, …, n-1}`,
    /// represented by `c_σ = Σ e_{i,σ(i)}`.
    pub fn from_permutations(ring: RingSpec, n: usize, generators: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("degree must be positive".into()));
        }
        for g in generators {
            let distinct: BTreeSet<_> = g.iter().copied().collect();
            if g.len() != n || distinct.len() != n || g.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup(format!(
                    "{g:?} is not a permutation of degree {n}"
                )));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut found = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                // apply p, then g
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if found.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = found.into_iter().collect();
        let elements = perms.iter().map(|p| perm_matrix(ring, p)).collect();
        Ok(GroupSpec {
            ring,
            n,
            elements,
            perms: Some(perms),
        })
    }

    /// A group given by all of its elements. The list must contain `I_n`
    /// and be closed under products and inverses.
    pub fn from_matrices(ring: RingSpec, elements: Vec<DenseMatrix>) -> Result<Self> {
        let n = elements
            .first()
            .ok_or_else(|| Error::InvalidGroup("no elements".into()))?
            .rows();
        for g in &elements {
            if !g.is_square() || g.rows() != n || g.ring() != ring {
                return Err(Error::InvalidGroup(
                    "elements must be n x n over one ring".into(),
                ));
            }
        }
        let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
        for (k, g) in elements.iter().enumerate() {
            let key: Vec<String> = g.entries().iter().map(|s| s.to_string()).collect();
            if index.insert(key, k).is_some() {
                return Err(Error::InvalidGroup(format!(
                    "element {} is listed twice",
                    k + 1
                )));
            }
        }
        let key = |m: &DenseMatrix| -> Vec<String> {
            m.entries().iter().map(|s| s.to_string()).collect()
        };
        let id = DenseMatrix::identity(ring, n);
        if !index.contains_key(&key(&id)) {
            return Err(Error::InvalidGroup("identity is missing".into()));
        }
        for (a, g) in elements.iter().enumerate() {
            let mut has_inverse = false;
            for (b, h) in elements.iter().enumerate() {
                let gh = g.mul(h)?;
                if !index.contains_key(&key(&gh)) {
                    return Err(Error::InvalidGroup(format!(
                        "product of elements {} and {} is not in the list",
                        a + 1,
                        b + 1
                    )));
                }
                has_inverse |= gh == id;
            }
            if !has_inverse {
                return Err(Error::InvalidGroup(format!(
                    "element {} has no inverse in the list",
                    a + 1
                )));
            }
        }
        let mut elements = elements;
        let pos = elements.iter().position(|g| *g == id).expect("identity");
        elements.swap(0, pos);
        Ok(GroupSpec {
            ring,
            n,
            elements,
            perms: None,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[DenseMatrix] {
        &self.elements
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    pub fn inverse(&self, k: usize) -> usize {
        let id = DenseMatrix::identity(self.ring, self.n);
        self.elements
            .iter()
            .position(|h| self.elements[k].mul(h).expect("shape") == id)
            .expect("closed group")
    }
}

/// Smallest point `i` with `g_ii = 0` for every `g ≠ I`.
pub fn find_free_point(g: &GroupSpec) -> Option<usize> {
    let id = DenseMatrix::identity(g.ring, g.n);
    (0..g.n).find(|&i| {
        g.elements
            .iter()
            .filter(|h| **h != id)
            .all(|h| h.get(i, i).is_zero())
    })
}

/// Basis of `S_n(G, R) = {a : g a = a g for all g ∈ G}`. For permutation
/// groups these are the orbit sums of matrix units, valid over any ring;
/// otherwise the common centralizer is computed over the field.
pub fn fixed_subalgebra(g: &GroupSpec) -> Result<Vec<DenseMatrix>> {
    let n = g.n;
    if let Some(perms) = &g.perms {
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for s in 0..n * n {
            if seen[s] {
                continue;
            }
            let mut m = DenseMatrix::zeros(g.ring, n, n);
            for p in perms {
                let t = p[s / n] * n + p[s % n];
                if !seen[t] {
                    seen[t] = true;
                    m.set(t / n, t % n, Scalar::one(g.ring));
                }
            }
            out.push(m);
        }
        return Ok(out);
    }
    Ok(centralizer_of_set(&g.elements)?.matrices())
}

/// The group trace `a ↦ Σ g a g⁻¹` with `x_j = e_{j,i}`, `y_j = e_{i,j}`,
/// whether or not `i` is free.
pub fn group_trace_candidate(g: &GroupSpec, point: usize) -> Result<FrobeniusSystem> {
    let n = g.n;
    if point >= n {
        return Err(Error::IndexOutOfRange(format!(
            "point {} of {n}",
            point + 1
        )));
    }
    let ring = g.ring;
    let inverses: Vec<DenseMatrix> = (0..g.order())
        .map(|k| g.elements[g.inverse(k)].clone())
        .collect();
    let mut images = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            // g e_kl g⁻¹ = (column k of g)(row l of g⁻¹)
            let mut e = DenseMatrix::zeros(ring, n, n);
            for (h, hinv) in g.elements.iter().zip(&inverses) {
                for r in 0..n {
                    let a = h.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    for c in 0..n {
                        let b = hinv.get(l, c);
                        if !b.is_zero() {
                            let v = e.get(r, c) + &(a * b);
                            e.set(r, c, v);
                        }
                    }
                }
            }
            images.push(e);
        }
    }
    let x = (0..n)
        .map(|j| DenseMatrix::unit(ring, n, n, j, point))
        .collect();
    let y = (0..n)
        .map(|j| DenseMatrix::unit(ring, n, n, point, j))
        .collect();
    FrobeniusSystem::new(
        Subring::Group {
            spec: g.clone(),
            point,
        },
        ring,
        n,
        images,
        x,
        y,
        fixed_subalgebra(g)?,
    )
}

/// The group-trace system at a free point.
pub fn group_trace_system(g: &GroupSpec, point: usize) -> Result<FrobeniusSystem> {
    let id = DenseMatrix::identity(g.ring, g.n);
    if point >= g.n
        || g.elements
            .iter()
            .any(|h| *h != id && !h.get(point, point).is_zero())
    {
        return Err(Error::Precondition(format!(
            "point {} is not free",
            point + 1
        )));
    }
    group_trace_candidate(g, point)
}

/// `|G|⁻¹ I` when `|G|` is invertible in the ring, after checking that it
/// is central in the fixed subalgebra and that `E` sends it to `I`.
pub fn group_split_witness(sys: &FrobeniusSystem) -> Result<Option<DenseMatrix>> {
    let Subring::Group { spec, .. } = &sys.subring else {
        return Err(Error::Precondition("not a group-trace system".into()));
    };
    let ring = sys.ring();
    let Some(inv) = Scalar::from_i64(ring, spec.order() as i64).inv() else {
        return Ok(None);
    };
    let w = DenseMatrix::identity(ring, sys.n()).scale(&inv);
    if sys.apply(&w) != DenseMatrix::identity(ring, sys.n()) {
        return Err(Error::Internal("E(|G|^-1 I) != I".into()));
    }
    Ok(Some(w))
}

/// Detects when `M_n` cannot be projective over `B`: `B` is a local
/// algebra of dimension 2 over a field while `dim M_n = n²` is odd, so
/// `M_n` is not free over `B`. Returns an explanation when detected.
pub fn dimension_obstruction(
    ring: RingSpec,
    n: usize,
    basis: &[DenseMatrix],
) -> Result<Option<String>> {
    if !ring.is_field() || basis.len() != 2 || n.is_multiple_of(2) {
        return Ok(None);
    }
    let id = DenseMatrix::identity(ring, n);
    let member = Membership::new(ring, n, basis)?;
    if !member.contains(&id) {
        return Ok(None);
    }
    // pick b outside R·I and write b² = αb + βI
    let b = basis.iter().find(|b| {
        Membership::new(ring, n, std::slice::from_ref(&id))
            .map(|m| !m.contains(b))
            .unwrap_or(false)
    });
    let Some(b) = b else {
        return Ok(None);
    };
    let member = Membership::new(ring, n, &[b.clone(), id.clone()])?;
    let Some(c) = member.coordinates(&b.mul(b)?) else {
        return Ok(None);
    };
    let (alpha, beta) = (&c[0], &c[1]);
    // x² - αx - β has a double root
    let local = if ring.characteristic() == 2 {
        alpha.is_zero()
    } else {
        let disc = &(alpha * alpha) + &(&Scalar::from_i64(ring, 4) * beta);
        disc.is_zero()
    };
    if !local {
        return Ok(None);
    }
    let t = if ring.characteristic() == 2 {
        // every element of GF(2) is its own square root
        beta.clone()
    } else {
        alpha.div(&Scalar::from_i64(ring, 2)).expect("char != 2")
    };
    let gamma = b.sub(&id.scale(&t))?;
    if !gamma.mul(&gamma)?.is_zero() {
        return Err(Error::Internal(
            "double root does not give a nilpotent element".into(),
        ));
    }
    Ok(Some(format!(
        "the subalgebra is spanned by I and a nonzero matrix gamma with gamma^2 = 0, so it is \
         local of dimension 2 and its finitely generated projective modules have even \
         dimension; dim M_{n} = {} is odd, so M_{n} is not projective over it and the \
         extension is not Frobenius",
        n * n
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::check_frobenius_system;

    const Q: RingSpec = RingSpec::Rationals;

    fn perm_group(ring: RingSpec, n: usize, cycles: &[&str]) -> GroupSpec {
        let gens: Vec<_> = cycles.iter().map(|c| parse_cycles(c, n).unwrap()).collect();
        GroupSpec::from_permutations(ring, n, &gens).unwrap()
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(
            parse_cycles("(1 2 3)(4 5)", 5).unwrap(),
            vec![1, 2, 0, 4, 3]
        );
        assert_eq!(parse_cycles("()", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_cycles("", 2).unwrap(), vec![0, 1]);
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(parse_cycles("(1 2", 3).is_err());
        assert_eq!(max_point("(1 2 7)(3 4)"), 7);
        assert_eq!(
            cycle_type(&parse_cycles("(1 2)(3 4)", 5).unwrap()),
            vec![2, 2, 1]
        );
    }

    #[test]
    fn free_point_criterion() {
        assert!(perm_free_point_criterion(&[2, 2, 1]));
        assert!(perm_free_point_criterion(&[6, 3, 2]));
        assert!(!perm_free_point_criterion(&[2, 3]));
        assert!(perm_free_point_criterion(&[1]));
    }

    #[test]
    fn free_points() {
        assert_eq!(find_free_point(&perm_group(Q, 2, &["(1 2)"])), Some(0));
        assert_eq!(
            find_free_point(&perm_group(Q, 3, &["(1 2 3)", "(1 3)"])),
            None
        );
        let c3 = perm_group(Q, 3, &["(1 2 3)"]);
        assert_eq!(c3.order(), 3);
        assert!((0..3).all(|i| group_trace_system(&c3, i).is_ok()));
        assert_eq!(find_free_point(&perm_group(Q, 4, &["(1 2)(3 4)"])), Some(0));
        assert_eq!(find_free_point(&perm_group(Q, 5, &["(1 2)(3 4 5)"])), None);
    }

    #[test]
    fn swap_trace() {
        let g = perm_group(Q, 2, &["(1 2)"]);
        let sys = group_trace_system(&g, 0).unwrap();
        assert_eq!(sys.image_of_unit(0, 0), &DenseMatrix::identity(Q, 2));
        assert!(check_frobenius_system(&sys).unwrap().pass());
        assert_eq!(
            group_split_witness(&sys).unwrap().unwrap().get(0, 0),
            &Scalar::parse(Q, "1/2").unwrap()
        );
    }

    #[test]
    fn trivial_group_trace_is_identity() {
        let g = perm_group(Q, 3, &[]);
        let sys = group_trace_system(&g, 0).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                assert_eq!(sys.image_of_unit(k, l), &DenseMatrix::unit(Q, 3, 3, k, l));
            }
        }
        assert!(check_frobenius_system(&sys).unwrap().pass());
    }

    #[test]
    fn cyclic_over_gf2() {
        let gf2 = RingSpec::PrimeField(2);
        let g = perm_group(gf2, 3, &["(1 2 3)"]);
        let sys = group_trace_system(&g, 0).unwrap();
        assert!(check_frobenius_system(&sys).unwrap().pass());
        assert!(group_split_witness(&sys).unwrap().is_some());
        let gf3 = RingSpec::PrimeField(3);
        let sys = group_trace_system(&perm_group(gf3, 3, &["(1 2 3)"]), 0).unwrap();
        assert!(check_frobenius_system(&sys).unwrap().pass());
        assert!(group_split_witness(&sys).unwrap().is_none());
    }

    #[test]
    fn symmetric_group_over_gf3() {
        let gf3 = RingSpec::PrimeField(3);
        let g = perm_group(gf3, 3, &["(1 2 3)", "(1 3)"]);
        assert_eq!(g.order(), 6);
        assert_eq!(find_free_point(&g), None);
        assert!(group_trace_system(&g, 0).is_err());
        let basis = fixed_subalgebra(&g).unwrap();
        assert_eq!(basis.len(), 2);
        for i in 0..3 {
            let r = check_frobenius_system(&group_trace_candidate(&g, i).unwrap()).unwrap();
            assert!(!r.dual_left.pass && !r.dual_right.pass);
        }
        assert!(dimension_obstruction(gf3, 3, &basis).unwrap().is_some());
        // over GF(5) the subalgebra is semisimple, so nothing is reported
        let g5 = perm_group(RingSpec::PrimeField(5), 3, &["(1 2 3)", "(1 3)"]);
        assert!(
            dimension_obstruction(g5.ring(), 3, &fixed_subalgebra(&g5).unwrap())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn matrix_groups() {
        let z = RingSpec::Integers;
        let neg = DenseMatrix::identity(z, 2).scale(&Scalar::from_i64(z, -1));
        let g =
            GroupSpec::from_matrices(z, vec![neg.clone(), DenseMatrix::identity(z, 2)]).unwrap();
        assert_eq!(g.elements()[0], DenseMatrix::identity(z, 2));
        assert_eq!(find_free_point(&g), None);
        assert!(GroupSpec::from_matrices(z, vec![neg]).is_err());
        let swap = DenseMatrix::from_i64_rows(Q, &[&[0, 1], &[1, 0]]);
        let g = GroupSpec::from_matrices(Q, vec![DenseMatrix::identity(Q, 2), swap]).unwrap();
        assert_eq!(fixed_subalgebra(&g).unwrap().len(), 2);
        let sys = group_trace_system(&g, 0).unwrap();
        assert!(check_frobenius_system(&sys).unwrap().pass());
    }
}
