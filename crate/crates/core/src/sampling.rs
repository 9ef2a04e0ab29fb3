//! Random and exhaustive generation of block types.

use std::collections::BTreeSet;

use rand::Rng;

use crate::arith::{RingSpec, Scalar};
use crate::jordan::JordanType;

/// All partitions of `n`, parts decreasing, in lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn blocks(parts: &[usize]) -> Vec<(usize, usize)> {
    parts.iter().map(|&p| (p, 1)).collect()
}

fn build(ring: RingSpec, groups: &[Vec<usize>]) -> JordanType {
    JordanType::new(
        ring,
        groups
            .iter()
            .enumerate()
            .map(|(k, parts)| (Scalar::from_i64(ring, k as i64), blocks(parts)))
            .collect(),
    )
    .expect("valid block type")
}

/// Every block type of size `n` up to relabelling eigenvalues, with
/// eigenvalues `0, 1, …` in group order. Over GF(p) at most `p` groups.
pub fn all_jordan_types(ring: RingSpec, n: usize) -> Vec<JordanType> {
    let max_groups = match ring {
        RingSpec::PrimeField(p) => p as usize,
        _ => usize::MAX,
    };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    // group sizes as a partition of n, then a partition of every group size
    for sizes in partitions(n) {
        if sizes.len() > max_groups {
            continue;
        }
        let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for &s in &sizes {
            let mut next = Vec::new();
            for prefix in &acc {
                for p in partitions(s) {
                    let mut v = prefix.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            acc = next;
        }
        for mut groups in acc {
            groups.sort();
            if seen.insert(groups.clone()) {
                out.push(build(ring, &groups));
            }
        }
    }
    out
}

/// A random block type with `1 <= n <= max_n`, one to three eigenvalue
/// groups and small integer eigenvalues.
pub fn random_jordan_type<R: Rng + ?Sized>(
    rng: &mut R,
    ring: RingSpec,
    max_n: usize,
) -> JordanType {
    let n = rng.random_range(1..=max_n.max(1));
    let mut max_groups = n.min(3);
    if let RingSpec::PrimeField(p) = ring {
        max_groups = max_groups.min(p as usize);
    }
    let t = rng.random_range(1..=max_groups);
    // split n into t positive group sizes
    let mut cuts: BTreeSet<usize> = BTreeSet::new();
    while cuts.len() < t - 1 {
        cuts.insert(rng.random_range(1..n));
    }
    let mut bounds: Vec<usize> = vec![0];
    bounds.extend(cuts);
    bounds.push(n);
    let mut groups = Vec::new();
    for w in bounds.windows(2) {
        let mut rest = w[1] - w[0];
        let mut parts = Vec::new();
        while rest > 0 {
            let part = rng.random_range(1..=rest);
            parts.push(part);
            rest -= part;
        }
        groups.push(parts);
    }
    let mut eigenvalues: Vec<i64> = Vec::new();
    let span = match ring {
        RingSpec::PrimeField(p) if p < 7 => p as i64,
        _ => 7,
    };
    while eigenvalues.len() < t {
        let r = rng.random_range(0..span) - span / 2;
        let s = Scalar::from_i64(ring, r);
        if !eigenvalues.iter().any(|&e| Scalar::from_i64(ring, e) == s) {
            eigenvalues.push(r);
        }
    }
    JordanType::new(
        ring,
        groups
            .iter()
            .zip(&eigenvalues)
            .map(|(parts, &r)| (Scalar::from_i64(ring, r), blocks(parts)))
            .collect(),
    )
    .expect("valid block type")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn exhaustive_types() {
        // multisets of partitions with total size n
        let counts: Vec<usize> = (1..=5)
            .map(|n| all_jordan_types(RingSpec::Rationals, n).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 6, 14, 27]);
        assert!(all_jordan_types(RingSpec::PrimeField(2), 3)
            .iter()
            .all(|t| t.groups().len() <= 2));
    }

    #[test]
    fn random_types_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_jordan_type(&mut a, RingSpec::PrimeField(11), 8);
            assert!(x.n() >= 1 && x.n() <= 8);
            assert_eq!(x, random_jordan_type(&mut b, RingSpec::PrimeField(11), 8));
        }
        let mut r = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(
                random_jordan_type(&mut r, RingSpec::PrimeField(2), 6)
                    .groups()
                    .len()
                    <= 2
            );
        }
    }
}
