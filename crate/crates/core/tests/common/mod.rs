#![allow(dead_code)]

use centralizer::arith::RingSpec;
use centralizer::jordan::JordanType;
use centralizer::sampling::random_jordan_type;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const Q: RingSpec = RingSpec::Rationals;

/// Random block types driven by a proptest-chosen seed.
pub fn jordan_types(ring: RingSpec, max_n: usize) -> impl Strategy<Value = JordanType> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_jordan_type(&mut rng, ring, max_n)
    })
}

/// Either ℚ or GF(p) for one of the given primes.
pub fn rings(primes: &'static [u64]) -> impl Strategy<Value = RingSpec> {
    let mut choices = vec![Q];
    choices.extend(primes.iter().map(|&p| RingSpec::PrimeField(p)));
    prop::sample::select(choices)
}

pub fn with_ring(primes: &'static [u64], max_n: usize) -> impl Strategy<Value = JordanType> {
    (rings(primes), any::<u64>()).prop_map(move |(ring, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_jordan_type(&mut rng, ring, max_n)
    })
}
