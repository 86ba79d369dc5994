//! Instance generation and independent reference computations shared by the
//! integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsectl::gensys::{random_instance, GeneratorSpec};
use sparsectl::{IndexSet, SystemMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated system whose eigenvector supports are known by construction.
pub struct Instance {
    pub a: SystemMatrix,
    pub spec: GeneratorSpec,
    pub seed: u64,
}

/// Random instances with `n` drawn from `n_range`, skipping seeds the
/// generator rejects.
pub fn instances(
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    base_seed: u64,
) -> Vec<Instance> {
    let mut r = rng(base_seed);
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed.wrapping_mul(1_000_003);
    while out.len() < count {
        seed = seed.wrapping_add(1);
        let n = r.random_range(n_range.clone());
        let density = r.random_range(0.1..0.6);
        if let Ok((a, spec)) = random_instance(n, density, seed) {
            out.push(Instance { a, spec, seed });
        }
    }
    out
}

/// Uniformly random nonempty subset of `0..n` with a random size.
pub fn random_subset(n: usize, r: &mut impl Rng) -> IndexSet {
    let size = r.random_range(1..=n);
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = r.random_range(i..n);
        all.swap(i, j);
    }
    IndexSet::new(n, all[..size].iter().copied()).unwrap()
}

/// Bitmask of a set given as 0-based members.
pub fn mask(members: &[usize]) -> u64 {
    members.iter().fold(0, |m, &j| m | (1 << j))
}

/// Smallest cardinality of a hitting set by exhaustive enumeration of all
/// `2ⁿ` subsets.
pub fn brute_force_min_hitting(n: usize, sets: &[Vec<usize>]) -> usize {
    let masks: Vec<u64> = sets.iter().map(|s| mask(s)).collect();
    (0u64..(1 << n))
        .filter(|cand| masks.iter().all(|m| m & cand != 0))
        .map(|cand| cand.count_ones() as usize)
        .min()
        .expect("the full set hits every nonempty set")
}

/// Whether every set meets `cand`.
pub fn hits(sets: &[Vec<usize>], cand: &[usize]) -> bool {
    sets.iter().all(|s| s.iter().any(|j| cand.contains(j)))
}
