//! Seeded random spaces for property tests and the CLI `--random` source.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::space::{build_space, DescribedSpace, FeatureVector};

/// A space of `size` points `x0, x1, ...` with features drawn uniformly from `0..levels`.
pub fn random_space<R: Rng>(rng: &mut R, size: usize, arity: usize, levels: i64) -> DescribedSpace {
    assert!(size >= 1 && arity >= 1 && levels >= 1);
    build_space((0..size).map(|i| {
        let v: Vec<i64> = (0..arity).map(|_| rng.gen_range(0..levels)).collect();
        (format!("x{i}"), FeatureVector::new(v))
    }))
    .expect("generated rows are well formed")
}

pub fn seeded_space(seed: u64, size: usize, arity: usize, levels: i64) -> DescribedSpace {
    random_space(&mut ChaCha8Rng::seed_from_u64(seed), size, arity, levels)
}

/// `count` spaces with sizes in `1..=max_size` and arities in `1..=max_arity`,
/// one ChaCha stream for the whole family.
pub fn space_family(
    seed: u64,
    count: usize,
    max_size: usize,
    max_arity: usize,
    levels: i64,
) -> Vec<DescribedSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let arity = rng.gen_range(1..=max_arity);
            random_space(&mut rng, size, arity, levels)
        })
        .collect()
}
