//! Enumeration drivers shared by every axiom.
//!
//! Exhaustive scans walk subsets in mask order and report the first
//! violation in that order, whatever the thread schedule. Sampled scans draw
//! sets from a ChaCha stream seeded by the budget seed and the axiom label.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{AxiomEntry, Status, Witness};
use super::universe::Universe;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Plan {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

pub(crate) struct Outcome {
    pub witness: Option<Witness>,
    pub checked: u64,
    pub exhaustive: bool,
}

impl Outcome {
    pub fn entry(self, axiom: impl Into<String>, statement: &str) -> AxiomEntry {
        AxiomEntry {
            axiom: axiom.into(),
            statement: statement.to_string(),
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: self.witness,
            pairs_checked: self.checked,
            exhaustive: self.exhaustive,
            note: None,
        }
    }
}

pub(crate) fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a over the label keeps per-axiom streams independent
    let salt = label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn all_sets<U: Universe>(u: &U) -> Vec<U::Set> {
    u.all_sets().expect("exhaustive plans run on tabulated universes")
}

pub(crate) fn singles<U, F>(u: &U, plan: Plan, label: &str, f: F) -> Outcome
where
    U: Universe,
    F: Fn(&U::Set) -> Option<Witness> + Sync,
{
    match plan {
        Plan::Exhaustive => {
            let all = all_sets(u);
            let found = all
                .par_iter()
                .enumerate()
                .find_map_first(|(i, a)| f(a).map(|w| (i, w)));
            finish(found, all.len() as u64)
        }
        Plan::Sampled { count, seed } => {
            let mut rng = rng_for(seed, label);
            sample(count, |_| {
                let a = u.random_set(&mut rng);
                f(&a)
            })
        }
    }
}

pub(crate) fn pairs<U, F>(u: &U, plan: Plan, label: &str, f: F) -> Outcome
where
    U: Universe,
    F: Fn(&U::Set, &U::Set) -> Option<Witness> + Sync,
{
    match plan {
        Plan::Exhaustive => {
            let all = all_sets(u);
            let n = all.len();
            let found = (0..n).into_par_iter().find_map_first(|i| {
                (0..n).find_map(|j| f(&all[i], &all[j]).map(|w| (i * n + j, w)))
            });
            finish(found, (n * n) as u64)
        }
        Plan::Sampled { count, seed } => {
            let mut rng = rng_for(seed, label);
            sample(count, |_| {
                let a = u.random_set(&mut rng);
                let b = u.random_set(&mut rng);
                f(&a, &b)
            })
        }
    }
}

/// Sampled draws come from `draw` when given, else three independent random sets.
pub(crate) fn triples<U, D, F>(u: &U, plan: Plan, label: &str, draw: Option<D>, f: F) -> Outcome
where
    U: Universe,
    D: FnMut(&mut ChaCha8Rng) -> (U::Set, U::Set, U::Set),
    F: Fn(&U::Set, &U::Set, &U::Set) -> Option<Witness> + Sync,
{
    match plan {
        Plan::Exhaustive => {
            let all = all_sets(u);
            let n = all.len();
            let found = (0..n).into_par_iter().find_map_first(|i| {
                (0..n).find_map(|j| {
                    (0..n).find_map(|k| {
                        f(&all[i], &all[j], &all[k]).map(|w| ((i * n + j) * n + k, w))
                    })
                })
            });
            finish(found, (n * n * n) as u64)
        }
        Plan::Sampled { count, seed } => {
            let mut rng = rng_for(seed, label);
            let mut draw = draw;
            sample(count, |_| {
                let (a, b, c) = match draw.as_mut() {
                    Some(d) => d(&mut rng),
                    None => (
                        u.random_set(&mut rng),
                        u.random_set(&mut rng),
                        u.random_set(&mut rng),
                    ),
                };
                f(&a, &b, &c)
            })
        }
    }
}

fn finish(found: Option<(usize, Witness)>, total: u64) -> Outcome {
    match found {
        Some((index, w)) => Outcome {
            witness: Some(w),
            checked: index as u64 + 1,
            exhaustive: true,
        },
        None => Outcome {
            witness: None,
            checked: total,
            exhaustive: true,
        },
    }
}

fn sample(count: u64, mut step: impl FnMut(u64) -> Option<Witness>) -> Outcome {
    for t in 0..count {
        if let Some(w) = step(t) {
            return Outcome {
                witness: Some(w),
                checked: t + 1,
                exhaustive: false,
            };
        }
    }
    Outcome {
        witness: None,
        checked: count,
        exhaustive: false,
    }
}
