//! Two ways of evaluating a relation during checking.
//!
//! [`TableUniverse`] enumerates every subset of a small space as a bitmask and
//! tabulates the relation on all ordered pairs once, so each axiom instance
//! is a table lookup. [`DirectUniverse`] evaluates the relation on
//! [`PointSet`]s on demand and backs sampled mode on spaces of any size.

use fixedbitset::FixedBitSet;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::relations::RelationSpec;
use crate::space::{DescribedSpace, FeatureSet, PointSet};

pub(crate) trait Universe: Sync {
    type Set: Clone + Send + Sync + PartialEq;

    fn space(&self) -> &DescribedSpace;
    fn near(&self, a: &Self::Set, b: &Self::Set) -> bool;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn complement(&self, a: &Self::Set) -> Self::Set;
    fn is_empty(&self, a: &Self::Set) -> bool;
    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool;
    /// `A ∩ B ≠ ∅`
    fn meets(&self, a: &Self::Set, b: &Self::Set) -> bool;
    /// `A ∩_Φ B ≠ ∅`, i.e. `Φ(A) ∩ Φ(B) ≠ ∅`
    fn desc_meets(&self, a: &Self::Set, b: &Self::Set) -> bool;
    /// `{x : {x} δ A}`
    fn closure(&self, a: &Self::Set) -> Self::Set;
    fn empty(&self) -> Self::Set;
    fn full(&self) -> Self::Set;
    fn from_members(&self, members: &[usize]) -> Self::Set;
    fn to_point_set(&self, a: &Self::Set) -> PointSet;

    /// Every subset, in mask order; only available for tabulated spaces.
    fn all_sets(&self) -> Option<Vec<Self::Set>>;

    fn ids(&self, a: &Self::Set) -> Vec<String> {
        self.space().ids_of(&self.to_point_set(a))
    }

    fn random_set(&self, rng: &mut ChaCha8Rng) -> Self::Set {
        let members: Vec<usize> = (0..self.space().len()).filter(|_| rng.gen::<bool>()).collect();
        self.from_members(&members)
    }

    fn random_subset_of(&self, of: &Self::Set, rng: &mut ChaCha8Rng) -> Self::Set {
        let members: Vec<usize> = self
            .to_point_set(of)
            .iter()
            .filter(|_| rng.gen::<bool>())
            .collect();
        self.from_members(&members)
    }
}

/// Largest space the table representation accepts.
pub const MAX_TABLE_POINTS: usize = 12;

pub(crate) struct TableUniverse<'a> {
    space: &'a DescribedSpace,
    n: usize,
    size: usize,
    near: FixedBitSet,
    image: Vec<u32>,
    closure: Vec<u32>,
}

impl<'a> TableUniverse<'a> {
    /// Tabulates `rel` on all ordered subset pairs. The relation must already be validated.
    pub fn build(rel: &RelationSpec, space: &'a DescribedSpace) -> Self {
        let n = space.len();
        assert!(n <= MAX_TABLE_POINTS);
        let size = 1usize << n;
        let image: Vec<u32> = (0..size as u32)
            .map(|mask| {
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << space.class_of(i))
            })
            .collect();

        let rows: Vec<Vec<bool>> = if rel.is_descriptive() {
            // A descriptive relation only sees images, so tabulate on class masks.
            let k = space.class_count();
            let ksize = 1usize << k;
            let images: Vec<FeatureSet> = (0..ksize)
                .map(|m| {
                    (0..k)
                        .filter(|&c| m >> c & 1 == 1)
                        .map(|c| space.class_description(c).clone())
                        .collect()
                })
                .collect();
            let class_near: Vec<Vec<bool>> = images
                .par_iter()
                .map(|ia| images.iter().map(|ib| rel.images_near(ia, ib)).collect())
                .collect();
            (0..size)
                .into_par_iter()
                .map(|a| {
                    let row = &class_near[image[a] as usize];
                    (0..size).map(|b| row[image[b] as usize]).collect()
                })
                .collect()
        } else {
            let sets: Vec<PointSet> = (0..size).map(|m| PointSet::from_mask(n, m as u64)).collect();
            sets.par_iter()
                .map(|a| sets.iter().map(|b| rel.near_validated(space, a, b)).collect())
                .collect()
        };

        let mut near = FixedBitSet::with_capacity(size * size);
        for (a, row) in rows.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v {
                    near.insert(a * size + b);
                }
            }
        }
        let mut universe = TableUniverse {
            space,
            n,
            size,
            near,
            image,
            closure: Vec::new(),
        };
        universe.closure = (0..size as u32)
            .map(|a| {
                (0..n)
                    .filter(|&x| universe.near(&(1 << x), &a))
                    .fold(0u32, |acc, x| acc | 1 << x)
            })
            .collect();
        universe
    }
}

impl Universe for TableUniverse<'_> {
    type Set = u32;

    fn space(&self) -> &DescribedSpace {
        self.space
    }

    #[inline]
    fn near(&self, a: &u32, b: &u32) -> bool {
        self.near.contains(*a as usize * self.size + *b as usize)
    }

    fn union(&self, a: &u32, b: &u32) -> u32 {
        a | b
    }

    fn complement(&self, a: &u32) -> u32 {
        !a & (self.size as u32 - 1)
    }

    fn is_empty(&self, a: &u32) -> bool {
        *a == 0
    }

    fn is_subset(&self, a: &u32, b: &u32) -> bool {
        a & !b == 0
    }

    fn meets(&self, a: &u32, b: &u32) -> bool {
        a & b != 0
    }

    fn desc_meets(&self, a: &u32, b: &u32) -> bool {
        self.image[*a as usize] & self.image[*b as usize] != 0
    }

    fn closure(&self, a: &u32) -> u32 {
        self.closure[*a as usize]
    }

    fn empty(&self) -> u32 {
        0
    }

    fn full(&self) -> u32 {
        self.size as u32 - 1
    }

    fn from_members(&self, members: &[usize]) -> u32 {
        members.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    fn to_point_set(&self, a: &u32) -> PointSet {
        PointSet::from_mask(self.n, *a as u64)
    }

    fn all_sets(&self) -> Option<Vec<u32>> {
        Some((0..self.size as u32).collect())
    }
}

pub(crate) struct DirectUniverse<'a> {
    space: &'a DescribedSpace,
    rel: &'a RelationSpec,
}

impl<'a> DirectUniverse<'a> {
    pub fn new(rel: &'a RelationSpec, space: &'a DescribedSpace) -> Self {
        DirectUniverse { space, rel }
    }
}

impl Universe for DirectUniverse<'_> {
    type Set = PointSet;

    fn space(&self) -> &DescribedSpace {
        self.space
    }

    fn near(&self, a: &PointSet, b: &PointSet) -> bool {
        self.rel.near_validated(self.space, a, b)
    }

    fn union(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.union(b)
    }

    fn complement(&self, a: &PointSet) -> PointSet {
        a.complement()
    }

    fn is_empty(&self, a: &PointSet) -> bool {
        a.is_empty()
    }

    fn is_subset(&self, a: &PointSet, b: &PointSet) -> bool {
        a.is_subset(b)
    }

    fn meets(&self, a: &PointSet, b: &PointSet) -> bool {
        a.meets(b)
    }

    fn desc_meets(&self, a: &PointSet, b: &PointSet) -> bool {
        self.space.image_unchecked(a).meets(&self.space.image_unchecked(b))
    }

    fn closure(&self, a: &PointSet) -> PointSet {
        crate::topology::closure_validated(self.rel, self.space, a)
    }

    fn empty(&self) -> PointSet {
        self.space.empty_set()
    }

    fn full(&self) -> PointSet {
        self.space.full_set()
    }

    fn from_members(&self, members: &[usize]) -> PointSet {
        PointSet::from_indices(self.space.len(), members.iter().copied())
    }

    fn to_point_set(&self, a: &PointSet) -> PointSet {
        a.clone()
    }

    fn all_sets(&self) -> Option<Vec<PointSet>> {
        None
    }
}
