//! Described spaces: a finite carrier set together with a probe assigning
//! every point an exact integer feature vector.
//!
//! Everything else in the crate is evaluated against a [`DescribedSpace`].
//! Subsets of the carrier are [`PointSet`]s (bitsets indexed by point
//! position), and images of subsets under the probe are [`FeatureSet`]s.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The description of a single point: a fixed-arity tuple of quantized scalars.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(Vec<i64>);

impl FeatureVector {
    pub fn new(values: Vec<i64>) -> Self {
        FeatureVector(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Component `i` (zero-based).
    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn squared_distance(&self, other: &FeatureVector) -> u128 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&x, &y)| {
                let d = (x as i128 - y as i128).unsigned_abs();
                d * d
            })
            .sum()
    }
}

impl From<Vec<i64>> for FeatureVector {
    fn from(values: Vec<i64>) -> Self {
        FeatureVector(values)
    }
}

impl<const N: usize> From<[i64; N]> for FeatureVector {
    fn from(values: [i64; N]) -> Self {
        FeatureVector(values.to_vec())
    }
}

impl fmt::Display for FeatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of descriptions, e.g. the image of a point set under the probe.
///
/// Iteration order is the lexicographic order of the vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureSet(BTreeSet<FeatureVector>);

impl FeatureSet {
    pub fn new() -> Self {
        FeatureSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: FeatureVector) -> bool {
        self.0.insert(v)
    }

    pub fn contains(&self, v: &FeatureVector) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FeatureVector> {
        self.0.iter()
    }

    pub fn meets(&self, other: &FeatureSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().any(|v| large.contains(v))
    }

    pub fn intersection(&self, other: &FeatureSet) -> FeatureSet {
        FeatureSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &FeatureSet) -> FeatureSet {
        FeatureSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &FeatureSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The set of values taken by coordinate `i` over this set.
    pub fn coordinate(&self, i: usize) -> BTreeSet<i64> {
        self.0.iter().map(|v| v.get(i)).collect()
    }

    /// Image under the projection onto the listed coordinates.
    pub fn project(&self, coords: &[usize]) -> BTreeSet<Vec<i64>> {
        self.0
            .iter()
            .map(|v| coords.iter().map(|&i| v.get(i)).collect())
            .collect()
    }
}

impl FromIterator<FeatureVector> for FeatureSet {
    fn from_iter<I: IntoIterator<Item = FeatureVector>>(iter: I) -> Self {
        FeatureSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FeatureSet {
    type Item = &'a FeatureVector;
    type IntoIter = std::collections::btree_set::Iter<'a, FeatureVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A subset of a space's carrier, stored as a bitset over point positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = PointSet::empty(n);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = PointSet::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds the set whose members are the set bits of `mask` (bit `i` is point `i`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        PointSet::from_indices(n, (0..n.min(64)).filter(|&i| mask >> i & 1 == 1))
    }

    /// Number of points of the owning space.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet { bits }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet { bits }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn meets(&self, other: &PointSet) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }
}

/// Pixel grid dimensions for spaces loaded from images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
}

/// A finite carrier set with a total description map.
///
/// Points keep their insertion order, which fixes the bit position used by
/// [`PointSet`] and every deterministic iteration in the crate.
#[derive(Clone, Debug)]
pub struct DescribedSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    descriptions: Vec<FeatureVector>,
    arity: usize,
    // R_Φ classes, numbered by first occurrence
    class_of: Vec<usize>,
    class_descriptions: Vec<FeatureVector>,
    class_members: Vec<Vec<usize>>,
    raster: Option<Raster>,
}

impl DescribedSpace {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// Always false: spaces are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn description(&self, i: usize) -> &FeatureVector {
        &self.descriptions[i]
    }

    pub fn descriptions(&self) -> &[FeatureVector] {
        &self.descriptions
    }

    pub fn raster(&self) -> Option<Raster> {
        self.raster
    }

    pub(crate) fn with_raster(mut self, raster: Raster) -> Self {
        self.raster = Some(raster);
        self
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn singleton(&self, i: usize) -> PointSet {
        PointSet::singleton(self.len(), i)
    }

    /// Resolves point ids into a [`PointSet`].
    pub fn point_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<PointSet> {
        let mut set = self.empty_set();
        for id in ids {
            let id = id.as_ref();
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::UnknownPoint(id.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Member ids in point order.
    pub fn ids_of(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|i| self.ids[i].clone()).collect()
    }

    /// Rejects sets that were built for a space of a different size.
    pub fn check(&self, set: &PointSet) -> Result<()> {
        if set.universe_len() != self.len() {
            return Err(Error::ForeignSet {
                expected: self.len(),
                found: set.universe_len(),
            });
        }
        Ok(())
    }

    /// Number of R_Φ classes, i.e. distinct descriptions.
    pub fn class_count(&self) -> usize {
        self.class_descriptions.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_description(&self, k: usize) -> &FeatureVector {
        &self.class_descriptions[k]
    }

    pub fn class_members(&self, k: usize) -> &[usize] {
        &self.class_members[k]
    }

    /// True when distinct points always have distinct descriptions.
    pub fn is_injective(&self) -> bool {
        self.class_count() == self.len()
    }

    /// Φ(X) as a feature set.
    pub fn full_image(&self) -> FeatureSet {
        self.class_descriptions.iter().cloned().collect()
    }

    pub(crate) fn image_unchecked(&self, set: &PointSet) -> FeatureSet {
        let mut seen = vec![false; self.class_count()];
        let mut image = FeatureSet::new();
        for i in set.iter() {
            let k = self.class_of[i];
            if !seen[k] {
                seen[k] = true;
                image.insert(self.class_descriptions[k].clone());
            }
        }
        image
    }

    /// Points whose description lies in `features`.
    pub fn preimage(&self, features: &FeatureSet) -> PointSet {
        let hit: Vec<bool> = self
            .class_descriptions
            .iter()
            .map(|d| features.contains(d))
            .collect();
        PointSet::from_indices(self.len(), (0..self.len()).filter(|&i| hit[self.class_of[i]]))
    }

    /// Stable serialization of ids and descriptions, used to compare spaces byte for byte.
    pub fn canonical_json(&self) -> String {
        let points: Vec<serde_json::Value> = self
            .ids
            .iter()
            .zip(&self.descriptions)
            .map(|(id, d)| serde_json::json!({ "id": id, "description": d }))
            .collect();
        let value = serde_json::json!({
            "arity": self.arity,
            "points": points,
            "raster": self.raster,
        });
        value.to_string()
    }
}

/// Builds a space from `(id, description)` rows, keeping row order.
pub fn build_space<I, S>(rows: I) -> Result<DescribedSpace>
where
    I: IntoIterator<Item = (S, FeatureVector)>,
    S: Into<String>,
{
    let mut ids = Vec::new();
    let mut index = HashMap::new();
    let mut descriptions = Vec::new();
    let mut arity = None;
    for (row, (id, fv)) in rows.into_iter().enumerate() {
        let id: String = id.into();
        if fv.arity() == 0 {
            return Err(Error::ZeroArity { row, id });
        }
        match arity {
            None => arity = Some(fv.arity()),
            Some(n) if n != fv.arity() => {
                return Err(Error::ArityMismatch {
                    row,
                    id,
                    expected: n,
                    found: fv.arity(),
                })
            }
            Some(_) => {}
        }
        if index.contains_key(&id) {
            return Err(Error::DuplicateId { row, id });
        }
        index.insert(id.clone(), ids.len());
        ids.push(id);
        descriptions.push(fv);
    }
    let arity = arity.ok_or(Error::EmptySpace)?;

    let mut class_index: HashMap<&FeatureVector, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(descriptions.len());
    let mut class_descriptions = Vec::new();
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for (i, d) in descriptions.iter().enumerate() {
        let k = *class_index.entry(d).or_insert_with(|| {
            class_descriptions.push(d.clone());
            class_members.push(Vec::new());
            class_descriptions.len() - 1
        });
        class_members[k].push(i);
        class_of.push(k);
    }

    Ok(DescribedSpace {
        ids,
        index,
        descriptions,
        arity,
        class_of,
        class_descriptions,
        class_members,
        raster: None,
    })
}

/// Φ(A): the set of descriptions of members of `a`.
pub fn phi_image(space: &DescribedSpace, a: &PointSet) -> Result<FeatureSet> {
    space.check(a)?;
    Ok(space.image_unchecked(a))
}

/// A ∩_Φ B = { x ∈ A ∪ B : Φ(x) ∈ Φ(A) and Φ(x) ∈ Φ(B) }.
pub fn descriptive_intersection(
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
) -> Result<PointSet> {
    space.check(a)?;
    space.check(b)?;
    let shared = space.image_unchecked(a).intersection(&space.image_unchecked(b));
    Ok(space.preimage(&shared).intersection(&a.union(b)))
}

/// Φ⁻¹(Φ(A)).
pub fn saturation(space: &DescribedSpace, a: &PointSet) -> Result<PointSet> {
    space.check(a)?;
    let mut hit = vec![false; space.class_count()];
    for i in a.iter() {
        hit[space.class_of(i)] = true;
    }
    Ok(PointSet::from_indices(
        space.len(),
        (0..space.len()).filter(|&i| hit[space.class_of(i)]),
    ))
}

/// The partition of X into classes of equal description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<PointSet>,
    descriptions: Vec<FeatureVector>,
}

impl Partition {
    pub fn classes(&self) -> &[PointSet] {
        &self.classes
    }

    pub fn descriptions(&self) -> &[FeatureVector] {
        &self.descriptions
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class holding point `i`.
    pub fn class_containing(&self, i: usize) -> Option<&PointSet> {
        self.classes.iter().find(|c| c.contains(i))
    }
}

/// Classes of R_Φ, ordered by the first point that carries each description.
pub fn phi_classes(space: &DescribedSpace) -> Partition {
    let classes = (0..space.class_count())
        .map(|k| PointSet::from_indices(space.len(), space.class_members(k).iter().copied()))
        .collect();
    let descriptions = (0..space.class_count())
        .map(|k| space.class_description(k).clone())
        .collect();
    Partition {
        classes,
        descriptions,
    }
}
