#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use dprox::ingest::{load_csv, load_regions, resolve_regions, CsvOptions};
use dprox::{DescribedSpace, PointSet};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// A CSV fixture and its named sets.
pub fn load(stem: &str) -> (DescribedSpace, BTreeMap<String, PointSet>) {
    let space = load_csv(fixture(&format!("{stem}.csv")), &CsvOptions::default()).unwrap();
    let specs = load_regions(fixture(&format!("{stem}_sets.json"))).unwrap();
    let sets = resolve_regions(&space, &specs).unwrap();
    (space, sets)
}

pub fn ids(space: &DescribedSpace, set: &PointSet) -> Vec<String> {
    space.ids_of(set)
}

/// Every subset of a small space, in mask order.
pub fn all_subsets(space: &DescribedSpace) -> Vec<PointSet> {
    let n = space.len();
    assert!(n <= 12);
    (0..1u64 << n).map(|m| PointSet::from_mask(n, m)).collect()
}
