use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{DescribedSpace, PointSet};

/// Shape of a named region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Inclusive pixel bounds `[x0, y0, x1, y1]`.
    Rect([usize; 4]),
    Ids(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub name: String,
    pub shape: Shape,
    #[serde(default)]
    pub allow_empty: bool,
}

impl RegionSpec {
    pub fn rect(name: impl Into<String>, x0: usize, y0: usize, x1: usize, y1: usize) -> Self {
        RegionSpec {
            name: name.into(),
            shape: Shape::Rect([x0, y0, x1, y1]),
            allow_empty: false,
        }
    }

    pub fn ids<S: Into<String>>(name: impl Into<String>, ids: impl IntoIterator<Item = S>) -> Self {
        RegionSpec {
            name: name.into(),
            shape: Shape::Ids(ids.into_iter().map(Into::into).collect()),
            allow_empty: false,
        }
    }
}

pub fn region(space: &DescribedSpace, spec: &RegionSpec) -> Result<PointSet> {
    let invalid = |reason: String| Error::InvalidRegion {
        name: spec.name.clone(),
        reason,
    };
    let set = match &spec.shape {
        Shape::Rect([x0, y0, x1, y1]) => {
            let raster = space
                .raster()
                .ok_or_else(|| invalid("rectangles need a space loaded from an image".into()))?;
            if x0 > x1 || y0 > y1 {
                return Err(invalid(format!("corners ({x0},{y0}) and ({x1},{y1}) are reversed")));
            }
            if *x1 >= raster.width || *y1 >= raster.height {
                return Err(invalid(format!(
                    "corner ({x1},{y1}) outside a {}x{} image",
                    raster.width, raster.height
                )));
            }
            PointSet::from_indices(
                space.len(),
                (*y0..=*y1).flat_map(|y| (*x0..=*x1).map(move |x| y * raster.width + x)),
            )
        }
        Shape::Ids(ids) => space.point_set(ids)?,
    };
    if set.is_empty() && !spec.allow_empty {
        return Err(invalid("region is empty".into()));
    }
    Ok(set)
}

/// Region file: a JSON object mapping names to `{"rect": [...]}` or `{"ids": [...]}`.
pub fn parse_regions(json: &str) -> Result<Vec<RegionSpec>> {
    let map: BTreeMap<String, Shape> = serde_json::from_str(json)?;
    Ok(map
        .into_iter()
        .map(|(name, shape)| RegionSpec {
            name,
            shape,
            allow_empty: false,
        })
        .collect())
}

pub fn load_regions(path: impl AsRef<Path>) -> Result<Vec<RegionSpec>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_regions(&text)
}

/// Resolves every region against `space`, keyed by name.
pub fn resolve_regions(space: &DescribedSpace, specs: &[RegionSpec]) -> Result<BTreeMap<String, PointSet>> {
    specs
        .iter()
        .map(|s| Ok((s.name.clone(), region(space, s)?)))
        .collect()
}
