use std::fmt;

use serde::{Serialize, Serializer};

use crate::space::FeatureSet;

/// Squared Euclidean gap between two description sets, `None` meaning ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gap(Option<u128>);

impl Gap {
    pub const INFINITE: Gap = Gap(None);

    pub fn finite(squared: u128) -> Self {
        Gap(Some(squared))
    }

    pub fn squared(&self) -> Option<u128> {
        self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Some(0)
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(g) => write!(f, "{g}"),
            None => write!(f, "inf"),
        }
    }
}

impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(g) => serializer.serialize_u128(g),
            None => serializer.serialize_str("inf"),
        }
    }
}

/// Minimal squared distance between members of `p` and `q`.
pub fn feature_gap(p: &FeatureSet, q: &FeatureSet) -> Gap {
    let mut best: Option<u128> = None;
    for x in p {
        for y in q {
            let d = x.squared_distance(y);
            if best.is_none_or(|b| d < b) {
                best = Some(d);
                if d == 0 {
                    return Gap(best);
                }
            }
        }
    }
    Gap(best)
}
