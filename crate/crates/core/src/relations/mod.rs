//! The catalogue of (descriptive) proximity relations.
//!
//! Every relation is a decidable predicate on pairs of [`PointSet`]s of one
//! [`DescribedSpace`]. All of them answer `false` when either operand is
//! empty, so the emptiness axiom holds by construction. Relations are
//! addressed by stable names:
//!
//! | name           | relation                                             |
//! |----------------|------------------------------------------------------|
//! | `discrete`     | `A ∩ B ≠ ∅`                                          |
//! | `peters`       | `Φ(A) ∩ Φ(B) ≠ ∅`                                    |
//! | `beta`         | every coordinate image of A meets that of B          |
//! | `eta:m`        | images projected to the first m coordinates meet     |
//! | `gamma`        | some coordinate image of A meets that of B           |
//! | `metric:eps`   | squared gap between Φ(A) and Φ(B) at most eps²       |
//! | `fine-lodato`  | Euclidean closures of Φ(A) and Φ(B) meet             |
//! | `enlarge:op`   | enlargements overlap (`op` a radius or operator name) |
//! | `hull`         | convex hulls of Φ(A) and Φ(B) meet                   |
//! | `strong:S`     | Φ(A) ∩ Φ(B) meets the significant set S              |
//!
//! `eta:i+j+...` selects explicit (one-based) coordinates instead of a prefix.

mod enlargement;
mod gap;
mod hull;

use std::fmt;
use std::sync::Arc;

pub use enlargement::{
    builtin_enlargement, vertices_and_midpoints, BallEnlargement, Enlargement,
    EnlargementRegistry, HullEnlargement, IdentityEnlargement,
};
pub use gap::{feature_gap, Gap};
pub use hull::{convex_hulls_meet, hull_contains, hull_intersects, MAX_HULL_ARITY};

use crate::error::{Error, Result};
use crate::exact::Epsilon;
use crate::space::{DescribedSpace, FeatureSet, FeatureVector, PointSet};

/// Which coordinates `eta` keeps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    /// The first `m` coordinates.
    Prefix(usize),
    /// Explicit zero-based coordinates.
    Coordinates(Vec<usize>),
}

impl Projection {
    pub fn coordinates(&self) -> Vec<usize> {
        match self {
            Projection::Prefix(m) => (0..*m).collect(),
            Projection::Coordinates(c) => c.clone(),
        }
    }

    fn validate(&self, arity: usize) -> Result<()> {
        match self {
            Projection::Prefix(m) if *m == 0 || *m > arity => {
                Err(Error::ProjectionOutOfRange { m: *m, arity })
            }
            Projection::Coordinates(c) if c.is_empty() => {
                Err(Error::ProjectionOutOfRange { m: 0, arity })
            }
            Projection::Coordinates(c) => match c.iter().find(|&&i| i >= arity) {
                Some(&i) => Err(Error::ProjectionOutOfRange { m: i + 1, arity }),
                None => Ok(()),
            },
            Projection::Prefix(_) => Ok(()),
        }
    }
}

/// A named, parameterized relation.
#[derive(Clone, Debug)]
pub enum RelationSpec {
    Discrete,
    Peters,
    Beta,
    Eta(Projection),
    Gamma,
    Metric(Epsilon),
    FineLodato,
    Enlarge(Arc<dyn Enlargement>),
    Hull,
    Strong { name: String, significant: FeatureSet },
}

impl RelationSpec {
    /// Parses a relation name. `strong:NAME` resolves `NAME` through `significant`.
    pub fn parse_with<F>(name: &str, registry: &EnlargementRegistry, significant: F) -> Result<Self>
    where
        F: FnOnce(&str) -> Result<FeatureSet>,
    {
        let unknown = || Error::UnknownRelation(name.to_string());
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        Ok(match (head, arg) {
            ("discrete", None) => RelationSpec::Discrete,
            ("peters", None) => RelationSpec::Peters,
            ("beta", None) => RelationSpec::Beta,
            ("gamma", None) => RelationSpec::Gamma,
            ("fine-lodato", None) => RelationSpec::FineLodato,
            ("hull", None) => RelationSpec::Hull,
            ("eta", Some(a)) if a.contains('+') => {
                let coords = a
                    .split('+')
                    .map(|c| match c.trim().parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(unknown()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                RelationSpec::Eta(Projection::Coordinates(coords))
            }
            ("eta", Some(a)) => {
                RelationSpec::Eta(Projection::Prefix(a.trim().parse().map_err(|_| unknown())?))
            }
            ("metric", Some(a)) => RelationSpec::Metric(a.parse()?),
            ("enlarge", Some(a)) => RelationSpec::Enlarge(registry.resolve(a)?),
            ("strong", Some(a)) if !a.is_empty() => RelationSpec::Strong {
                name: a.to_string(),
                significant: significant(a)?,
            },
            _ => return Err(unknown()),
        })
    }

    /// Parses names that need no significant-set lookup.
    pub fn parse(name: &str) -> Result<Self> {
        Self::parse_with(name, &EnlargementRegistry::new(), |s| {
            Err(Error::UnknownSet(s.to_string()))
        })
    }

    pub fn strong(name: impl Into<String>, significant: FeatureSet) -> Self {
        RelationSpec::Strong {
            name: name.into(),
            significant,
        }
    }

    pub fn enlarge(op: Arc<dyn Enlargement>) -> Self {
        RelationSpec::Enlarge(op)
    }

    pub fn name(&self) -> String {
        match self {
            RelationSpec::Discrete => "discrete".into(),
            RelationSpec::Peters => "peters".into(),
            RelationSpec::Beta => "beta".into(),
            RelationSpec::Eta(Projection::Prefix(m)) => format!("eta:{m}"),
            RelationSpec::Eta(Projection::Coordinates(c)) => {
                let c: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                format!("eta:{}", c.join("+"))
            }
            RelationSpec::Gamma => "gamma".into(),
            RelationSpec::Metric(e) => format!("metric:{e}"),
            RelationSpec::FineLodato => "fine-lodato".into(),
            RelationSpec::Enlarge(op) => {
                let n = op.name();
                format!("enlarge:{}", n.strip_prefix("ball:").unwrap_or(&n))
            }
            RelationSpec::Hull => "hull".into(),
            RelationSpec::Strong { name, .. } => format!("strong:{name}"),
        }
    }

    /// False only for the discrete relation, which looks at points rather than descriptions.
    pub fn is_descriptive(&self) -> bool {
        !matches!(self, RelationSpec::Discrete)
    }

    /// Parameter checks that depend on the space.
    pub fn validate(&self, space: &DescribedSpace) -> Result<()> {
        match self {
            RelationSpec::Eta(p) => p.validate(space.arity()),
            RelationSpec::Hull if space.arity() > MAX_HULL_ARITY => {
                Err(Error::UnsupportedArity(space.arity()))
            }
            RelationSpec::Enlarge(op) => op.validate(space.arity()),
            RelationSpec::Strong { significant, .. } => {
                let image = space.full_image();
                match significant.iter().find(|v| !image.contains(v)) {
                    Some(v) => Err(Error::SignificantSetOutsideImage(v.to_string())),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    pub fn near(&self, space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
        space.check(a)?;
        space.check(b)?;
        self.validate(space)?;
        Ok(self.near_validated(space, a, b))
    }

    /// Evaluation after [`validate`](Self::validate) and set checks.
    pub(crate) fn near_validated(&self, space: &DescribedSpace, a: &PointSet, b: &PointSet) -> bool {
        if a.is_empty() || b.is_empty() {
            return false;
        }
        if let RelationSpec::Discrete = self {
            return a.meets(b);
        }
        let ia = space.image_unchecked(a);
        let ib = space.image_unchecked(b);
        self.images_near(&ia, &ib)
    }

    /// The relation expressed on nonempty images; not meaningful for `discrete`.
    pub(crate) fn images_near(&self, ia: &FeatureSet, ib: &FeatureSet) -> bool {
        if ia.is_empty() || ib.is_empty() {
            return false;
        }
        match self {
            RelationSpec::Discrete | RelationSpec::Peters => ia.meets(ib),
            RelationSpec::Beta => (0..arity_of(ia)).all(|i| coordinate_meets(ia, ib, i)),
            RelationSpec::Gamma => (0..arity_of(ia)).any(|i| coordinate_meets(ia, ib, i)),
            RelationSpec::Eta(p) => {
                let coords = p.coordinates();
                let pa = ia.project(&coords);
                ib.project(&coords).iter().any(|v| pa.contains(v))
            }
            RelationSpec::Metric(eps) => match feature_gap(ia, ib).squared() {
                Some(g) => eps.admits_squared(g),
                None => false,
            },
            RelationSpec::FineLodato => euclidean_closure(ia).meets(&euclidean_closure(ib)),
            RelationSpec::Enlarge(op) => op.overlaps(ia, ib),
            RelationSpec::Hull => hull::hull_intersects_unchecked(ia, ib),
            RelationSpec::Strong { significant, .. } => {
                ia.iter().any(|v| significant.contains(v) && ib.contains(v))
            }
        }
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn arity_of(s: &FeatureSet) -> usize {
    s.iter().next().map_or(0, |v| v.arity())
}

fn coordinate_meets(ia: &FeatureSet, ib: &FeatureSet, i: usize) -> bool {
    let ca = ia.coordinate(i);
    ib.iter().any(|v| ca.contains(&v.get(i)))
}

/// Closure in the Euclidean topology. A finite set is already closed.
pub fn euclidean_closure(p: &FeatureSet) -> FeatureSet {
    p.clone()
}

fn checked(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<()> {
    space.check(a)?;
    space.check(b)
}

pub fn discrete_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::Discrete.near(space, a, b)
}

pub fn peters_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::Peters.near(space, a, b)
}

pub fn beta_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::Beta.near(space, a, b)
}

pub fn eta_near(space: &DescribedSpace, a: &PointSet, b: &PointSet, m: usize) -> Result<bool> {
    RelationSpec::Eta(Projection::Prefix(m)).near(space, a, b)
}

pub fn gamma_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::Gamma.near(space, a, b)
}

pub fn metric_near(
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
    epsilon: &Epsilon,
) -> Result<bool> {
    RelationSpec::Metric(epsilon.clone()).near(space, a, b)
}

/// Exact squared gap between Φ(A) and Φ(B); infinite if either is empty.
pub fn gap(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<Gap> {
    checked(space, a, b)?;
    Ok(feature_gap(&space.image_unchecked(a), &space.image_unchecked(b)))
}

pub fn fine_lodato_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::FineLodato.near(space, a, b)
}

pub fn enlargement_near(
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
    op: Arc<dyn Enlargement>,
) -> Result<bool> {
    RelationSpec::Enlarge(op).near(space, a, b)
}

pub fn hull_near(space: &DescribedSpace, a: &PointSet, b: &PointSet) -> Result<bool> {
    RelationSpec::Hull.near(space, a, b)
}

pub fn strong_near(
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
    significant: &FeatureSet,
) -> Result<bool> {
    RelationSpec::strong("S", significant.clone()).near(space, a, b)
}

/// `A ≪ B`: A is far from the complement of B.
pub fn strong_inclusion(
    rel: &RelationSpec,
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
) -> Result<bool> {
    checked(space, a, b)?;
    Ok(!rel.near(space, a, &b.complement())?)
}

/// A description shared by A and B (and lying in S for strong relations):
/// the description of the first point of A, in space order, that qualifies.
pub fn shared_description(
    rel: &RelationSpec,
    space: &DescribedSpace,
    a: &PointSet,
    b: &PointSet,
) -> Result<Option<FeatureVector>> {
    checked(space, a, b)?;
    let ib = space.image_unchecked(b);
    let allowed = |v: &FeatureVector| match rel {
        RelationSpec::Strong { significant, .. } => significant.contains(v),
        _ => true,
    };
    Ok(a
        .iter()
        .map(|i| space.description(i))
        .find(|v| ib.contains(v) && allowed(v))
        .cloned())
}
