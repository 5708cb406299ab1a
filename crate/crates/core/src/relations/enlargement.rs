//! Enlargement operators for the overlap approach: a set of descriptions is
//! fattened into a region of feature space, and two point sets are near when
//! their regions overlap.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{rational_point, squared_distance, Epsilon, RationalPoint};
use crate::relations::gap::feature_gap;
use crate::relations::hull::{hull_contains, hull_intersects_unchecked, MAX_HULL_ARITY};
use crate::space::FeatureSet;

/// An enlargement `e` mapping finite description sets to regions of feature space.
///
/// Well-behaved operators are additive, `e(P ∪ Q) = e(P) ∪ e(Q)`, and
/// extensional, `P ⊆ Q ⇒ e(P) ⊆ e(Q)`; see
/// [`check_enlargement`](crate::axioms::check_enlargement).
pub trait Enlargement: fmt::Debug + Send + Sync {
    fn name(&self) -> String;

    /// Whether `e(P) ∩ e(Q) ≠ ∅`, for nonempty `P` and `Q`.
    fn overlaps(&self, p: &FeatureSet, q: &FeatureSet) -> bool;

    /// Exact membership of `point` in `e(P)`, or `None` if the operator has no exact test.
    fn contains(&self, p: &FeatureSet, point: &[BigRational]) -> Option<bool>;

    /// Points on which region equality and containment are decided.
    fn probe_points(&self, universe: &FeatureSet) -> Vec<RationalPoint> {
        vertices_and_midpoints(universe)
    }

    fn validate(&self, _arity: usize) -> Result<()> {
        Ok(())
    }
}

/// Every vector of `universe` plus the midpoint of every pair.
pub fn vertices_and_midpoints(universe: &FeatureSet) -> Vec<RationalPoint> {
    let pts: Vec<RationalPoint> = universe.iter().map(rational_point).collect();
    let two = BigRational::from_integer(2.into());
    let mut out = pts.clone();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            out.push(pts[i].iter().zip(&pts[j]).map(|(x, y)| (x + y) / &two).collect());
        }
    }
    out
}

/// Union of closed Euclidean balls of radius ε about each description.
#[derive(Clone, Debug)]
pub struct BallEnlargement {
    epsilon: Epsilon,
}

impl BallEnlargement {
    pub fn new(epsilon: Epsilon) -> Self {
        BallEnlargement { epsilon }
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.epsilon
    }
}

impl Enlargement for BallEnlargement {
    fn name(&self) -> String {
        format!("ball:{}", self.epsilon)
    }

    fn overlaps(&self, p: &FeatureSet, q: &FeatureSet) -> bool {
        // two balls of radius ε meet iff their centres are at most 2ε apart
        match feature_gap(p, q).squared() {
            Some(g) => {
                let two_eps = BigRational::from_integer(2.into()) * self.epsilon.value();
                BigRational::from_integer(g.into()) <= &two_eps * &two_eps
            }
            None => false,
        }
    }

    fn contains(&self, p: &FeatureSet, point: &[BigRational]) -> Option<bool> {
        let r2 = self.epsilon.squared();
        Some(
            p.iter()
                .any(|c| squared_distance(&rational_point(c), point) <= r2),
        )
    }

    fn probe_points(&self, universe: &FeatureSet) -> Vec<RationalPoint> {
        let mut out = vertices_and_midpoints(universe);
        let eps = self.epsilon.value();
        for c in universe.iter() {
            let base = rational_point(c);
            for k in 0..base.len() {
                for sign in [1i64, -1] {
                    let mut p = base.clone();
                    p[k] += eps * BigRational::from_integer(sign.into());
                    out.push(p);
                }
            }
        }
        out
    }
}

/// `e(P) = P`; overlap reduces to shared descriptions.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityEnlargement;

impl Enlargement for IdentityEnlargement {
    fn name(&self) -> String {
        "identity".to_string()
    }

    fn overlaps(&self, p: &FeatureSet, q: &FeatureSet) -> bool {
        p.meets(q)
    }

    fn contains(&self, p: &FeatureSet, point: &[BigRational]) -> Option<bool> {
        Some(p.iter().any(|c| rational_point(c) == point))
    }
}

/// `e(P) = conv(P)`. Extensional but not additive.
#[derive(Clone, Copy, Debug, Default)]
pub struct HullEnlargement;

impl Enlargement for HullEnlargement {
    fn name(&self) -> String {
        "hull".to_string()
    }

    fn overlaps(&self, p: &FeatureSet, q: &FeatureSet) -> bool {
        hull_intersects_unchecked(p, q)
    }

    fn contains(&self, p: &FeatureSet, point: &[BigRational]) -> Option<bool> {
        let pts: Vec<RationalPoint> = p.iter().map(rational_point).collect();
        Some(hull_contains(&pts, &point.to_vec()))
    }

    fn validate(&self, arity: usize) -> Result<()> {
        if arity > MAX_HULL_ARITY {
            return Err(Error::UnsupportedArity(arity));
        }
        Ok(())
    }
}

/// Named operators. Built-ins (`identity`, `hull`, `ball:<eps>`) resolve
/// without registration; a bare number is read as a ball radius.
#[derive(Clone, Debug, Default)]
pub struct EnlargementRegistry {
    custom: BTreeMap<String, Arc<dyn Enlargement>>,
}

impl EnlargementRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: impl Into<String>, op: Arc<dyn Enlargement>) {
        self.custom.insert(name.into(), op);
    }

    pub fn resolve(&self, name: &str) -> Result<Arc<dyn Enlargement>> {
        if let Some(op) = self.custom.get(name) {
            return Ok(op.clone());
        }
        builtin_enlargement(name)
    }
}

pub fn builtin_enlargement(name: &str) -> Result<Arc<dyn Enlargement>> {
    match name {
        "identity" => Ok(Arc::new(IdentityEnlargement)),
        "hull" => Ok(Arc::new(HullEnlargement)),
        _ => {
            let radius = name.strip_prefix("ball:").unwrap_or(name);
            match radius.parse::<Epsilon>() {
                Ok(eps) => Ok(Arc::new(BallEnlargement::new(eps))),
                Err(e @ Error::NegativeEpsilon(_)) => Err(e),
                Err(_) => Err(Error::UnknownEnlargement(name.to_string())),
            }
        }
    }
}
