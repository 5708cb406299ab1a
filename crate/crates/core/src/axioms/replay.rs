//! Independent re-evaluation of failure witnesses.
//!
//! Replay goes through the public relation and closure functions on
//! [`PointSet`]s rather than through the checker's tables, so a witness that
//! replays is evidence about the relation itself.

use super::report::Witness;
use crate::error::{Error, Result};
use crate::relations::RelationSpec;
use crate::space::{descriptive_intersection, DescribedSpace, FeatureSet, PointSet};
use crate::topology::closure;

/// `true` when `witness` really violates `axiom` for `rel` on `space`.
///
/// Axiom ids are those emitted by the checkers; the leading `P`/`D`/`S` is
/// ignored where the statement is shared.
pub fn replay_witness(
    rel: &RelationSpec,
    space: &DescribedSpace,
    axiom: &str,
    witness: &Witness,
) -> Result<bool> {
    let a = space.point_set(&witness.a)?;
    let b = space.point_set(&witness.b)?;
    let c = match &witness.c {
        Some(ids) => Some(space.point_set(ids)?),
        None => None,
    };
    let third = || c.clone().ok_or_else(|| Error::UnknownSet(format!("{axiom}: witness has no third set")));
    let near = |x: &PointSet, y: &PointSet| rel.near(space, x, y);
    let cl = |x: &PointSet| closure(rel, space, x);

    let body = match axiom {
        "additivity" | "extensionality" => return replay_enlargement(rel, space, axiom, &a, &b),
        "R0" => {
            let (x, y) = (a.iter().next(), b.iter().next());
            let (Some(x), Some(y)) = (x, y) else { return Ok(false) };
            let x_in = cl(&space.singleton(y))?.contains(x);
            let y_in = cl(&space.singleton(x))?.contains(y);
            return Ok(x_in != y_in);
        }
        "T0" => {
            let (x, y) = (a.iter().next(), b.iter().next());
            let (Some(x), Some(y)) = (x, y) else { return Ok(false) };
            return Ok(x != y && cl(&space.singleton(x))? == cl(&space.singleton(y))?);
        }
        "K1" => return Ok(!cl(&space.empty_set())?.is_empty()),
        "K2" => return Ok(!a.is_subset(&cl(&a)?)),
        "K3" => return Ok(cl(&a.union(&b))? != cl(&a)?.union(&cl(&b)?)),
        "K4" => {
            let once = cl(&a)?;
            return Ok(cl(&once)? != once);
        }
        "EF" => return Ok(!near(&a, &b)? && find_set(space, |e| Ok(!near(&a, e)? && !near(&e.complement(), &b)?))?.is_none()),
        "EF2" => {
            let incl = |x: &PointSet, y: &PointSet| -> Result<bool> { Ok(!near(x, &y.complement())?) };
            return Ok(incl(&a, &b)? && find_set(space, |e| Ok(incl(&a, e)? && incl(e, &b)?))?.is_none());
        }
        "P5" => return Ok(a != b && near(&a, &b)?),
        other => other.get(1..).unwrap_or(""),
    };
    let prefix = axiom.chars().next();
    match (prefix, body) {
        (_, "0") => Ok(near(&a, &b)? && (a.is_empty() || b.is_empty())),
        (_, "1") => Ok(near(&a, &b)? && !near(&b, &a)?),
        (Some('S'), "2") => Ok(near(&a, &b)? && descriptive_intersection(space, &a, &b)?.is_empty()),
        (Some('P'), "2") => Ok(a.meets(&b) && !near(&a, &b)?),
        (Some('D'), "2") => Ok(!descriptive_intersection(space, &a, &b)?.is_empty() && !near(&a, &b)?),
        (_, "3.forward") => {
            let c = third()?;
            Ok(near(&a, &b.union(&c))? && !near(&a, &b)? && !near(&a, &c)?)
        }
        (_, "3.backward") => {
            let c = third()?;
            Ok((near(&a, &b)? || near(&a, &c)?) && !near(&a, &b.union(&c))?)
        }
        (_, "4") => {
            let c = third()?;
            let mut premise = near(&a, &b)?;
            for x in b.iter() {
                premise = premise && near(&space.singleton(x), &c)?;
            }
            Ok(premise && !near(&a, &c)?)
        }
        _ => Err(Error::UnknownSet(format!("no replay rule for axiom {axiom}"))),
    }
}

/// First subset of X, in mask order, satisfying `pred`. Only for spaces of at most 20 points.
fn find_set<F>(space: &DescribedSpace, mut pred: F) -> Result<Option<PointSet>>
where
    F: FnMut(&PointSet) -> Result<bool>,
{
    let n = space.len();
    if n > 20 {
        return Err(Error::BudgetExceeded { size: n, cap: 20 });
    }
    for mask in 0..1u64 << n {
        let e = PointSet::from_mask(n, mask);
        if pred(&e)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn replay_enlargement(
    rel: &RelationSpec,
    space: &DescribedSpace,
    axiom: &str,
    a: &PointSet,
    b: &PointSet,
) -> Result<bool> {
    let RelationSpec::Enlarge(op) = rel else {
        return Err(Error::UnknownRelation(format!("{axiom} needs an enlarge relation, got {}", rel.name())));
    };
    let probes = op.probe_points(&space.full_image());
    let image = |s: &PointSet| -> Result<FeatureSet> { crate::space::phi_image(space, s) };
    let (p, q) = (image(a)?, image(b)?);
    let inside = |set: &FeatureSet, w: &[num_rational::BigRational]| -> Option<bool> {
        if set.is_empty() {
            Some(false)
        } else {
            op.contains(set, w)
        }
    };
    let pq = p.union(&q);
    for w in &probes {
        let (Some(in_p), Some(in_q), Some(in_pq)) = (inside(&p, w), inside(&q, w), inside(&pq, w)) else {
            return Ok(false);
        };
        let violated = match axiom {
            "additivity" => in_pq != (in_p || in_q),
            _ => p.is_subset(&q) && in_p && !in_q,
        };
        if violated {
            return Ok(true);
        }
    }
    Ok(false)
}
