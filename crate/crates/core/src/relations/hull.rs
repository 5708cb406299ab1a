//! Exact convex-hull intersection for finite point sets in dimensions 1 to 3.
//!
//! Two hulls meet iff there are convex weights λ over `P` and μ over `Q`
//! with Σ λᵢ pᵢ = Σ μⱼ qⱼ. That is a linear feasibility problem, decided here
//! by a phase-one simplex over big rationals with Bland's rule, so the answer
//! never depends on floating-point rounding.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rational_point, RationalPoint};
use crate::space::FeatureSet;

pub const MAX_HULL_ARITY: usize = 3;

/// Whether conv(P) ∩ conv(Q) ≠ ∅. Empty operands never meet.
pub fn hull_intersects(p: &FeatureSet, q: &FeatureSet) -> Result<bool> {
    let arity = p.iter().chain(q.iter()).map(|v| v.arity()).next();
    match arity {
        None => Ok(false),
        Some(n) if n == 0 || n > MAX_HULL_ARITY => Err(Error::UnsupportedArity(n)),
        Some(_) => Ok(hull_intersects_unchecked(p, q)),
    }
}

pub(crate) fn hull_intersects_unchecked(p: &FeatureSet, q: &FeatureSet) -> bool {
    if p.is_empty() || q.is_empty() {
        return false;
    }
    if p.meets(q) {
        return true;
    }
    let n = p.iter().next().unwrap().arity();
    // Separated along some axis: the hulls' bounding boxes are disjoint.
    for i in 0..n {
        let (plo, phi) = bounds(p, i);
        let (qlo, qhi) = bounds(q, i);
        if phi < qlo || qhi < plo {
            return false;
        }
    }
    if n == 1 {
        // bounding intervals overlap, and in one dimension that is the hull
        return true;
    }
    let pp: Vec<RationalPoint> = p.iter().map(rational_point).collect();
    let qq: Vec<RationalPoint> = q.iter().map(rational_point).collect();
    convex_hulls_meet(&pp, &qq)
}

fn bounds(s: &FeatureSet, i: usize) -> (i64, i64) {
    s.iter()
        .map(|v| v.get(i))
        .fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// Whether `point` lies in conv(P).
pub fn hull_contains(p: &[RationalPoint], point: &RationalPoint) -> bool {
    convex_hulls_meet(p, std::slice::from_ref(point))
}

/// Exact feasibility of Σλᵢpᵢ = Σμⱼqⱼ, Σλ = Σμ = 1, λ, μ ≥ 0.
pub fn convex_hulls_meet(p: &[RationalPoint], q: &[RationalPoint]) -> bool {
    if p.is_empty() || q.is_empty() {
        return false;
    }
    let dim = p[0].len();
    let nv = p.len() + q.len();
    let rows = 2 + dim;

    let mut a = vec![vec![BigRational::zero(); nv]; rows];
    let mut b = vec![BigRational::zero(); rows];
    for (j, pt) in p.iter().enumerate() {
        a[0][j] = BigRational::one();
        for k in 0..dim {
            a[2 + k][j] = pt[k].clone();
        }
    }
    for (j, pt) in q.iter().enumerate() {
        let col = p.len() + j;
        a[1][col] = BigRational::one();
        for k in 0..dim {
            a[2 + k][col] = -pt[k].clone();
        }
    }
    b[0] = BigRational::one();
    b[1] = BigRational::one();
    phase_one_feasible(a, b)
}

/// Decides whether `{x ≥ 0 : A x = b}` is nonempty.
///
/// Rows with negative right-hand side are negated first; one artificial
/// variable per row forms the starting basis.
fn phase_one_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let nv = a.first().map_or(0, |r| r.len());
    for i in 0..rows {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let cols = nv + rows;
    for (i, row) in a.iter_mut().enumerate() {
        row.resize(cols, BigRational::zero());
        row[nv + i] = BigRational::one();
    }
    let mut basis: Vec<usize> = (nv..cols).collect();

    // reduced costs of minimizing the sum of artificials
    let mut cost = vec![BigRational::zero(); cols];
    let mut objective = BigRational::zero();
    for i in 0..rows {
        for j in 0..nv {
            cost[j] -= &a[i][j];
        }
        objective -= &b[i];
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if a[i][enter].is_positive() {
                let ratio = &b[i] / &a[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so an entering column always has a pivot row.
        let Some((r, _)) = leave else { break };

        let pivot = a[r][enter].clone();
        for x in a[r].iter_mut() {
            *x /= &pivot;
        }
        b[r] /= &pivot;
        for i in 0..rows {
            if i != r && !a[i][enter].is_zero() {
                let factor = a[i][enter].clone();
                for j in 0..cols {
                    if !a[r][j].is_zero() {
                        let delta = &factor * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
                let delta = &factor * &b[r];
                b[i] -= delta;
            }
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for j in 0..cols {
                if !a[r][j].is_zero() {
                    let delta = &factor * &a[r][j];
                    cost[j] -= delta;
                }
            }
            objective -= &factor * &b[r];
        }
        basis[r] = enter;
    }
    objective.is_zero()
}
