//! The topology a relation induces through `cl(A) = {x ∈ X : {x} δ A}`.
//!
//! Nothing here presumes the Kuratowski laws; [`check_kuratowski`] tests them.
//!
//! [`check_kuratowski`]: crate::axioms::check_kuratowski

use rand::Rng;

use crate::axioms::{AxiomEntry, AxiomReport, CheckBudget, Mode, Status, Witness};
use crate::error::{Error, Result};
use crate::relations::RelationSpec;
use crate::space::{saturation, DescribedSpace, FeatureSet, PointSet};

/// Closure of `a` under `rel`.
pub fn closure(rel: &RelationSpec, space: &DescribedSpace, a: &PointSet) -> Result<PointSet> {
    space.check(a)?;
    rel.validate(space)?;
    Ok(closure_validated(rel, space, a))
}

pub(crate) fn closure_validated(rel: &RelationSpec, space: &DescribedSpace, a: &PointSet) -> PointSet {
    if a.is_empty() {
        return space.empty_set();
    }
    if !rel.is_descriptive() {
        return PointSet::from_indices(
            space.len(),
            (0..space.len()).filter(|&x| rel.near_validated(space, &space.singleton(x), a)),
        );
    }
    // {x} δ A depends on x only through its description
    let image = space.image_unchecked(a);
    let hit: Vec<bool> = (0..space.class_count())
        .map(|k| {
            let single: FeatureSet = std::iter::once(space.class_description(k).clone()).collect();
            rel.images_near(&single, &image)
        })
        .collect();
    PointSet::from_indices(space.len(), (0..space.len()).filter(|&x| hit[space.class_of(x)]))
}

/// `cl` bound to one relation and space.
#[derive(Clone, Copy, Debug)]
pub struct ClosureOperator<'a> {
    rel: &'a RelationSpec,
    space: &'a DescribedSpace,
}

impl<'a> ClosureOperator<'a> {
    pub fn new(rel: &'a RelationSpec, space: &'a DescribedSpace) -> Result<Self> {
        rel.validate(space)?;
        Ok(ClosureOperator { rel, space })
    }

    pub fn relation(&self) -> String {
        self.rel.name()
    }

    pub fn apply(&self, a: &PointSet) -> Result<PointSet> {
        self.space.check(a)?;
        Ok(closure_validated(self.rel, self.space, a))
    }

    pub fn is_closed(&self, a: &PointSet) -> Result<bool> {
        Ok(&self.apply(a)? == a)
    }

    pub fn is_open(&self, a: &PointSet) -> Result<bool> {
        self.is_closed(&a.complement())
    }
}

pub fn is_closed(rel: &RelationSpec, space: &DescribedSpace, a: &PointSet) -> Result<bool> {
    ClosureOperator::new(rel, space)?.is_closed(a)
}

pub fn is_open(rel: &RelationSpec, space: &DescribedSpace, a: &PointSet) -> Result<bool> {
    ClosureOperator::new(rel, space)?.is_open(a)
}

/// Largest class count for the class-structured closed-set scan.
pub const MAX_STRUCTURED_CLASSES: usize = 16;

fn entry(axiom: &str, statement: &str, witness: Option<Witness>, checked: u64, exhaustive: bool) -> AxiomEntry {
    AxiomEntry {
        axiom: axiom.into(),
        statement: statement.into(),
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        witness,
        pairs_checked: checked,
        exhaustive,
        note: None,
    }
}

fn set_witness(space: &DescribedSpace, a: &PointSet, detail: String) -> Witness {
    Witness {
        a: space.ids_of(a),
        b: Vec::new(),
        c: None,
        detail,
    }
}

/// Confirms that the closed sets of the Peters topology are exactly the
/// Φ-saturated sets, that every description class is clopen, and that two or
/// more classes disconnect the space.
pub fn verify_closed_iff_saturated(space: &DescribedSpace, budget: &CheckBudget) -> Result<AxiomReport> {
    budget.validate()?;
    let rel = RelationSpec::Peters;
    let cl = ClosureOperator::new(&rel, space)?;
    let n = space.len();
    let k = space.class_count();
    let mut report = AxiomReport::new(rel.name(), "topology", n, budget);

    let mismatch = |a: &PointSet| -> Result<Option<Witness>> {
        let closed = cl.is_closed(a)?;
        let saturated = &saturation(space, a)? == a;
        Ok((closed != saturated).then(|| {
            set_witness(
                space,
                a,
                format!("closed = {closed} but saturated = {saturated}"),
            )
        }))
    };

    let main = match budget.mode {
        Mode::Exhaustive if n <= budget.subset_cap => {
            let mut found = None;
            let mut checked = 0;
            for mask in 0..1u64 << n {
                checked += 1;
                if let Some(w) = mismatch(&PointSet::from_mask(n, mask))? {
                    found = Some(w);
                    break;
                }
            }
            entry("closed-iff-saturated", "cl(A) = A ⇔ Φ⁻¹(Φ(A)) = A", found, checked, true)
        }
        Mode::Exhaustive => {
            if k > MAX_STRUCTURED_CLASSES {
                return Err(Error::BudgetExceeded {
                    size: k,
                    cap: MAX_STRUCTURED_CLASSES,
                });
            }
            structured(space, &cl, k)?
        }
        Mode::Sampled => {
            let mut rng = crate::axioms::scan::rng_for(budget.seed, "closed-iff-saturated");
            let mut found = None;
            let mut checked = 0;
            for _ in 0..budget.samples {
                checked += 1;
                let a = PointSet::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()));
                if let Some(w) = mismatch(&a)? {
                    found = Some(w);
                    break;
                }
            }
            entry("closed-iff-saturated", "cl(A) = A ⇔ Φ⁻¹(Φ(A)) = A", found, checked, false)
        }
    };
    report.entries.push(main);

    let mut clopen_fail = None;
    let mut clopen_checked = 0;
    for c in 0..k {
        clopen_checked += 1;
        let class = PointSet::from_indices(n, space.class_members(c).iter().copied());
        if !(cl.is_closed(&class)? && cl.is_open(&class)?) {
            clopen_fail = Some(set_witness(space, &class, "description class is not clopen".into()));
            break;
        }
    }
    report.entries.push(entry(
        "classes-clopen",
        "each class of R_Φ is closed and open",
        clopen_fail,
        clopen_checked,
        true,
    ));

    let first = PointSet::from_indices(n, space.class_members(0).iter().copied());
    let mut disconnected = entry(
        "disconnected",
        "two or more classes ⇒ the topology is disconnected",
        None,
        1,
        true,
    );
    if k >= 2 {
        let clopen = cl.is_closed(&first)? && cl.is_open(&first)?;
        if clopen {
            disconnected.note = Some(format!(
                "clopen class {{{}}} separates X",
                space.ids_of(&first).join(",")
            ));
        } else {
            disconnected.status = Status::Fail;
            disconnected.witness = Some(set_witness(
                space,
                &first,
                "proper nonempty class is not clopen".into(),
            ));
        }
    } else {
        disconnected.status = Status::Skipped;
        disconnected.note = Some("a single description class: the topology is indiscrete".into());
    }
    report.entries.push(disconnected);

    report.entries.push(finite_intersections(space, &cl, k)?);
    report.notes.push(
        "X is finite, so arbitrary intersections of open sets are finite intersections; \
         the Alexandroff property holds vacuously and is not checked separately"
            .into(),
    );
    Ok(report)
}

/// Closed-iff-saturated from class structure alone.
///
/// Under a descriptive relation `cl(A)` depends only on the set T of classes
/// A meets, so every A meeting T is closed iff `A = cl(R_T)` and saturated iff
/// `A = U_T`, where `R_T` holds one point per class of T and `U_T` is their
/// union. The claim for all A is therefore `cl(R_T) = U_T` for every T.
fn structured(space: &DescribedSpace, cl: &ClosureOperator, k: usize) -> Result<AxiomEntry> {
    let n = space.len();
    let mut checked = 0;
    for t in 0..1usize << k {
        checked += 1;
        let classes: Vec<usize> = (0..k).filter(|&c| t >> c & 1 == 1).collect();
        let reps = PointSet::from_indices(n, classes.iter().map(|&c| space.class_members(c)[0]));
        let union = PointSet::from_indices(
            n,
            classes.iter().flat_map(|&c| space.class_members(c).iter().copied()),
        );
        let closed = cl.apply(&reps)?;
        if closed != union {
            let mut e = entry(
                "closed-iff-saturated",
                "cl(A) = A ⇔ Φ⁻¹(Φ(A)) = A",
                Some(set_witness(space, &union, "saturated set whose closure differs".into())),
                checked,
                true,
            );
            e.note = Some("decided over unions of description classes".into());
            return Ok(e);
        }
    }
    let mut e = entry("closed-iff-saturated", "cl(A) = A ⇔ Φ⁻¹(Φ(A)) = A", None, checked, true);
    e.note = Some(format!(
        "decided over the 2^{k} unions of description classes instead of all 2^{n} subsets"
    ));
    Ok(e)
}

/// Open sets are closed under pairwise intersection, checked as closed sets
/// being closed under pairwise union over the class-union lattice.
fn finite_intersections(space: &DescribedSpace, cl: &ClosureOperator, k: usize) -> Result<AxiomEntry> {
    const CAP: usize = 8;
    let statement = "U, V open ⇒ U ∩ V open";
    if k > CAP {
        let mut e = entry("open-intersections", statement, None, 0, false);
        e.status = Status::Skipped;
        e.note = Some(format!("{k} classes exceed the pairwise cap of {CAP}"));
        return Ok(e);
    }
    let n = space.len();
    let union_of = |t: usize| {
        PointSet::from_indices(
            n,
            (0..k)
                .filter(|&c| t >> c & 1 == 1)
                .flat_map(|c| space.class_members(c).iter().copied()),
        )
    };
    let opens: Vec<PointSet> = (0..1usize << k)
        .map(union_of)
        .filter_map(|s| match cl.is_open(&s) {
            Ok(true) => Some(Ok(s)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let mut checked = 0;
    for u in &opens {
        for v in &opens {
            checked += 1;
            let meet = u.intersection(v);
            if !cl.is_open(&meet)? {
                let w = Witness {
                    a: space.ids_of(u),
                    b: space.ids_of(v),
                    c: None,
                    detail: "intersection of two open sets is not open".into(),
                };
                return Ok(entry("open-intersections", statement, Some(w), checked, true));
            }
        }
    }
    let mut e = entry("open-intersections", statement, None, checked, true);
    e.note = Some("over open unions of description classes".into());
    Ok(e)
}

/// R0 and T0 for the topology of `rel`; for Peters also T0 ⇔ Φ injective.
pub fn separation_checks(rel: &RelationSpec, space: &DescribedSpace) -> Result<AxiomReport> {
    rel.validate(space)?;
    let n = space.len();
    let budget = CheckBudget::default();
    let mut report = AxiomReport::new(rel.name(), "separation", n, &budget);
    let point_closures: Vec<PointSet> = (0..n)
        .map(|x| closure_validated(rel, space, &space.singleton(x)))
        .collect();
    let pair = |x: usize, y: usize, detail: String| Witness {
        a: vec![space.id(x).to_string()],
        b: vec![space.id(y).to_string()],
        c: None,
        detail,
    };

    let mut r0 = None;
    let mut r0_checked = 0;
    'r0: for x in 0..n {
        for y in 0..n {
            r0_checked += 1;
            if point_closures[y].contains(x) != point_closures[x].contains(y) {
                r0 = Some(pair(x, y, "x ∈ cl{y} but y ∉ cl{x}, or the reverse".into()));
                break 'r0;
            }
        }
    }
    report.entries.push(entry("R0", "x ∈ cl{y} ⇔ y ∈ cl{x}", r0, r0_checked, true));

    let mut t0 = None;
    let mut t0_checked = 0;
    'outer: for x in 0..n {
        for y in x + 1..n {
            t0_checked += 1;
            if point_closures[x] == point_closures[y] {
                t0 = Some(pair(
                    x,
                    y,
                    format!("distinct points share the closure {{{}}}", space.ids_of(&point_closures[x]).join(",")),
                ));
                break 'outer;
            }
        }
    }
    let t0_holds = t0.is_none();
    let mut t0_entry = entry("T0", "x ≠ y ⇒ cl{x} ≠ cl{y}", t0, t0_checked, true);
    t0_entry.note = Some("on these finite R0 spaces T2 coincides with T0 and is not tested separately".into());
    report.entries.push(t0_entry);

    if let RelationSpec::Peters = rel {
        let injective = space.is_injective();
        let mut e = entry("T0-iff-injective", "T0 ⇔ Φ injective", None, 1, true);
        if t0_holds != injective {
            e.status = Status::Fail;
            e.witness = Some(Witness {
                a: Vec::new(),
                b: Vec::new(),
                c: None,
                detail: format!("T0 = {t0_holds} but injective = {injective}"),
            });
        } else {
            e.note = Some(format!("T0 = injective = {injective}"));
        }
        report.entries.push(e);
    }
    Ok(report)
}
