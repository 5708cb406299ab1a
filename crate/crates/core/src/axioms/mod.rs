//! Mechanical verification of proximity axioms on finite spaces.
//!
//! Every check returns an [`AxiomReport`] with one entry per axiom. Failing
//! entries carry a [`Witness`] that [`replay_witness`] confirms independently.
//!
//! Exhaustive mode enumerates all `2^|X|` subsets, so it is limited to
//! spaces of at most [`CheckBudget::subset_cap`] points. Sampled mode draws
//! sets from a seeded ChaCha stream and never claims exhaustiveness.

mod checks;
mod enlargement;
mod replay;
mod report;
pub(crate) mod scan;
pub(crate) mod universe;

pub use checks::{
    check_cech, check_ef, check_ef_betweenness, check_kuratowski, check_lodato, check_separated,
    check_strong, classify_vs_peters, Classification, Verdict,
};
pub use enlargement::check_enlargement;
pub use replay::replay_witness;
pub use report::{
    canonical_json, AxiomEntry, AxiomReport, CheckBudget, Mode, Status, Witness, REPORT_VERSION,
};
pub use universe::MAX_TABLE_POINTS;
