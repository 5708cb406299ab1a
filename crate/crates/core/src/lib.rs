//! Finite descriptive proximity spaces.
//!
//! A [`DescribedSpace`] is a finite set of points, each carrying an integer
//! feature vector (its description). The [`relations`] module evaluates the
//! family of (descriptive) proximity relations on pairs of [`PointSet`]s,
//! [`axioms`] verifies or refutes proximity axiom systems on a space with
//! replayable counterexamples, and [`topology`] studies the closure operator
//! each relation induces. [`ingest`] builds spaces from CSV tables and
//! PGM/PPM images.
//!
//! ```
//! use dprox::{build_space, FeatureVector, RelationSpec};
//!
//! let space = build_space([
//!     ("a", FeatureVector::from([1, 2])),
//!     ("b", FeatureVector::from([1, 2])),
//!     ("c", FeatureVector::from([3, 4])),
//! ])?;
//! let a = space.point_set(&["a"])?;
//! let b = space.point_set(&["b", "c"])?;
//! assert!(RelationSpec::Peters.near(&space, &a, &b)?);
//! assert!(!RelationSpec::Discrete.near(&space, &a, &b)?);
//! # Ok::<(), dprox::Error>(())
//! ```

pub mod axioms;
mod error;
pub mod exact;
pub mod ingest;
pub mod random;
pub mod relations;
mod space;
pub mod synth;
pub mod topology;

pub use axioms::{AxiomReport, CheckBudget};
pub use error::{Error, Result};
pub use exact::Epsilon;
pub use relations::RelationSpec;
pub use space::{
    build_space, descriptive_intersection, phi_classes, phi_image, saturation, DescribedSpace,
    FeatureSet, FeatureVector, Partition, PointSet, Raster,
};
