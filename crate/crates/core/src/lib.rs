//! Explainable hallucination detection for image captions.
//!
//! Caption-side and image-side concepts are mapped onto a WordNet hypernym
//! hierarchy; minimal-cost edit plans (replace, delete, insert) transform the
//! caption concepts into the image concepts, and the edits are classified
//! into hallucination phenomena from which per-instance and corpus-level
//! metrics are derived.
//!
//! The crate is `no_std` (it needs `alloc`). Reading files, the dataset
//! format and the command line live in the `halcece` companion crate.
//!
//! Module map:
//!
//! * [`taxonomy`]: WNDB parsing, shortest paths, LCA, Wu-Palmer.
//! * [`ingest`]: instance records, normalization and taxonomy mapping.
//! * [`assignment`]: the linear assignment solver shared by all planners.
//! * [`objects`]: object-level edit plans and phenomenon classification.
//! * [`roles`]: scene graphs and role-level edits via approximate GED.
//! * [`metrics`]: instance reports, CHAIR, n-gram metrics, correlation and
//!   aggregation.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod cost;
pub mod ingest;
pub mod metrics;
pub mod objects;
pub mod roles;
pub mod taxonomy;

pub use cost::SemanticCost;
pub use ingest::{map_instance, InstanceRecord, MappedInstance, Overrides, Side, Triple};
pub use objects::{object_edit_plan, Edit, EditKind, EditPlan, Phenomenon};
pub use roles::{approx_ged, exact_ged, GedConfig, RoleCause, RoleEdit, RolePlan, SceneGraph};
pub use taxonomy::{Pos, Synset, SynsetId, Taxonomy, TaxonomyError};
