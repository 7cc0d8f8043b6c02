//! Exact integral homology and cochain computations for random simplicial
//! complexes built face by face.
//!
//! The main entry points are re-exported at the crate root:
//! [`Complex`] and [`Face`] for the combinatorics, [`homology`] for integral
//! homology via Smith normal form, [`ProcessState`] for the random process,
//! and the audits in [`cocycle`].

pub mod cocycle;
pub mod error;
pub mod harness;
pub mod homology;
pub mod int;
pub mod process;
pub mod simplex;
pub mod zlinalg;

pub use cocycle::{Caps, Cochain, ConditionReport};
pub use error::{Error, Result};
pub use harness::{CampaignSummary, ExperimentConfig, ExperimentKind};
pub use homology::{betti, homology, homology_is_zero, HomologySummary};
pub use int::Int;
pub use process::{sample_static, HittingTimes, ProcessState, TrialRecord};
pub use simplex::{Complex, Face, FacetSet};
pub use zlinalg::{smith_normal_form, FieldSpec, SmithForm, SparseIntMatrix};
