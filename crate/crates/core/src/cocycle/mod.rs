//! Cochain-level quantities on the full simplex: weights, coboundary sizes,
//! local cocycles of a complex, and the exhaustive audits built on them.
//!
//! Everything here is brute force. Each search is bounded by [`Caps`], and a
//! bound that would be exceeded is reported as an error.

mod ambient;
mod audit;
mod cochain;
mod conditions;
mod minimal;
mod sets;
mod weight;

pub use audit::{coiso_audit, AuditRecord, CoisoReport};
pub use cochain::{b_of_cochain, beta_of_set, Cochain};
pub use conditions::{check_conditions, deterministic_rank_check, ConditionReport};
pub use minimal::minimal_cocycle_supports;
pub use sets::{b_of_set, default_fields, z_holds};
pub use weight::{weight, Caps};
