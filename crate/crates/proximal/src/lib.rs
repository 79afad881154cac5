//! Finite proximity spaces and the discrete homotopy invariants built on
//! them: nearness axioms, descriptive (feature-indexed) proximity, pc-maps
//! with certificate-backed homotopy decisions, homotopic distance,
//! topological complexity and sectional genus.
//!
//! Everything is deterministic: collections iterate in canonical order,
//! witnesses are the smallest in that order, and search budgets count
//! states rather than time.

pub mod complexity;
pub mod descriptive;
pub mod error;
pub mod homotopy;
pub mod oracle;
pub mod search;
pub mod space;
pub mod winding;

pub use error::{Error, Result};
pub use space::{Metric, ProximitySpace, DEFAULT_PRODUCT_CAP};
