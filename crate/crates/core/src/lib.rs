//! Expander (bipartite-graph) codes: exact GF(2) constructions at small
//! scale, brute-force parameter oracles, and the asymptotic rate/distance
//! curves they are compared against.

// Negated float comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod ensemble;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod localcode;
pub mod report;
pub mod tanner;

#[cfg(test)]
mod proptests;

pub use bounds::BoundPoint;
pub use ensemble::{EnsembleConfig, EnsembleReport, EnsembleVariant};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, QaryView, MAX_ENUM_DIM};
pub use graph::{BipartiteGraph, ModifiedGraph, SpectralData};
pub use localcode::{catalog_get, catalog_lookup, CodeName, LocalCode};
pub use tanner::{CodeFile, CodeRef, CodewordProfile, ExpanderCode, Variant};
