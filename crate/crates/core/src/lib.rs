//! Construction, recognition, and spectral scoring of the extremal
//! outerplanar and planar graph families that maximize the adjacency
//! spectral radius under forbidden-subgraph constraints.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: immutable bitset graphs, combinators, graph6 IO.
//! - [`recognition`]: planarity (left-right test) and outerplanarity.
//! - [`forbidden`]: cycle, cycle-bouquet, and matching detectors.
//! - [`spectral`]: certified power iteration and bound checks.
//! - [`constructions`]: path partitions, the extremal families, and the
//!   path-merging transformation.
//! - [`search`]: canonical labeling, isomorph-free enumeration, exhaustive
//!   and local extremal search.
//! - [`experiments`]: verification suites and traceability reports.
//! - [`cli`]: the `spexlab` command-line front end.

pub mod error;
pub mod graph;
pub mod recognition;
pub mod forbidden;
pub mod spectral;
pub mod constructions;
pub mod search;
pub mod experiments;
pub mod cli;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
