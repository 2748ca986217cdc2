//! Exact computation around matchings in small graphs: named extremal
//! constructions, exact subgraph-copy counting with a fast path for
//! matchings, Berge-Tutte structure, isomorph-free exhaustive generation
//! with a brute-force extremal oracle, and replayable verification of the
//! closed forms these pieces support.
//!
//! Everything is exact: counts are arbitrary-precision integers and every
//! search is exhaustive within its documented caps. The crate is built for
//! desk scale (enumeration up to ten vertices, constructions up to 64).

pub mod canon;
pub mod construct;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod names;
pub mod theorems;

pub use construct::{build, ConstructionSpec};
pub use error::{Error, Result};
pub use graph::Graph;
pub use graph6::{from_graph6, to_graph6};
