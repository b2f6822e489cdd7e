//! Exact counting, constructions and bound evaluators for clique
//! supersaturation experiments.

pub mod bounds;
pub mod constructions;
pub mod counters;
pub mod covers;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod io;
pub mod named;
pub mod seed;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, CliqueUnion, Graph, Hypergraph};
pub use named::{named_graph, NamedGraph, PatternKind};
