//! Maximum matching in general graphs by depth-first trunk search.
//!
//! The search grows an alternating path from a free vertex and, instead of
//! contracting odd cycles, backs up to a reserved free edge and detours
//! around them. See [`search`] for the search itself and [`matcher`] for the
//! driver that repeats it until no augmenting path remains.
//!
//! Supporting modules: [`coloring`] gives the two-link coloring view of a
//! matching, [`oracle`] holds exhaustive reference routines for small
//! graphs, and [`bench`] runs the random regular graph timing experiment.

pub mod bench;
pub mod cli;
pub mod coloring;
pub mod dimacs;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod matcher;
pub mod oracle;
pub mod search;
pub mod trace;

pub use graph::{Edge, Graph, Matching, VertexId};
