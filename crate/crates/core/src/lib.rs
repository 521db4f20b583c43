//! Properly colored graphs, bichromatic paths and trees, and the colored
//! extremal function at small scale.

pub mod battery;
pub mod canon;
pub mod error;
pub mod extremal;
pub mod feasibility;
pub mod graph;
pub mod graph6;
pub mod io;
pub mod limits;
pub mod search;
pub mod unionfind;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, Coloring, Graph, VertexMask};
