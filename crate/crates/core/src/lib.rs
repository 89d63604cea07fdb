//! Condensed walls, brick walls and exhaustive search for subdivisions and
//! linkages in them.

pub mod embed;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lemmas;
pub mod par;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeClass, LabeledGraph, Path, Role, Terminal, VertexId};
pub use par::Parallelism;
