//! Multipackings and broadcast domination on cactus graphs.
//!
//! The library builds a multipacking of size at least `⌈2r/3⌉ - 4` on any
//! cactus of radius `r` in linear time, and ships exact oracles to check such
//! bounds on small instances.

pub mod cactus;
pub mod construct;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod hyperbolicity;
pub mod io;
pub mod metric;
pub mod oracles;
pub mod radial;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{DistMatrix, Graph, PathSeq, Vertex};
