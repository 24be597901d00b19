//! Minimal collapsible sets of undirected graphical models.
//!
//! The main entry point is [`collapse::cmsa`], which grows a target set by
//! absorbing close minimal separators until every component outside it has
//! a complete boundary. [`collapse::sahr`] and
//! [`collapse::minimal_collapsible_bruteforce`] are the reference
//! algorithms it is checked against.

pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod cli;
pub mod collapse;
pub mod separators;

pub use error::{Error, Result};
pub use graph::{build_graph, ComponentDecomposition, Graph, GraphBuilder, Vertex, VertexSet};
