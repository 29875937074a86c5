//! Numerical verification toolkit for spectral clique-number bounds.
//!
//! The centerpiece is the inequality mu1^2 + mu2^2 <= 2(omega-1)/omega * m
//! relating the two largest adjacency eigenvalues of a graph to its clique
//! number and edge count. This crate evaluates that inequality (and the
//! identities behind its proof for regular graphs) on concrete graphs,
//! classifies the equality cases, and scans graph families for tight or
//! violating instances.

pub mod clique;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod scan;
pub mod source;
pub mod spectral;

pub use error::Error;
pub use graph::{Graph, GraphStats};

pub type Result<T> = std::result::Result<T, Error>;
