//! Executable graph constructions with verifiable outputs.
//!
//! The crate is organised around a dense bitset [`Graph`] and a handful of
//! modules that build on it:
//!
//! - [`graph`]: representation, generators, free amalgamation, isomorphism
//!   and embedding search, file formats.
//! - [`coloring`]: exact chromatic number (DSATUR branch and bound), maximum
//!   clique, greedy coloring and certificate checks.
//! - [`mycielski`]: the Mycielskian built from free amalgamation steps.
//! - [`predimension`]: exact-rational `delta_alpha`, class membership and
//!   closedness via minimum cuts, the low-degree `k*` coloring and the
//!   Mycielski lower-bound witnesses.
//! - [`amalgamation`]: class descriptors, extension-axiom growth and audits,
//!   finite homogeneity checks.
//! - [`witnesses`]: half-graph and shattered-set searches.
//! - [`cell`]: the clique-or-coloring procedure for graphs whose edges are
//!   given by piecewise-linear rational bounds.
//!
//! Every search returns a certificate that can be re-checked with the plain
//! definitional verifiers in [`coloring`], [`witnesses`] and [`cell`].

pub mod amalgamation;
pub mod bitset;
pub mod cell;
pub mod coloring;
pub mod error;
mod flow;
pub mod graph;
pub mod mycielski;
pub mod predimension;
pub mod rng;
pub mod witnesses;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Embedding, Graph};
