//! Cut and spectral sparsification of graphs and hypergraphs.
//!
//! Constructions:
//! - [`lll`]: additive sparsifiers by iterated random halving with
//!   Moser–Tardos resampling of small connected cut events.
//! - [`det`]: a deterministic additive spectral sparsifier driven by a
//!   density-matrix game.
//! - [`spectral`]: multiplicative hypergraph spectral sparsifiers by
//!   resistance-based importance sampling.
//!
//! Every output can be checked independently with [`verify`].

pub mod cli;
pub mod det;
pub mod error;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod lll;
pub mod model;
pub mod par;
pub mod reduction;
pub mod report;
pub mod rng;
pub mod sparsifier;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Graph, Hypergraph};
pub use rng::Seed;
pub use sparsifier::{Construction, SparsifierResult};
