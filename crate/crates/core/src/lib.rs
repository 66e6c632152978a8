//! Exact pair correlations and wavevector-dependent susceptibilities of planar Ising models.
//!
//! The crate builds tables of the correlation pair of a square-lattice Ising
//! model and its Kramers-Wannier dual from quadratic recurrences, maps them to
//! the fully frustrated lattice, and sums them into chi(q) on Brillouin-zone
//! grids. The [`oracle`] module recomputes the same quantities by brute force.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod real;
pub mod elliptic;
pub mod couplings;
pub mod corr;
pub mod frustrated;
pub mod quasiperiodic;
pub mod chi;
pub mod oracle;
pub mod output;
pub mod cli;

pub use error::{Error, Result};
