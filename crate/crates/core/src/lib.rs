//! Recognition, canonical decomposition and isomorphism of NLC-2 graphs.
//!
//! A graph is NLC-2 when it can be built from single labelled vertices using
//! label-driven joins `×_S` and relabellings `ρ_R` over two labels. This crate
//! decides membership, emits a replayable construction term for members,
//! computes the canonical relabel-free decomposition of 2-labelled graphs and
//! tests isomorphism of NLC-2 graphs. Brute-force oracles for small inputs
//! live in [`oracles`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;
pub mod bipartitive;
pub mod canonical;
pub mod expression;
pub mod graph;
pub mod isomorphism;
pub mod label;
pub mod modular;
pub mod oracles;
pub mod recognition;
pub mod scut;
pub mod trigraph;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexSet};
pub use label::{Label, LabelledGraph, Labelling};
