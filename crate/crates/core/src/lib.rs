//! Majority additive colorings of graphs.
//!
//! A coloring `c: V(G) -> {1, 2, ...}` is *majority additive* when no vertex
//! of degree at least two has more than half of its neighbors sharing the
//! same neighbor sum `s_c(v) = sum of c over N(v)`.
//!
//! The crate provides the verifier and goodness test, the greedy recoloring
//! with its quadratic color bound, a resampling sampler for graphs with the
//! private neighbor property, an exact solver, Steiner triple system
//! lower-bound graphs, and the two hardness reductions.
//!
//! Color values are generic over [`Color`], implemented for every unsigned
//! primitive integer and for [`num_bigint::BigUint`]. The aliases below fix
//! the two representations used throughout the CLI.

pub mod color;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod lll;
pub mod reductions;

pub use color::Color;
pub use coloring::{
    is_good, neighbor_sum, neighbor_sums, one_mac_check, powers_init, verify, Coloring,
    GoodnessWitness, Violation, ViolationReport,
};
pub use error::{Error, Result};
pub use graph::{Graph, GraphFormat};

/// Arbitrary-precision colors, needed for the powers-of-two coloring on more
/// than 64 vertices and for intermediate greedy states.
pub type BigColor = num_bigint::BigUint;
/// Machine-word colors.
pub type WordColor = u64;

pub type BigColoring = Coloring<BigColor>;
pub type WordColoring = Coloring<WordColor>;
pub type BigViolationReport = ViolationReport<BigColor>;
pub type WordViolationReport = ViolationReport<WordColor>;
