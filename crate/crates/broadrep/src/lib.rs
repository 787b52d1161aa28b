//! Regenerating-code toolkit for broadcast repair of multiple (partially)
//! failed storage nodes.
//!
//! The library has three layers:
//!
//! * exact trade-off math: the threshold function alpha*(gamma) between
//!   per-node storage and broadcast repair bandwidth, its MSR/MBR corner
//!   points, and the cut-capacity formula it inverts ([`tradeoff`]);
//! * an independent min-cut oracle on information flow graphs that
//!   re-derives the same capacities by max-flow over enumerated
//!   failure/repair histories ([`flowgraph`]);
//! * an executable code: linearized-polynomial encoding over F_{q^l},
//!   broadcast repair with random recombination, reconstruction by Moore
//!   interpolation, and the experiment harness that measures subspace
//!   dimensions across repair rounds ([`sim`], [`linpoly`], [`subspace`],
//!   [`field`]).
//!
//! All trade-off and cut arithmetic is exact (`num::BigRational`); floats
//! appear only when rendering output.

pub mod error;
pub mod field;
pub mod flowgraph;
pub mod linalg;
pub mod linpoly;
pub mod presets;
pub mod ratio;
pub mod sim;
pub mod subspace;
pub mod tradeoff;

pub use error::{Error, Result};
