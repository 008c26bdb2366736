//! Moment-cone membership and weight multiplicities for acyclic quivers.
//!
//! Given a connected acyclic quiver, a dimension vector, and a dominant
//! integer weight per vertex, this crate builds a combinatorial linear
//! program — every coefficient is -1, 0, or 1, and the right-hand side is
//! linear in the weights — whose rational feasibility decides membership of
//! the weight family in the moment cone of the quiver, and whose integer
//! points count the multiplicity of the family in the ring of polynomial
//! functions on the representation space.
//!
//! The pieces:
//!
//! * [`quiver`] — quivers, dimension vectors, dominant weights.
//! * [`hive`] — triangular-array constraint blocks whose lattice points
//!   count tensor-product invariants, and their multi-factor extension.
//! * [`lpmodel`] — assembling the per-vertex blocks into one symbolic
//!   program, substituting weights, emitting LP text, auditing coefficients.
//! * [`exactlp`] — exact rational feasibility and optimization with
//!   verifiable certificates; no floating point anywhere.
//! * [`decision`] — membership decisions and integer-point counts.
//! * [`oracle`] — independent reference computations from partition
//!   combinatorics (tableaux, tensor decompositions, flow counts).
//! * [`semistability`] — one-parameter weights, the reduction of generic
//!   semistability to membership, and closed forms for two fixed quivers.
//! * [`suite`] — deterministic cross-validation sweeps shared by the test
//!   suite and the command-line `selftest`.

pub mod decision;
pub mod error;
pub mod exactlp;
pub mod hive;
pub mod lpmodel;
pub mod oracle;
pub mod quiver;
pub mod semistability;
pub mod suite;

pub use error::{Error, Result};
pub use quiver::{d_map, dual_weight, Arrow, DimensionVector, Quiver, Weight, WeightFamily};
