//! Exact arithmetic substrate.
//!
//! Values here are immutable and operations are pure; the whole module is safe
//! to use from concurrent contexts without coordination. All logarithms in
//! this crate are base 2.

pub mod bigfloat;
pub mod gram;
pub mod linalg;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod surd;

pub use bigfloat::{to_bigfloat, BigFloat, FixedVec, Radicand};
pub use gram::{gram_schmidt_exact, SurdBasis, SurdColumn};
pub use linalg::{rank_extend, SpanBasis};
pub use matrix::ExactMatrix;
pub use rational::{parse_rat, rat, rat_int, rat_to_string, Rat};
pub use sparse::SparseVec;
