//! Quantum states, variable-length qubit strings and the entropy/distance
//! functionals used by the bounds.
//!
//! Numerics here run at a fixed working precision (f64 arithmetic with a
//! precision tag in trusted binary digits); the support and validity
//! thresholds all derive from that single tag. States produced exactly by the
//! codec pipeline live in `exact`/`codec` types instead and only cross into
//! this module for functional evaluation.

pub mod density;
pub mod eigen;
pub mod functionals;
pub mod io;
pub mod projector;
pub mod qubit_string;

pub use density::{DensityMatrix, Ensemble, DEFAULT_PRECISION_BITS};
pub use functionals::{
    eta, fannes_bound, holevo_chi, partial_trace, pinch, relative_entropy, trace_distance,
    von_neumann_entropy, RelEntropy,
};
pub use projector::Projector;
pub use qubit_string::QubitString;
