//! Exact-arithmetic compression of ergodic qubit sources onto universal typical
//! subspaces, plus certifiable numerical checks of the information-theoretic
//! inequalities the scheme relies on (counting bound, Holevo bound, Fannes
//! continuity, typical-subspace dimensions).
//!
//! The crate is organized in layers:
//!
//! - [`exact`]: arbitrary-precision rationals, quadratic surds, exact sparse
//!   linear algebra, exact Gram-Schmidt, and dyadic big floats with explicit
//!   digit counts. Everything above is built on this substrate.
//! - [`qstate`]: density matrices, variable-length qubit strings and the
//!   entropy/distance functionals.
//! - [`source`]: Bernoulli and Markov source models, entropy rates and the
//!   minimal typical-projector log-dimension `beta`.
//! - [`universal`]: universal classical block codes, symmetric-subspace bases
//!   and the universal typical projectors `W` and `Q`.
//! - [`codec`]: the compressor and the decompression algorithm, parameter
//!   encoding, precision management and the approximate unitary.
//! - [`bounds`]: the quantum counting argument, orthogonal-family certificates
//!   and the complexity-rate experiment.

pub mod bounds;
pub mod codec;
pub mod error;
pub mod exact;
pub mod qstate;
pub mod source;
pub mod universal;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
