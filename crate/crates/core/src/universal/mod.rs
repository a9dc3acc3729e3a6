//! Universal classical block codes and the universal typical projectors
//! W_{l,R}^(ln) and Q_{s,eps}^(m).

pub mod codebook;
pub mod symmetric;
pub mod typical;

pub use codebook::Codebook;
pub use symmetric::SymmetricBasis;
pub use typical::{build_q, build_w, lm_for, typicality, TypicalProjector};
