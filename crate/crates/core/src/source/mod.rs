//! Ergodic quantum source models: reduced states rho^(n), entropy rates and
//! the minimal typical-projector log-dimension beta_{eps,n}.

pub mod beta;
pub mod model;
pub mod sample;

pub use beta::{beta_eps_n, BetaResult};
pub use model::SourceModel;
pub use sample::sample_pure_in;
