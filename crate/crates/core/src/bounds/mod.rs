//! The quantum counting argument, orthogonal-family certificates and the
//! complexity-rate experiment.

pub mod certify;
pub mod chain;
pub mod counting;
pub mod experiment;

pub use certify::{certify_family, CountingInstance, Verdict};
pub use chain::{chi_chain_check, ChainInstance, ChainReport};
pub use counting::{counting_bound, counting_bound_exact, CountingBound};
pub use experiment::{complexity_rate_experiment, ExperimentRow};
