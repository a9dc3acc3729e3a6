//! Deterministic sampling of pure states inside a projector's range.

use crate::qstate::{DensityMatrix, Projector};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two independent standard normals via Box-Muller.
fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let th = 2.0 * std::f64::consts::PI * u2;
    (r * th.cos(), r * th.sin())
}

/// Complex standard-normal coefficients, deterministic per seed.
pub fn gaussian_coefficients(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (re, im) = normal_pair(&mut rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// A unit vector uniformly distributed (rotation-invariant) in range(P),
/// returned as a pure density matrix. Deterministic per seed.
pub fn sample_pure_in(p: &Projector, seed: u64) -> Result<DensityMatrix> {
    let rank = p.rank();
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let cols = p.columns_f64();
    let coeffs = gaussian_coefficients(rank, seed);
    let dim = p.dim();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for (c, col) in coeffs.iter().zip(&cols) {
        for (a, x) in amps.iter_mut().zip(col) {
            *a += c * x;
        }
    }
    DensityMatrix::from_pure(&amps)
}
