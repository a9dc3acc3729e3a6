//! beta_{eps,n}: log2 of the minimal trace of a projector q with
//! Psi^(n)(q) >= 1 - eps.
//!
//! The minimal projector can be taken to commute with rho^(n), and among
//! eigenprojectors greedy-largest-eigenvalues is optimal, so beta reduces to
//! counting how many of the largest eigenvalues are needed to reach mass
//! 1 - eps. Ties among equal eigenvalues are broken by basis index order,
//! which does not change the count.

use super::model::SourceModel;
use crate::exact::rational::{rat_to_f64, Rat};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct BetaResult {
    /// Minimal number of eigenvectors (the projector trace).
    pub k_star: BigUint,
    /// log2(k_star).
    pub beta: f64,
    /// Whether the count was decided in exact rational arithmetic.
    pub exact: bool,
}

/// Computes beta_{eps,n} for the source. Exact rational accumulation is used
/// whenever the model's spectrum is rational; otherwise f64.
pub fn beta_eps_n(model: &SourceModel, eps: &Rat, n: u32) -> Result<BetaResult> {
    if !(eps.is_positive() && eps < &Rat::one()) {
        return Err(Error::InvalidParameter(format!(
            "eps must be in (0,1), got {eps}"
        )));
    }
    if let Some(mut classes) = model.exact_spectrum_classes(n) {
        // Sort by eigenvalue descending; accumulate until >= 1 - eps.
        classes.sort_by(|a, b| b.0.cmp(&a.0));
        let need = Rat::one() - eps;
        let mut mass = Rat::zero();
        let mut count = BigUint::zero();
        for (val, mult) in classes {
            if val.is_zero() {
                break;
            }
            let mult_rat = Rat::from_integer(mult.clone().into());
            let class_mass = &val * &mult_rat;
            if &mass + &class_mass >= need {
                // Partial class: ceil((need - mass) / val) more eigenvectors.
                let rem = &need - &mass;
                let q = &rem / &val;
                let mut take = q.numer() / q.denom(); // floor, both positive
                if Rat::from_integer(take.clone()) != q {
                    take += 1;
                }
                count += take.to_biguint().expect("nonnegative");
                let beta = log2_biguint(&count);
                return Ok(BetaResult {
                    k_star: count,
                    beta,
                    exact: true,
                });
            }
            mass += class_mass;
            count += mult;
        }
        // Spectrum exhausted: the whole support is needed.
        let beta = log2_biguint(&count);
        return Ok(BetaResult {
            k_star: count,
            beta,
            exact: true,
        });
    }
    // f64 fallback.
    let mut classes = model.spectrum_classes_f64(n);
    classes.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let need = 1.0 - rat_to_f64(eps);
    let mut mass = 0.0;
    let mut count = 0u64;
    for (val, mult) in classes {
        if val <= 0.0 {
            break;
        }
        let class_mass = val * mult as f64;
        if mass + class_mass >= need {
            let take = ((need - mass) / val).ceil().max(1.0) as u64;
            count += take.min(mult);
            break;
        }
        mass += class_mass;
        count += mult;
    }
    Ok(BetaResult {
        k_star: BigUint::from(count),
        beta: (count as f64).log2(),
        exact: false,
    })
}

fn log2_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        (u64::try_from(x).unwrap() as f64).log2()
    } else {
        let shift = bits - 53;
        let top = u64::try_from(&(x >> shift)).unwrap();
        (top as f64).log2() + shift as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::source::model::Markov;

    #[test]
    fn pure_source_has_beta_zero() {
        let s = SourceModel::bernoulli_diag(rat(1, 1)).unwrap();
        for eps_den in [2, 5, 10] {
            let b = beta_eps_n(&s, &rat(1, eps_den), 6).unwrap();
            assert_eq!(b.k_star, BigUint::from(1u32));
            assert_eq!(b.beta, 0.0);
        }
    }

    #[test]
    fn single_site_certainty() {
        // Bernoulli(0.9), eps = 0.1, n = 1: the 0.9 eigenvalue alone reaches 0.9.
        let s = SourceModel::bernoulli_diag(rat(9, 10)).unwrap();
        let b = beta_eps_n(&s, &rat(1, 10), 1).unwrap();
        assert_eq!(b.k_star, BigUint::from(1u32));
        assert_eq!(b.beta, 0.0);
    }

    #[test]
    fn frozen_bernoulli_sequence() {
        // Frozen from the exact integer brute force (sorted path
        // probabilities): k* at n = 5, 10, 15, 20 for Bernoulli(0.9), eps=0.1.
        let s = SourceModel::bernoulli_diag(rat(9, 10)).unwrap();
        let expected: [(u32, u64); 4] = [(5, 6), (10, 50), (15, 419), (20, 3130)];
        for (n, want) in expected {
            let b = beta_eps_n(&s, &rat(1, 10), n).unwrap();
            assert!(b.exact);
            assert_eq!(b.k_star, BigUint::from(want), "n = {n}");
        }
        // The per-site rates approach s only as Theta(1/sqrt(n)); the gap at
        // n=20 is ~0.112 and the tail 15 -> 20 is (slightly) decreasing.
        let s_rate = s.entropy_rate();
        let gap = |n: u32, k: u64| ((k as f64).log2() / n as f64 - s_rate).abs();
        assert!(gap(20, 3130) < gap(15, 419));
    }

    #[test]
    fn beta_nonincreasing_in_eps() {
        let s = SourceModel::bernoulli_diag(rat(9, 10)).unwrap();
        let n = 8;
        let mut last = f64::INFINITY;
        for eps in [rat(1, 20), rat(1, 10), rat(1, 4), rat(1, 2), rat(9, 10)] {
            let b = beta_eps_n(&s, &eps, n).unwrap();
            assert!(b.beta <= last + 1e-12);
            last = b.beta;
        }
    }

    #[test]
    fn markov_beta_runs_exactly() {
        let m = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        let s = SourceModel::MarkovDiagonal(m);
        let b = beta_eps_n(&s, &rat(1, 10), 10).unwrap();
        assert!(b.exact);
        assert!(b.beta > 0.0);
    }

    #[test]
    fn greedy_matches_exhaustive_eigenbasis_search_small_n() {
        // For n <= 3 enumerate all subsets of eigenvectors and find the
        // smallest subset with mass >= 1 - eps; must equal greedy.
        let s = SourceModel::bernoulli_diag(rat(7, 10)).unwrap();
        for n in 1..=3u32 {
            let r = s.reduced_state(n).unwrap();
            let probs: Vec<f64> = (0..r.dim()).map(|i| r.entry(i, i).re).collect();
            for eps in [rat(1, 10), rat(1, 4), rat(2, 5)] {
                let need = 1.0 - rat_to_f64(&eps);
                let dim = probs.len();
                let mut best = usize::MAX;
                for mask in 0u32..(1 << dim) {
                    let mass: f64 = (0..dim)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| probs[i])
                        .sum();
                    if mass >= need - 1e-13 {
                        best = best.min(mask.count_ones() as usize);
                    }
                }
                let b = beta_eps_n(&s, &eps, n).unwrap();
                assert_eq!(
                    u64::try_from(&b.k_star).unwrap() as usize,
                    best,
                    "n={n} eps={eps}"
                );
            }
        }
    }

    #[test]
    fn no_general_projector_beats_greedy_at_n2() {
        // Discretized projector net at n = 2 (dimension 4): random rank-r
        // projectors from seeded Gaussian frames; none with expectation
        // >= 1 - eps may have rank below the greedy k*.
        use rand::{Rng, SeedableRng};
        let s = SourceModel::bernoulli_diag(rat(7, 10)).unwrap();
        let rho = s.reduced_state(2).unwrap();
        let eps = rat(1, 4);
        let kstar = u64::try_from(&beta_eps_n(&s, &eps, 2).unwrap().k_star).unwrap() as usize;
        let need = 1.0 - rat_to_f64(&eps);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let rank = rng.gen_range(1..kstar.max(2));
            // Random orthonormal frame via Gram-Schmidt on Gaussian vectors.
            let mut cols: Vec<Vec<num_complex::Complex64>> = Vec::new();
            while cols.len() < rank {
                let mut v: Vec<num_complex::Complex64> = (0..4)
                    .map(|_| {
                        num_complex::Complex64::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        )
                    })
                    .collect();
                for c in &cols {
                    let ip: num_complex::Complex64 =
                        (0..4).map(|i| c[i].conj() * v[i]).sum();
                    for i in 0..4 {
                        v[i] -= ip * c[i];
                    }
                }
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-6 {
                    for z in &mut v {
                        *z /= norm;
                    }
                    cols.push(v);
                }
            }
            let p = crate::qstate::Projector::from_columns(4, cols);
            let mass = p.overlap(&rho);
            assert!(
                mass < need + 1e-9,
                "rank {rank} projector reached mass {mass}, beating k* = {kstar}"
            );
        }
    }
}
