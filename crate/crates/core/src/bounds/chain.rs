//! Numerical walk through the counting-argument inequality chain: every
//! intermediate quantity between chi(ensemble) < c+1 and the final
//! (1-2d) log N - 2d - 2 eta(d) lower bound, each link asserted within 1e-6.

use crate::qstate::{
    eta, holevo_chi, pinch, relative_entropy, trace_distance, von_neumann_entropy, DensityMatrix,
    Ensemble, Projector,
};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Inputs, outputs and targets of one counting-argument instance. The
/// decoder is assumed linear, so E(mean input) = mean output.
#[derive(Debug)]
pub struct ChainInstance {
    /// Program length bound c.
    pub c: usize,
    /// Accuracy delta in (0, 1/e).
    pub delta: f64,
    /// Program states sigma_i (any common dimension).
    pub inputs: Vec<DensityMatrix>,
    /// Decoder outputs E(sigma_i) on the target space.
    pub outputs: Vec<DensityMatrix>,
    /// Mutually orthogonal pure targets p_i.
    pub targets: Vec<DensityMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub links: Vec<ChainLink>,
    pub all_ok: bool,
    pub chi_inputs: f64,
    pub log2_n: f64,
}

const TOL: f64 = 1e-6;

fn link(name: &'static str, lhs: f64, rhs: f64) -> ChainLink {
    // Asserts lhs <= rhs within tolerance.
    ChainLink {
        name,
        lhs,
        rhs,
        ok: lhs <= rhs + TOL,
    }
}

/// Evaluates every inequality of the chain on the instance. The premises
/// (output accuracy, target orthogonality) are certified separately by
/// `certify_family`; this check consumes them.
pub fn chi_chain_check(inst: &ChainInstance) -> Result<ChainReport> {
    let n = inst.inputs.len();
    if n == 0 || inst.outputs.len() != n || inst.targets.len() != n {
        return Err(Error::Malformed("chain instance size mismatch".into()));
    }
    let nf = n as f64;
    let log2_n = nf.log2();
    let delta = inst.delta;
    let weights = vec![1.0 / nf; n];

    // chi of the equidistributed input ensemble.
    let input_ens = Ensemble::new(weights.clone(), inst.inputs.clone())?;
    let chi_inputs = holevo_chi(&input_ens);

    // Pinching by {p_1, ..., p_N, rest}.
    let dim = inst.targets[0].dim();
    let mut target_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for t in &inst.targets {
        // Principal eigenvector of the pure target.
        let (vals, vecs) = t.eigen_decomposition();
        let top = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        target_cols.push(vecs[top].clone());
    }
    let mut projectors: Vec<Projector> = target_cols
        .iter()
        .map(|c| Projector::from_columns(dim, vec![c.clone()]))
        .collect();
    // Complement projector from the eigendecomposition of sum p_i.
    let mut sum = vec![Complex64::new(0.0, 0.0); dim * dim];
    for c in &target_cols {
        for i in 0..dim {
            for j in 0..dim {
                sum[i * dim + j] += c[i] * c[j].conj();
            }
        }
    }
    let sum_m = DensityMatrix::from_raw(dim, sum, 48);
    let (vals, vecs) = sum_m.eigen_decomposition();
    let raw_complement: Vec<Vec<Complex64>> = vals
        .iter()
        .zip(vecs)
        .filter(|(l, _)| **l < 0.5)
        .map(|(_, v)| v)
        .collect();
    if raw_complement.len() + n != dim {
        return Err(Error::Malformed(
            "targets do not split the space cleanly".into(),
        ));
    }
    // One Gram-Schmidt polish pass so the blocks resolve the identity to
    // near machine precision (the eigensolver stops at its convergence
    // threshold, which is coarser than the 2^-40 pinch gate).
    let mut complement: Vec<Vec<Complex64>> = Vec::with_capacity(raw_complement.len());
    for mut v in raw_complement {
        for basis in target_cols.iter().chain(complement.iter()) {
            let ip: Complex64 = (0..dim).map(|i| basis[i].conj() * v[i]).sum();
            for i in 0..dim {
                v[i] -= ip * basis[i];
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        complement.push(v);
    }
    if !complement.is_empty() {
        projectors.push(Projector::from_columns(dim, complement));
    }

    let pinched: Vec<DensityMatrix> = inst
        .outputs
        .iter()
        .map(|o| pinch(o, &projectors))
        .collect::<Result<_>>()?;
    let mean_output = DensityMatrix::mix(
        &inst
            .outputs
            .iter()
            .map(|o| (1.0 / nf, o))
            .collect::<Vec<_>>(),
    )?;
    let mean_pinched = pinch(&mean_output, &projectors)?;

    // Mean relative entropies on both sides of the pinching.
    let mut mean_rel_out = 0.0;
    let mut mean_rel_pinched = 0.0;
    for (o, p) in inst.outputs.iter().zip(&pinched) {
        mean_rel_out += relative_entropy(o, &mean_output)?.as_f64() / nf;
        mean_rel_pinched += relative_entropy(p, &mean_pinched)?.as_f64() / nf;
    }
    let s_mean_pinched = von_neumann_entropy(&mean_pinched);
    let mean_s_pinched: f64 = pinched.iter().map(von_neumann_entropy).sum::<f64>() / nf;

    // Premises: accuracy survives pinching; Delta is the uniform target mix.
    let delta_state = DensityMatrix::mix(
        &inst
            .targets
            .iter()
            .map(|t| (1.0 / nf, t))
            .collect::<Vec<_>>(),
    )?;
    let mut worst_pinched_dist = 0.0f64;
    for (p, t) in pinched.iter().zip(&inst.targets) {
        worst_pinched_dist = worst_pinched_dist.max(trace_distance(p, t)?);
    }
    let mix_dist = trace_distance(&mean_pinched, &delta_state)?;
    let s_delta = von_neumann_entropy(&delta_state);
    let fannes = delta * (nf + 1.0).log2() + eta(delta);

    let links = vec![
        // chi(E_sigma) < c + 1 via dim H_{<=c} = 2^(c+1) - 1.
        link("chi_below_c_plus_1", chi_inputs, inst.c as f64 + 1.0),
        // Monotonicity under the decoder.
        link("monotonicity_decoder", mean_rel_out, chi_inputs),
        // Monotonicity under pinching.
        link("monotonicity_pinching", mean_rel_pinched, mean_rel_out),
        // Algebraic identity for the pinched mean.
        link(
            "pinched_identity_fwd",
            s_mean_pinched - mean_s_pinched,
            mean_rel_pinched,
        ),
        link(
            "pinched_identity_rev",
            mean_rel_pinched,
            s_mean_pinched - mean_s_pinched,
        ),
        // Premises for Fannes.
        link("pinched_outputs_within_delta", worst_pinched_dist, delta),
        link("pinched_mean_within_delta", mix_dist, delta),
        // Fannes on the components and on the mixture.
        link("fannes_components", mean_s_pinched, fannes),
        link("fannes_mixture", s_delta - fannes, s_mean_pinched),
        // S(Delta) = log N for orthogonal pure targets.
        link("delta_entropy_fwd", s_delta, log2_n),
        link("delta_entropy_rev", log2_n, s_delta),
        // log N - 2d log(N+1) - 2 eta >= (1-2d) log N - 2d - 2 eta.
        link(
            "final_algebra",
            (1.0 - 2.0 * delta) * log2_n - 2.0 * delta - 2.0 * eta(delta),
            log2_n - 2.0 * delta * (nf + 1.0).log2() - 2.0 * eta(delta),
        ),
        // End to end.
        link(
            "end_to_end",
            (1.0 - 2.0 * delta) * log2_n - 2.0 * delta - 2.0 * eta(delta),
            inst.c as f64 + 1.0,
        ),
    ];
    let all_ok = links.iter().all(|l| l.ok);
    Ok(ChainReport {
        links,
        all_ok,
        chi_inputs,
        log2_n,
    })
}
