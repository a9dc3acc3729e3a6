//! Orthogonal-family certificates: the verifiable direction of the counting
//! argument. Given explicit (program, target) pairs and a deterministic
//! decoder, checks exactly the clauses the proof consumes.

use super::counting::counting_bound;
use crate::qstate::{trace_distance, DensityMatrix};
use crate::Result;
use num_complex::Complex64;

/// A finite family of programs claimed to reproduce mutually orthogonal pure
/// targets within delta.
#[derive(Debug)]
pub struct CountingInstance<P> {
    /// Program length bound c (qubits).
    pub c: usize,
    /// Accuracy delta in (0, 1/e).
    pub delta: f64,
    /// (program, pure target) pairs.
    pub family: Vec<(P, DensityMatrix)>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Verdict {
    pub orthogonal_ok: bool,
    pub distance_ok: bool,
    pub lengths_ok: bool,
    pub count_ok: bool,
    pub precondition_met: bool,
    pub log2_count: f64,
    pub bound: f64,
    pub max_pair_overlap: f64,
    pub max_distance: f64,
    /// Human-readable clause violations (empty when all clauses pass).
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn all_ok(&self) -> bool {
        self.orthogonal_ok && self.distance_ok && self.lengths_ok && self.count_ok
    }
}

/// Verifies (a) pairwise orthogonality of the targets within 1e-9, (b) per
/// pair trace distance of decoder output to target <= delta, (c) program
/// lengths <= c, (d) log2(count) < counting_bound(c, delta). The verdict
/// carries any violated clause rather than erroring.
pub fn certify_family<P>(
    inst: &CountingInstance<P>,
    program_len: impl Fn(&P) -> usize,
    decoder: impl Fn(&P) -> Result<DensityMatrix>,
) -> Result<Verdict> {
    let n = inst.family.len();
    let mut violations = Vec::new();
    // (a) orthogonality via pure-state overlaps Tr(p_i p_j).
    let mut max_pair_overlap = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let a = &inst.family[i].1;
            let b = &inst.family[j].1;
            let mut overlap = Complex64::new(0.0, 0.0);
            for r in 0..a.dim() {
                for s in 0..a.dim() {
                    overlap += a.entry(r, s) * b.entry(s, r);
                }
            }
            max_pair_overlap = max_pair_overlap.max(overlap.norm());
        }
    }
    let orthogonal_ok = max_pair_overlap <= 1e-9;
    if !orthogonal_ok {
        violations.push(format!(
            "targets not mutually orthogonal: max overlap {max_pair_overlap:e}"
        ));
    }
    // (b) decoder accuracy.
    let mut max_distance = 0.0f64;
    for (p, target) in &inst.family {
        let out = decoder(p)?;
        let d = trace_distance(&out, target)?;
        max_distance = max_distance.max(d);
    }
    let distance_ok = max_distance <= inst.delta;
    if !distance_ok {
        violations.push(format!(
            "decoder misses delta = {}: worst distance {max_distance}",
            inst.delta
        ));
    }
    // (c) lengths.
    let mut lengths_ok = true;
    for (p, _) in &inst.family {
        let len = program_len(p);
        if len > inst.c {
            lengths_ok = false;
            violations.push(format!("program length {len} exceeds c = {}", inst.c));
            break;
        }
    }
    // (d) the counting bound.
    let bound = counting_bound(inst.c as u64, inst.delta)?;
    let log2_count = (n as f64).log2();
    let count_ok = log2_count < bound.value;
    if !count_ok {
        violations.push(format!(
            "log2 |family| = {log2_count} reaches the counting bound {}",
            bound.value
        ));
    }
    Ok(Verdict {
        orthogonal_ok,
        distance_ok,
        lengths_ok,
        count_ok,
        precondition_met: bound.precondition_met,
        log2_count,
        bound: bound.value,
        max_pair_overlap,
        max_distance,
        violations,
    })
}
