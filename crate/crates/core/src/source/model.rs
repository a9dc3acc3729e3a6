//! Source models: Bernoulli product sources and classical Markov chains,
//! optionally conjugated sitewise by a fixed unitary.
//!
//! Correlated ergodic sources are realized as irreducible aperiodic two-state
//! Markov chains; ergodicity then holds, the entropy rate has a closed form,
//! and the rotated variant produces genuinely non-diagonal correlated states.

use crate::exact::rational::{parse_rat, rat_to_f64, Rat};
use crate::qstate::density::{DensityMatrix, DEFAULT_PRECISION_BITS};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Default memory budget: reduced states up to 2^12 dimensions.
pub const MAX_BLOCK_LEN: u32 = 12;

#[derive(Debug, Clone)]
pub struct Markov {
    /// Row-stochastic transition matrix, exact.
    pub p: [[Rat; 2]; 2],
    /// Stationary distribution, exact.
    pub pi: [Rat; 2],
}

impl Markov {
    pub fn new(p: [[Rat; 2]; 2]) -> Result<Self> {
        for row in &p {
            for e in row {
                if !e.is_positive() {
                    return Err(Error::InvalidParameter(
                        "Markov entries must be > 0 (irreducible + aperiodic)".into(),
                    ));
                }
            }
            let s: Rat = row.iter().cloned().sum();
            if s != Rat::one() {
                return Err(Error::InvalidParameter(format!(
                    "Markov row sums to {s}, not 1"
                )));
            }
        }
        // pi = (b, a)/(a+b) for P = [[1-a, a], [b, 1-b]].
        let a = p[0][1].clone();
        let b = p[1][0].clone();
        let denom = &a + &b;
        let pi = [&b / &denom, &a / &denom];
        Ok(Self { p, pi })
    }

    /// Exact stationarity defect pi P - pi (used by the 1e-12 invariant test).
    pub fn stationarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..2 {
            let mut acc = Rat::zero();
            for i in 0..2 {
                acc += &self.pi[i] * &self.p[i][j];
            }
            worst = worst.max(rat_to_f64(&(acc - &self.pi[j])).abs());
        }
        worst
    }

    /// Exact probability of the bit path x_1..x_n under the stationary chain.
    pub fn path_probability(&self, bits: u64, n: u32) -> Rat {
        let bit = |i: u32| ((bits >> (n - 1 - i)) & 1) as usize;
        let mut pr = self.pi[bit(0)].clone();
        for i in 0..n - 1 {
            pr *= &self.p[bit(i)][bit(i + 1)];
        }
        pr
    }

    /// Closed-form entropy rate -sum_i pi_i sum_j P_ij log2 P_ij.
    pub fn entropy_rate(&self) -> f64 {
        let mut h = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let pij = rat_to_f64(&self.p[i][j]);
                h -= rat_to_f64(&self.pi[i]) * pij * pij.log2();
            }
        }
        h
    }
}

#[derive(Debug, Clone)]
pub enum SourceModel {
    /// Shift-invariant product source rho^(n) = rho^(x) ... (x) rho.
    Bernoulli {
        /// Exact 2x2 entries (row-major, complex rational).
        rho: [[(Rat, Rat); 2]; 2],
    },
    /// Diagonal (classical) stationary Markov chain.
    MarkovDiagonal(Markov),
    /// Markov chain conjugated sitewise by a fixed single-qubit unitary.
    RotatedMarkov(Markov, [[Complex64; 2]; 2]),
}

impl SourceModel {
    pub fn bernoulli_diag(p0: Rat) -> Result<Self> {
        let p1 = Rat::one() - &p0;
        if p0.is_negative() || p1.is_negative() {
            return Err(Error::InvalidParameter("probability out of [0,1]".into()));
        }
        Ok(Self::Bernoulli {
            rho: [
                [(p0, Rat::zero()), (Rat::zero(), Rat::zero())],
                [(Rat::zero(), Rat::zero()), (p1, Rat::zero())],
            ],
        })
    }

    pub fn single_site(&self) -> DensityMatrix {
        match self {
            Self::Bernoulli { rho } => {
                let data: Vec<Complex64> = rho
                    .iter()
                    .flatten()
                    .map(|(re, im)| Complex64::new(rat_to_f64(re), rat_to_f64(im)))
                    .collect();
                DensityMatrix::new(2, data, DEFAULT_PRECISION_BITS)
                    .expect("validated at parse time")
            }
            Self::MarkovDiagonal(m) | Self::RotatedMarkov(m, _) => {
                let d = DensityMatrix::diagonal(&[rat_to_f64(&m.pi[0]), rat_to_f64(&m.pi[1])])
                    .expect("stationary distribution is a distribution");
                match self {
                    Self::RotatedMarkov(_, u) => d.conjugate_by(&flatten_u(u)),
                    _ => d,
                }
            }
        }
    }

    /// The reduced state rho^(n) as a dense matrix. Bernoulli gives the n-th
    /// tensor power, Markov the diagonal matrix of path probabilities, and
    /// the rotated variant its sitewise conjugation.
    pub fn reduced_state(&self, n: u32) -> Result<DensityMatrix> {
        if n < 1 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if n > MAX_BLOCK_LEN {
            return Err(Error::BudgetExceeded(format!(
                "block length {n} exceeds budget {MAX_BLOCK_LEN}"
            )));
        }
        match self {
            Self::Bernoulli { .. } => {
                let site = self.single_site();
                let mut out = site.clone();
                for _ in 1..n {
                    out = out.tensor(&site);
                }
                Ok(out)
            }
            Self::MarkovDiagonal(m) => {
                let probs: Vec<f64> = (0..1u64 << n)
                    .map(|bits| rat_to_f64(&m.path_probability(bits, n)))
                    .collect();
                DensityMatrix::diagonal(&probs)
            }
            Self::RotatedMarkov(m, u) => {
                let probs: Vec<f64> = (0..1u64 << n)
                    .map(|bits| rat_to_f64(&m.path_probability(bits, n)))
                    .collect();
                let diag = DensityMatrix::diagonal(&probs)?;
                Ok(conjugate_sitewise(&diag, u, n))
            }
        }
    }

    /// Entropy rate in bits per site.
    pub fn entropy_rate(&self) -> f64 {
        match self {
            Self::Bernoulli { .. } => {
                crate::qstate::functionals::von_neumann_entropy(&self.single_site())
            }
            Self::MarkovDiagonal(m) | Self::RotatedMarkov(m, _) => m.entropy_rate(),
        }
    }

    /// Spectrum of rho^(n) as (eigenvalue, multiplicity) classes in exact
    /// rationals, when the model admits them (diagonal-rational Bernoulli and
    /// the Markov variants; sitewise rotation does not change the spectrum).
    pub fn exact_spectrum_classes(&self, n: u32) -> Option<Vec<(Rat, BigUint)>> {
        match self {
            Self::Bernoulli { rho } => {
                if !rho[0][1].0.is_zero()
                    || !rho[0][1].1.is_zero()
                    || !rho[1][0].0.is_zero()
                    || !rho[1][0].1.is_zero()
                    || !rho[0][0].1.is_zero()
                    || !rho[1][1].1.is_zero()
                {
                    return None;
                }
                let p0 = rho[0][0].0.clone();
                let p1 = rho[1][1].0.clone();
                let mut classes = Vec::with_capacity(n as usize + 1);
                let mut mult = BigUint::one();
                for w in 0..=n {
                    let val = pow_rat(&p0, n - w) * pow_rat(&p1, w);
                    classes.push((val, mult.clone()));
                    // binomial(n, w+1) from binomial(n, w)
                    if w < n {
                        mult = mult * BigUint::from((n - w) as u64)
                            / BigUint::from((w + 1) as u64);
                    }
                }
                Some(classes)
            }
            Self::MarkovDiagonal(m) | Self::RotatedMarkov(m, _) => {
                if n > 16 {
                    return None;
                }
                let mut classes: Vec<(Rat, BigUint)> = (0..1u64 << n)
                    .map(|bits| (m.path_probability(bits, n), BigUint::one()))
                    .collect();
                classes.sort_by(|a, b| a.0.cmp(&b.0));
                let mut merged: Vec<(Rat, BigUint)> = Vec::new();
                for (v, c) in classes {
                    match merged.last_mut() {
                        Some((lv, lc)) if *lv == v => *lc += c,
                        _ => merged.push((v, c)),
                    }
                }
                Some(merged)
            }
        }
    }

    /// Spectrum classes at working precision, for models without exact ones.
    pub fn spectrum_classes_f64(&self, n: u32) -> Vec<(f64, u64)> {
        if let Some(exact) = self.exact_spectrum_classes(n) {
            return exact
                .into_iter()
                .map(|(v, c)| (rat_to_f64(&v), u64::try_from(&c).unwrap_or(u64::MAX)))
                .collect();
        }
        // General Bernoulli: site eigenvalues l0 <= l1; classes l0^(n-w) l1^w.
        let site = self.single_site();
        let eigs = site.eigenvalues();
        let (l0, l1) = (eigs[0].max(0.0), eigs[1].max(0.0));
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut mult = 1f64;
        for w in 0..=n {
            out.push((
                l0.powi((n - w) as i32) * l1.powi(w as i32),
                mult as u64,
            ));
            if w < n {
                mult = mult * (n - w) as f64 / (w + 1) as f64;
            }
        }
        out
    }

    /// <x| rho^(n) |x> style quadratic form against a sparse rational vector,
    /// computed without materializing the dense matrix. Used for typicality
    /// at block lengths where the dense state does not fit the budget.
    pub fn quadratic_form(&self, v: &crate::exact::SparseVec, n: u32) -> f64 {
        match self {
            Self::MarkovDiagonal(m) => v
                .iter()
                .map(|(i, x)| {
                    rat_to_f64(&m.path_probability(*i as u64, n)) * rat_to_f64(x).powi(2)
                })
                .sum(),
            Self::Bernoulli { .. } => {
                let site = self.single_site();
                let mut acc = 0.0;
                for (i, xi) in v.iter() {
                    for (j, xj) in v.iter() {
                        let mut amp = Complex64::new(1.0, 0.0);
                        for site_idx in 0..n {
                            let bi = (i >> (n - 1 - site_idx)) & 1;
                            let bj = (j >> (n - 1 - site_idx)) & 1;
                            amp *= site.entry(bi, bj);
                        }
                        acc += (amp * rat_to_f64(xi) * rat_to_f64(xj)).re;
                    }
                }
                acc
            }
            Self::RotatedMarkov(m, u) => {
                // <x| V^(n) D V^(n)^dag |x> = <V^(n)^dag x| D |V^(n)^dag x>.
                let uf = flatten_u(u);
                let dim = 1usize << n;
                let mut x = vec![Complex64::new(0.0, 0.0); dim];
                for (i, xi) in v.iter() {
                    x[*i] = Complex64::new(rat_to_f64(xi), 0.0);
                }
                let y = apply_sitewise_dagger(&x, &uf, n);
                (0..dim)
                    .map(|i| rat_to_f64(&m.path_probability(i as u64, n)) * y[i].norm_sqr())
                    .sum()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn rs(r: &Rat) -> String {
            crate::exact::rational::rat_to_string(r)
        }
        match self {
            Self::Bernoulli { rho } => serde_json::json!({
                "variant": "bernoulli",
                "rho": rho.iter().map(|row| row.iter().map(|(re, im)| vec![rs(re), rs(im)]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            Self::MarkovDiagonal(m) => serde_json::json!({
                "variant": "markov",
                "P": m.p.iter().map(|row| row.iter().map(rs).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            Self::RotatedMarkov(m, u) => serde_json::json!({
                "variant": "rotated_markov",
                "P": m.p.iter().map(|row| row.iter().map(rs).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "unitary": u.iter().map(|row| row.iter().map(|z| vec![format!("{:.17e}", z.re), format!("{:.17e}", z.im)]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Serialize, Deserialize)]
        struct Raw {
            variant: String,
            #[serde(default)]
            rho: Option<Vec<Vec<Vec<String>>>>,
            #[serde(default, rename = "P")]
            p: Option<Vec<Vec<String>>>,
            #[serde(default)]
            unitary: Option<Vec<Vec<Vec<String>>>>,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        match raw.variant.as_str() {
            "bernoulli" => {
                let rho = raw
                    .rho
                    .ok_or_else(|| Error::Malformed("bernoulli needs rho".into()))?;
                let mut out = [
                    [(Rat::zero(), Rat::zero()), (Rat::zero(), Rat::zero())],
                    [(Rat::zero(), Rat::zero()), (Rat::zero(), Rat::zero())],
                ];
                for i in 0..2 {
                    for j in 0..2 {
                        let cell = rho
                            .get(i)
                            .and_then(|r| r.get(j))
                            .filter(|c| c.len() == 2)
                            .ok_or_else(|| Error::Malformed("rho must be 2x2 of [re,im]".into()))?;
                        out[i][j] = (parse_rat(&cell[0])?, parse_rat(&cell[1])?);
                    }
                }
                let model = Self::Bernoulli { rho: out };
                // Validation: single_site must be a legal density matrix.
                let data: Vec<Complex64> = match &model {
                    Self::Bernoulli { rho } => rho
                        .iter()
                        .flatten()
                        .map(|(re, im)| Complex64::new(rat_to_f64(re), rat_to_f64(im)))
                        .collect(),
                    _ => unreachable!(),
                };
                DensityMatrix::new(2, data, DEFAULT_PRECISION_BITS)
                    .map_err(|e| Error::Malformed(format!("invalid bernoulli rho: {e}")))?;
                Ok(model)
            }
            "markov" | "rotated_markov" => {
                let p = raw
                    .p
                    .ok_or_else(|| Error::Malformed("markov needs P".into()))?;
                let mut pm = [
                    [Rat::zero(), Rat::zero()],
                    [Rat::zero(), Rat::zero()],
                ];
                for i in 0..2 {
                    for j in 0..2 {
                        let cell = p
                            .get(i)
                            .and_then(|r| r.get(j))
                            .ok_or_else(|| Error::Malformed("P must be 2x2".into()))?;
                        pm[i][j] = parse_rat(cell)?;
                    }
                }
                let markov = Markov::new(pm)?;
                if raw.variant == "markov" {
                    Ok(Self::MarkovDiagonal(markov))
                } else {
                    let u = raw
                        .unitary
                        .ok_or_else(|| Error::Malformed("rotated_markov needs unitary".into()))?;
                    let mut um = [[Complex64::new(0.0, 0.0); 2]; 2];
                    for i in 0..2 {
                        for j in 0..2 {
                            let cell = u
                                .get(i)
                                .and_then(|r| r.get(j))
                                .filter(|c| c.len() == 2)
                                .ok_or_else(|| Error::Malformed("unitary must be 2x2".into()))?;
                            um[i][j] = Complex64::new(
                                rat_to_f64(&parse_rat(&cell[0])?),
                                rat_to_f64(&parse_rat(&cell[1])?),
                            );
                        }
                    }
                    // Unitarity check.
                    let mut defect = 0.0f64;
                    for i in 0..2 {
                        for j in 0..2 {
                            let want = if i == j { 1.0 } else { 0.0 };
                            let got: Complex64 =
                                (0..2).map(|k| um[k][i].conj() * um[k][j]).sum();
                            defect = defect.max((got - want).norm());
                        }
                    }
                    if defect > 1e-10 {
                        return Err(Error::Malformed(format!(
                            "unitary defect {defect:e} too large"
                        )));
                    }
                    Ok(Self::RotatedMarkov(markov, um))
                }
            }
            other => Err(Error::Malformed(format!("unknown variant {other:?}"))),
        }
    }
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn flatten_u(u: &[[Complex64; 2]; 2]) -> Vec<Complex64> {
    vec![u[0][0], u[0][1], u[1][0], u[1][1]]
}

fn conjugate_sitewise(rho: &DensityMatrix, u: &[[Complex64; 2]; 2], n: u32) -> DensityMatrix {
    let uf = flatten_u(u);
    let mut out = rho.clone();
    for site in 0..n {
        out = conjugate_site(&out, &uf, site, n);
    }
    out
}

/// Conjugates one tensor factor: rho <- (1 (x) U (x) 1) rho (...)^dagger.
fn conjugate_site(rho: &DensityMatrix, u: &[Complex64], site: u32, n: u32) -> DensityMatrix {
    let dim = rho.dim();
    let stride = 1usize << (n - 1 - site);
    let mut data = rho.data().to_vec();
    // Apply U on the left over the site's bit.
    let mut next = vec![Complex64::new(0.0, 0.0); dim * dim];
    for row in 0..dim {
        let bit = (row / stride) % 2;
        let base = row - bit * stride;
        for col in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += u[bit * 2 + k] * data[(base + k * stride) * dim + col];
            }
            next[row * dim + col] = acc;
        }
    }
    data = next;
    // Apply U^dagger on the right.
    let mut next = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let bit = (col / stride) % 2;
        let base = col - bit * stride;
        for row in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += data[row * dim + (base + k * stride)] * u[bit * 2 + k].conj();
            }
            next[row * dim + col] = acc;
        }
    }
    DensityMatrix::from_raw(dim, next, rho.precision_bits())
}

/// (V^dagger)^(x n) |x> for a single-site matrix V.
fn apply_sitewise_dagger(x: &[Complex64], u: &[Complex64], n: u32) -> Vec<Complex64> {
    let dim = x.len();
    let mut cur = x.to_vec();
    for site in 0..n {
        let stride = 1usize << (n - 1 - site);
        let mut next = vec![Complex64::new(0.0, 0.0); dim];
        for row in 0..dim {
            let bit = (row / stride) % 2;
            let base = row - bit * stride;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                // (U^dagger)[bit][k] = conj(U[k][bit])
                acc += u[k * 2 + bit].conj() * cur[base + k * stride];
            }
            next[row] = acc;
        }
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::qstate::functionals::{partial_trace, trace_distance, Keep};

    fn uniform_markov() -> SourceModel {
        SourceModel::MarkovDiagonal(
            Markov::new([
                [rat(1, 2), rat(1, 2)],
                [rat(1, 2), rat(1, 2)],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn deterministic_source_reduces_to_basis_state() {
        let s = SourceModel::bernoulli_diag(rat(1, 1)).unwrap();
        let r = s.reduced_state(3).unwrap();
        assert!((r.entry(0, 0).re - 1.0).abs() < 1e-12);
        assert!(s.entropy_rate().abs() < 1e-12);
    }

    #[test]
    fn uniform_markov_is_maximally_mixed() {
        let r = uniform_markov().reduced_state(2).unwrap();
        let mm = DensityMatrix::maximally_mixed(4);
        assert!(trace_distance(&r, &mm).unwrap() < 1e-12);
        assert!((uniform_markov().entropy_rate() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_product_probabilities() {
        let s = SourceModel::bernoulli_diag(rat(9, 10)).unwrap();
        let r = s.reduced_state(2).unwrap();
        for (i, want) in [0.81, 0.09, 0.09, 0.01].iter().enumerate() {
            assert!((r.entry(i, i).re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_rate_closed_form() {
        let s = SourceModel::bernoulli_diag(rat(9, 10)).unwrap();
        assert!((s.entropy_rate() - 0.4689956).abs() < 1e-6);
    }

    #[test]
    fn consistency_under_partial_trace() {
        let p = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        let models = vec![
            SourceModel::bernoulli_diag(rat(9, 10)).unwrap(),
            SourceModel::MarkovDiagonal(p.clone()),
            SourceModel::RotatedMarkov(p, hadamard()),
        ];
        for s in models {
            for n in 1..=10u32 {
                let big = s.reduced_state(n + 1).unwrap();
                let small = s.reduced_state(n).unwrap();
                let traced = partial_trace(&big, 1 << n, 2, Keep::First).unwrap();
                let mut worst = 0.0f64;
                for i in 0..small.dim() {
                    for j in 0..small.dim() {
                        worst = worst.max((traced.entry(i, j) - small.entry(i, j)).norm());
                    }
                }
                assert!(worst < 1e-12, "consistency defect {worst:e} at n={n}");
            }
        }
    }

    fn hadamard() -> [[Complex64; 2]; 2] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        [
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ]
    }

    #[test]
    fn markov_stationarity_defect_is_tiny() {
        let m = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        assert!(m.stationarity_defect() < 1e-12);
    }

    #[test]
    fn markov_entropy_rate_matches_conditional_entropy_at_n10() {
        let m = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        let s = SourceModel::MarkovDiagonal(m.clone());
        let n = 10;
        let snp1 = crate::qstate::functionals::von_neumann_entropy(&s.reduced_state(n + 1).unwrap());
        let sn = crate::qstate::functionals::von_neumann_entropy(&s.reduced_state(n).unwrap());
        assert!((m.entropy_rate() - (snp1 - sn)).abs() < 1e-6);
    }

    #[test]
    fn json_round_trip() {
        let p = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        for s in [
            SourceModel::bernoulli_diag(rat(9, 10)).unwrap(),
            SourceModel::MarkovDiagonal(p.clone()),
            SourceModel::RotatedMarkov(p, hadamard()),
        ] {
            let j = s.to_json();
            let back = SourceModel::from_json(&j).unwrap();
            assert!((s.entropy_rate() - back.entropy_rate()).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_sources_are_rejected() {
        // Non-stochastic row.
        assert!(Markov::new([
            [rat(1, 2), rat(1, 3)],
            [rat(1, 2), rat(1, 2)],
        ])
        .is_err());
        // Zero entry breaks irreducibility-by-positivity.
        assert!(Markov::new([
            [rat(1, 1), rat(0, 1)],
            [rat(1, 2), rat(1, 2)],
        ])
        .is_err());
        // Budget.
        let s = SourceModel::bernoulli_diag(rat(1, 2)).unwrap();
        assert!(s.reduced_state(13).is_err());
    }

    #[test]
    fn rotated_markov_quadratic_form_matches_dense() {
        use crate::exact::rational::rat_int;
        let p = Markov::new([
            [rat(19, 20), rat(1, 20)],
            [rat(2, 5), rat(3, 5)],
        ])
        .unwrap();
        let s = SourceModel::RotatedMarkov(p, hadamard());
        let n = 4;
        let dense = s.reduced_state(n).unwrap();
        let v = crate::exact::SparseVec::from_entries(
            16,
            vec![(3, rat_int(1)), (7, rat_int(2)), (12, rat_int(-1))],
        );
        let norm2 = 6.0;
        let dense_val: f64 = {
            let dv: Vec<Complex64> = v
                .to_dense()
                .iter()
                .map(|x| Complex64::new(rat_to_f64(x), 0.0))
                .collect();
            dense.expectation(&dv) / norm2
        };
        let fast = s.quadratic_form(&v, n) / norm2;
        assert!((dense_val - fast).abs() < 1e-10);
    }
}
