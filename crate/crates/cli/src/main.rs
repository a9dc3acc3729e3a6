//! eqc: exact-arithmetic typical-subspace codec for ergodic qubit sources.
//!
//! Exit codes: 0 success, 2 input/configuration error, 3 contract violation
//! (e.g. a round trip missing its 1/k accuracy).

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use eqc_core::bounds::experiment::{complexity_rate_experiment, rows_to_csv, ExperimentRow};
use eqc_core::bounds::{chi_chain_check, ChainInstance};
use eqc_core::codec::plan::{build_plan, build_precision, ExactPlan};
use eqc_core::codec::roundtrip::{
    compress, decompress, sample_exact_in_span, ExactPureState, Payload,
};
use eqc_core::codec::{assemble_program, complexity_certificates, CodecProgram};
use eqc_core::exact::rational::{parse_rat, rat_to_f64, rat_to_string, Rat};
use eqc_core::qstate::io::StateFile;
use eqc_core::qstate::{von_neumann_entropy, DensityMatrix};
use eqc_core::source::SourceModel;
use eqc_core::universal::typical::{build_q, typicality};
use num_complex::Complex64;
use num_traits::Zero;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "eqc", version, about = "universal typical-subspace codec and bound certifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PlanArgs {
    /// Block length m (qubits).
    #[arg(long)]
    m: u32,
    /// Accuracy parameter k (output within trace distance 1/k).
    #[arg(long, default_value_t = 10)]
    k: u64,
    /// Rate r = s + eps as a rational "p/q" (overrides --s/--eps).
    #[arg(long)]
    r: Option<String>,
    /// Entropy level s as "p/q".
    #[arg(long, default_value = "3/5")]
    s: String,
    /// Epsilon as "p/q".
    #[arg(long, default_value = "2/5")]
    eps: String,
    /// Precision override: working binary digits instead of the exact
    /// digit-count formula N(k, m).
    #[arg(long)]
    precision: Option<u64>,
}

impl PlanArgs {
    fn rate(&self) -> anyhow::Result<Rat> {
        match &self.r {
            Some(r) => Ok(parse_rat(r)?),
            None => Ok(parse_rat(&self.s)? + parse_rat(&self.eps)?),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the entropy rate and the S(rho^(n))/n table for a source.
    Entropy {
        /// Source spec JSON file.
        #[arg(long)]
        source: PathBuf,
        /// Largest block length in the table.
        #[arg(long, default_value_t = 8)]
        max_n: u32,
    },
    /// Build the universal typical projector Q(s, eps, m) and write it as JSON.
    Buildq {
        #[arg(long)]
        s: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: PathBuf,
        /// Optional source spec: report its typicality under Q.
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Compress a pure state file into a program file.
    Compress {
        /// Input pure state JSON (fixed space, n = m).
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        plan: PlanArgs,
        /// Output program file (EQC1 container).
        #[arg(long)]
        out: PathBuf,
    },
    /// Decompress a program file back into a state file.
    Decompress {
        /// Input program file.
        #[arg(long)]
        program: PathBuf,
        /// Output state JSON.
        #[arg(long)]
        out: PathBuf,
        /// Precision override (binary digits).
        #[arg(long)]
        precision: Option<u64>,
    },
    /// Sample a typical state, compress, decompress and check the 1/k contract.
    Roundtrip {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Optional report output path (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the orthogonal basis family and the chi chain at (m, k).
    Certify {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the complexity-rate experiment over m and seed lists.
    Experiment {
        /// Experiment config JSON; command-line flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Source spec JSON file.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Entropy level s as "p/q" (>= the source rate).
        #[arg(long, default_value = "13/20")]
        s: String,
        /// Delta as "p/q" in (0, 1/e); eps = delta/2 and r = s + eps.
        #[arg(long, default_value = "1/3")]
        delta: String,
        /// Block lengths, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "8")]
        m: Vec<u32>,
        /// Accuracy parameters, comma separated (one experiment per k).
        #[arg(long, value_delimiter = ',', default_value = "3")]
        k: Vec<u64>,
        /// Seeds, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        seed: Vec<u64>,
        #[arg(long)]
        precision: Option<u64>,
        /// Output path (CSV rows; the JSON summary goes to <out>.json).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads over (m, k) cells.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Zero the runtime_ms column for byte-identical replays.
        #[arg(long, default_value_t = false)]
        stable_output: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn read_source(path: &PathBuf) -> anyhow::Result<SourceModel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    Ok(SourceModel::from_json(&value)?)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Entropy { source, max_n } => {
            let model = read_source(&source)?;
            let s = model.entropy_rate();
            println!("s,{s:.6}");
            println!("n,entropy_per_site");
            for n in 1..=max_n.min(10) {
                let rho = model.reduced_state(n)?;
                let sn = von_neumann_entropy(&rho) / n as f64;
                println!("{n},{sn:.6}");
            }
            Ok(0)
        }
        Command::Buildq {
            s,
            eps,
            m,
            out,
            source,
        } => {
            let s = parse_rat(&s)?;
            let eps = parse_rat(&eps)?;
            let q = build_q(&s, &eps, m)?;
            fs::write(&out, serde_json::to_string_pretty(&q.to_json())?)?;
            println!(
                "m={m} l={} n={} rank={} padding={} log2_rank_bound={:.4}",
                q.l,
                q.n,
                q.rank(),
                q.padding,
                q.trace_bound_log2()
            );
            if let Some(src) = source {
                let model = read_source(&src)?;
                println!("typicality={:.6}", typicality(&model, &q));
            }
            Ok(0)
        }
        Command::Compress { state, plan, out } => {
            let text = fs::read_to_string(&state)?;
            let f = StateFile::from_json(&text)?;
            let psi = ExactPureState::from_state_file(&f)?;
            let r = plan.rate()?;
            if psi.qubits != plan.m {
                return Err(anyhow!(
                    "state has {} qubits but --m is {}",
                    psi.qubits,
                    plan.m
                ));
            }
            let exact = ExactPlan::build(plan.m, &r)?;
            let payload = compress(&psi, &exact)?;
            let program = assemble_program(plan.k, plan.m as u64, &r, payload.to_state_file())?;
            fs::write(&out, program.to_bytes()?)?;
            let cert = complexity_certificates(&program, &r)?;
            println!(
                "payload_qubits={} sigma_len={} total_len={} ceil_mr={}",
                cert.payload_qubits, cert.qc_zero_len, cert.qc_1k_len, cert.ceil_mr
            );
            Ok(0)
        }
        Command::Decompress {
            program,
            out,
            precision,
        } => {
            let bytes = fs::read(&program)?;
            let prog = CodecProgram::from_bytes(&bytes)?;
            let m = u32::try_from(prog.m).map_err(|_| anyhow!("m out of range"))?;
            let plan = build_plan(prog.k, m, &prog.r, precision)?;
            let payload = Payload::from_state_file(&prog.payload)?;
            let (state, report) = decompress(&plan, &payload)?;
            let digits = (2 * report.n_digits) as usize * 302 / 1000 + 4;
            fs::write(&out, state.to_state_file(digits).to_json()?)?;
            println!(
                "n_digits={} cert={}",
                report.n_digits,
                serde_json::to_string(&report.cert)?
            );
            Ok(0)
        }
        Command::Roundtrip { plan, seed, out } => {
            let r = plan.rate()?;
            let exact = Arc::new(ExactPlan::build(plan.m, &r)?);
            let dplan = build_precision(exact.clone(), plan.k, plan.precision)?;
            let psi = sample_exact_in_span(&exact, seed);
            let payload = compress(&psi, &exact)?;
            let program = assemble_program(plan.k, plan.m as u64, &r, payload.to_state_file())?;
            let payload_back = Payload::from_state_file(&program.payload)?;
            let (state, report) = decompress(&dplan, &payload_back)?;
            let dist = state.trace_distance_f64(&psi)?;
            let bound = Rat::new(1.into(), plan.k.into());
            let within = state.trace_distance_within(&psi, &bound)?;
            let cert = complexity_certificates(&program, &r)?;
            let json = serde_json::json!({
                "m": plan.m,
                "k": plan.k,
                "seed": seed,
                "r": rat_to_string(&r),
                "n_digits": report.n_digits,
                "trace_dist": dist,
                "within_contract": within,
                "payload_qubits": cert.payload_qubits,
                "qc_zero_len": cert.qc_zero_len,
                "qc_1k_len": cert.qc_1k_len,
                "precision_cert": report.cert,
            });
            let text = serde_json::to_string_pretty(&json)?;
            match &out {
                Some(p) => fs::write(p, &text)?,
                None => println!("{text}"),
            }
            if !within {
                eprintln!(
                    "contract violation: trace distance {dist} exceeds 1/k = {}",
                    1.0 / plan.k as f64
                );
                return Ok(3);
            }
            Ok(0)
        }
        Command::Certify { plan, out } => {
            let r = plan.rate()?;
            let exact = Arc::new(ExactPlan::build(plan.m, &r)?);
            let dplan = build_precision(exact.clone(), plan.k, plan.precision)?;
            let verdict =
                eqc_core::bounds::experiment::certify_basis_family(&exact, &dplan, plan.k)?;
            let chain = chain_for_basis_family(&exact, &dplan, plan.k)?;
            let json = serde_json::json!({
                "m": plan.m,
                "k": plan.k,
                "d_tilde": exact.d_tilde,
                "family_verdict": verdict,
                "chain": chain,
            });
            let text = serde_json::to_string_pretty(&json)?;
            match &out {
                Some(p) => fs::write(p, &text)?,
                None => println!("{text}"),
            }
            if !verdict.all_ok() || !chain.all_ok {
                return Ok(3);
            }
            Ok(0)
        }
        Command::Experiment {
            config,
            source,
            s,
            delta,
            m,
            k,
            seed,
            precision,
            out,
            format,
            jobs,
            stable_output,
        } => {
            // Config file fields act as defaults; flags that differ from
            // their clap defaults take precedence.
            let mut model: Option<SourceModel> = None;
            let mut s = s;
            let mut delta = delta;
            let mut m = m;
            let mut k = k;
            let mut seed = seed;
            let mut precision = precision;
            if let Some(path) = &config {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let cfg: serde_json::Value = serde_json::from_str(&text)?;
                if let Some(src) = cfg.get("source") {
                    model = Some(SourceModel::from_json(src)?);
                }
                if let Some(v) = cfg.get("s").and_then(|v| v.as_str()) {
                    s = v.to_string();
                }
                if let Some(v) = cfg.get("delta").and_then(|v| v.as_str()) {
                    delta = v.to_string();
                }
                if let Some(v) = cfg.get("m").and_then(|v| v.as_array()) {
                    m = v.iter().filter_map(|x| x.as_u64()).map(|x| x as u32).collect();
                }
                if let Some(v) = cfg.get("k").and_then(|v| v.as_array()) {
                    k = v.iter().filter_map(|x| x.as_u64()).collect();
                }
                if let Some(v) = cfg.get("seeds").and_then(|v| v.as_array()) {
                    seed = v.iter().filter_map(|x| x.as_u64()).collect();
                }
                if precision.is_none() {
                    precision = cfg.get("precision").and_then(|v| v.as_u64());
                }
            }
            let model = match (model, &source) {
                (_, Some(path)) => read_source(path)?,
                (Some(m), None) => m,
                (None, None) => {
                    return Err(anyhow!("experiment needs --source or a config with a source"))
                }
            };
            let s = parse_rat(&s)?;
            let delta = parse_rat(&delta)?;
            let cells: Vec<(u32, u64)> = m
                .iter()
                .flat_map(|&mm| k.iter().map(move |&kk| (mm, kk)))
                .collect();
            let run_cell = |&(mm, kk): &(u32, u64)| {
                complexity_rate_experiment(
                    &model,
                    &s,
                    &delta,
                    &[mm],
                    kk,
                    &seed,
                    precision,
                    stable_output,
                )
            };
            let results: Vec<_> = if jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| anyhow!("thread pool: {e}"))?;
                pool.install(|| {
                    use rayon::prelude::*;
                    cells.par_iter().map(run_cell).collect::<Vec<_>>()
                })
            } else {
                cells.iter().map(run_cell).collect()
            };
            let mut rows: Vec<ExperimentRow> = Vec::new();
            let mut summaries = Vec::new();
            for r in results {
                let (mut rs, summary) = r?;
                rows.append(&mut rs);
                summaries.push(summary);
            }
            rows.sort_by_key(|r| (r.m, r.seed));
            let csv = rows_to_csv(&rows);
            let summary_json = serde_json::to_string_pretty(&summaries)?;
            match (&out, format.as_str()) {
                (Some(p), "csv") => {
                    fs::write(p, &csv)?;
                    fs::write(p.with_extension("json"), &summary_json)?;
                }
                (Some(p), "json") => fs::write(p, &summary_json)?,
                (None, "json") => println!("{summary_json}"),
                (None, _) => print!("{csv}"),
                (_, other) => return Err(anyhow!("unknown format {other:?}")),
            }
            let worst = rows.iter().map(|r| r.trace_dist).fold(0.0, f64::max);
            let kmin = k.iter().min().copied().unwrap_or(1);
            if worst > 1.0 / kmin as f64 {
                eprintln!("contract violation: worst trace distance {worst}");
                return Ok(3);
            }
            Ok(0)
        }
    }
}

/// Chain instance for the codec's own basis family: inputs are the payload
/// basis states (the classical prefixes are shared and contribute nothing to
/// chi), outputs are the decompressed states, targets the basis columns.
fn chain_for_basis_family(
    exact: &Arc<ExactPlan>,
    dplan: &eqc_core::codec::plan::DecompressionPlan,
    k: u64,
) -> anyhow::Result<eqc_core::bounds::ChainReport> {
    let dim = 1usize << exact.m;
    let pdim = 1usize << exact.payload_qubits();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut targets = Vec::new();
    for j in 0..exact.d_tilde {
        let mut amps = vec![Complex64::new(0.0, 0.0); pdim];
        amps[j] = Complex64::new(1.0, 0.0);
        inputs.push(DensityMatrix::from_pure(&amps)?);
        let mut re = vec![Rat::zero(); pdim];
        let im = vec![Rat::zero(); pdim];
        re[j] = Rat::from_integer(1.into());
        let payload = Payload {
            qubits: exact.payload_qubits(),
            re,
            im,
        };
        let (out, _) = decompress(dplan, &payload)?;
        let amps: Vec<Complex64> = out
            .re
            .iter()
            .zip(&out.im)
            .map(|(r, i)| Complex64::new(rat_to_f64(r), rat_to_f64(i)))
            .collect();
        outputs.push(DensityMatrix::from_pure(&amps)?);
        let col = exact.basis.column(j);
        let s = rat_to_f64(&col.norm2).sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (i, v) in col.v.iter() {
            amps[*i] = Complex64::new(rat_to_f64(v) / s, 0.0);
        }
        targets.push(DensityMatrix::from_pure(&amps)?);
    }
    let program = assemble_program(
        k,
        exact.m as u64,
        &exact.r,
        Payload {
            qubits: exact.payload_qubits(),
            re: {
                let mut re = vec![Rat::zero(); pdim];
                re[0] = Rat::from_integer(1.into());
                re
            },
            im: vec![Rat::zero(); pdim],
        }
        .to_state_file(),
    )?;
    let c = program.total_length()?;
    let inst = ChainInstance {
        c,
        delta: 1.0 / k as f64,
        inputs,
        outputs,
        targets,
    };
    Ok(chi_chain_check(&inst)?)
}

