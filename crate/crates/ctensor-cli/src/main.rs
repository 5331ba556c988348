//! `ctensor`: command-line surface for conjugate complex polynomials and
//! their symmetric tensor representations.
//!
//! All floating-point output is rounded to 12 significant digits (negative
//! zero normalized to zero) before serialization so that runs with the same
//! seed and input produce byte-identical JSON.

use std::collections::HashSet;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ctensor::apps::{solve_radar, rank_one_als, RadarScenario, Scatterer};
use ctensor::banach::{
    check_cps_banach, check_css_banach, check_symmetric_complex_banach, hermitian_banach,
    BanachConfig, EqualityReport, Verdict,
};
use ctensor::bijection::{
    cps_decompose, embed_cps_to_css, g_forward, g_inverse, is_flattening_psd, s_forward,
    s_inverse,
};
use ctensor::eigen::{solve_c_eig, solve_g_eig, solve_q_eig, SolverConfig};
use ctensor::forms::{parse_poly, print_poly, ConjugatePolynomial, RealnessVerdict};
use ctensor::{Error, Tensor64};

// ---------------------------------------------------------------------
// argument surface

#[derive(Parser)]
#[command(
    name = "ctensor",
    version,
    about = "Conjugate complex polynomials and their symmetric tensor representations"
)]
struct Cli {
    /// Write a run manifest (command, config, input digest, results, wall
    /// time) to this path.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a conjugate polynomial and print its canonical form.
    Parse {
        /// Polynomial text file ("-" or omitted for stdin).
        input: Option<PathBuf>,
    },
    /// Certify whether a conjugate polynomial is real-valued.
    CheckReal {
        /// Polynomial text file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        /// Coefficient-pair tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Convert between polynomials and tensor documents.
    Convert {
        /// Input file ("-" or omitted for stdin): a TensorDocument for
        /// tensor-to-polynomial modes, polynomial text otherwise.
        input: Option<PathBuf>,
        #[arg(long, value_enum, ignore_case = true)]
        mode: ConvertMode,
    },
    /// Decompose a conjugate partial-symmetric tensor into weighted
    /// conjugated rank-one symmetric terms.
    Decompose {
        /// TensorDocument file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        /// Eigenvalue cutoff for discarded components.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Solve a structured tensor eigenproblem.
    Eig {
        /// TensorDocument file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        #[arg(long, value_enum, ignore_case = true)]
        kind: EigKind,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        /// Residual tolerance for accepting an eigenpair.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare a single-vector maximum against its multilinear relaxation.
    Banach {
        /// TensorDocument file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        #[arg(long, value_enum, ignore_case = true)]
        check: BanachKind,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Equality tolerance on the gap.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best rank-one approximation of a complex tensor.
    Rank1 {
        /// TensorDocument file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Design a radar code from a scenario description.
    Radar {
        /// RadarScenario JSON file ("-" or omitted for stdin).
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        /// Eigen-solver residual tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the ambiguity report as CSV to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertMode {
    /// Tensor to conjugate polynomial.
    S,
    /// Conjugate polynomial to conjugate partial-symmetric tensor.
    SInv,
    /// Stacked tensor to general conjugate form.
    G,
    /// General conjugate form to conjugate super-symmetric tensor.
    GInv,
    /// Conjugate partial-symmetric tensor to its super-symmetric embedding.
    EmbedCss,
}

#[derive(Clone, Copy, ValueEnum)]
enum EigKind {
    C,
    G,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum BanachKind {
    Css,
    Cps,
    Hermitian,
    Symmetric,
}

// ---------------------------------------------------------------------
// error handling and exit codes

struct CliError {
    code: i32,
    msg: String,
}

impl CliError {
    fn validation(msg: impl Into<String>) -> Self {
        Self { code: 2, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } => 3,
            _ => 2,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(format!("i/o error: {e}"))
    }
}

// ---------------------------------------------------------------------
// JSON documents

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorDocument {
    dims: Vec<usize>,
    entries: Vec<TensorEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorEntry {
    /// 1-based multi-index.
    idx: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    n: usize,
    m: usize,
    scatterers: Vec<ScattererDoc>,
    #[serde(default)]
    noise: f64,
    reference: Vec<ComplexDoc>,
    #[serde(default)]
    penalty: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScattererDoc {
    lag: usize,
    freq: f64,
    tol: f64,
    power: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    re: f64,
    im: f64,
}

fn parse_tensor_doc(text: &str) -> Result<Tensor64, CliError> {
    let doc: TensorDocument = serde_json::from_str(text)
        .map_err(|e| CliError::validation(format!("tensor document: {e}")))?;
    if doc.dims.is_empty() || doc.dims.contains(&0) {
        return Err(CliError::validation("tensor document: dims must be positive"));
    }
    let mut t = Tensor64::zeros(&doc.dims);
    let mut seen = HashSet::new();
    for (k, e) in doc.entries.iter().enumerate() {
        if e.idx.len() != doc.dims.len() {
            return Err(CliError::validation(format!(
                "entries[{k}].idx: expected {} indices, got {}",
                doc.dims.len(),
                e.idx.len()
            )));
        }
        for (pos, (&i, &d)) in e.idx.iter().zip(&doc.dims).enumerate() {
            if i < 1 || i > d {
                return Err(CliError::validation(format!(
                    "entries[{k}].idx[{pos}]: index {i} outside 1..={d}"
                )));
            }
        }
        if !seen.insert(e.idx.clone()) {
            return Err(CliError::validation(format!(
                "entries[{k}].idx: duplicate index {:?}",
                e.idx
            )));
        }
        t.set(&e.idx, Complex64::new(e.re, e.im));
    }
    Ok(t)
}

fn parse_scenario_doc(text: &str) -> Result<RadarScenario<f64>, CliError> {
    let doc: ScenarioDoc = serde_json::from_str(text)
        .map_err(|e| CliError::validation(format!("radar scenario: {e}")))?;
    Ok(RadarScenario {
        n: doc.n,
        m: doc.m,
        scatterers: doc
            .scatterers
            .into_iter()
            .map(|s| Scatterer { lag: s.lag, freq: s.freq, tol: s.tol, power: s.power })
            .collect(),
        noise: doc.noise,
        reference: doc.reference.into_iter().map(|z| Complex64::new(z.re, z.im)).collect(),
        penalty: doc.penalty,
    })
}

// ---------------------------------------------------------------------
// stable numeric formatting

/// Rounds to 12 significant digits and normalizes negative zero, so that
/// repeated runs serialize byte-identically.
fn r12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

fn num(x: f64) -> Value {
    json!(r12(x))
}

fn cnum(z: Complex64) -> Value {
    json!({"re": r12(z.re), "im": r12(z.im)})
}

fn cvec(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(cnum).collect())
}

fn tensor_to_doc(t: &Tensor64) -> Value {
    let dims = t.dims();
    let total: usize = dims.iter().product();
    let mut entries = Vec::new();
    for flat in 0..total {
        let mut rem = flat;
        let mut idx = vec![0usize; dims.len()];
        for k in (0..dims.len()).rev() {
            idx[k] = rem % dims[k];
            rem /= dims[k];
        }
        let z = t.get0(&idx);
        if z.re != 0.0 || z.im != 0.0 {
            let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            entries.push(json!({"idx": one_based, "re": r12(z.re), "im": r12(z.im)}));
        }
    }
    json!({"dims": dims, "entries": entries})
}

fn poly_terms_json(p: &ConjugatePolynomial<f64>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(k, c)| {
                json!({
                    "conj": k.conj_indices,
                    "plain": k.plain_indices,
                    "re": r12(c.re),
                    "im": r12(c.im),
                })
            })
            .collect(),
    )
}

fn equality_report_json(r: &EqualityReport<f64>) -> Value {
    json!({
        "lhs": num(r.lhs),
        "rhs": num(r.rhs),
        "gap": num(r.gap),
        "verdict": match r.verdict { Verdict::Equal => "equal", Verdict::GapFound => "gap-found" },
        "lhs_witness": Value::Array(r.lhs_witness.iter().map(|b| cvec(b)).collect()),
        "rhs_witness": Value::Array(r.rhs_witness.iter().map(|b| cvec(b)).collect()),
    })
}

// ---------------------------------------------------------------------
// command dispatch

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn solver_config(starts: usize, tol: f64, seed: u64) -> SolverConfig<f64> {
    SolverConfig { starts, tau_eig: tol, seed, ..SolverConfig::default() }
}

fn banach_config(starts: usize, tol: f64, seed: u64) -> BanachConfig<f64> {
    BanachConfig {
        starts,
        tau_eq: tol,
        seed,
        eig: SolverConfig { starts, seed, ..SolverConfig::default() },
        ..BanachConfig::default()
    }
}

/// Output of one subcommand: the exact stdout text, the results payload for
/// the manifest, and the echoed configuration.
struct CmdOutput {
    stdout: String,
    results: Value,
    config: Value,
}

fn json_output(results: Value, config: Value) -> CmdOutput {
    let stdout = format!("{}\n", serde_json::to_string_pretty(&results).unwrap());
    CmdOutput { stdout, results, config }
}

fn text_output(text: String, config: Value) -> CmdOutput {
    let stdout = format!("{text}\n");
    CmdOutput { stdout, results: Value::String(text), config }
}

fn run_command(cmd: &Cmd, input: &str) -> Result<CmdOutput, CliError> {
    match cmd {
        Cmd::Parse { .. } => {
            let p: ConjugatePolynomial<f64> = parse_poly(input)?;
            let results = json!({
                "n": p.n(),
                "canonical": print_poly(&p),
                "terms": poly_terms_json(&p),
            });
            Ok(json_output(results, json!({})))
        }
        Cmd::CheckReal { tol, .. } => {
            let p: ConjugatePolynomial<f64> = parse_poly(input)?;
            let verdict = p.check_real_valued(*tol);
            let witnesses = match &verdict {
                RealnessVerdict::RealValued => Value::Array(vec![]),
                RealnessVerdict::NotRealValued(ws) => Value::Array(
                    ws.iter()
                        .map(|w| {
                            json!({
                                "key": {"conj": w.key.conj_indices, "plain": w.key.plain_indices},
                                "partner": {"conj": w.partner.conj_indices,
                                            "plain": w.partner.plain_indices},
                                "coeff": cnum(w.coeff),
                                "partner_coeff": cnum(w.partner_coeff),
                                "violation": num(w.violation),
                            })
                        })
                        .collect(),
                ),
            };
            let results = json!({
                "real_valued": verdict.is_real_valued(),
                "witnesses": witnesses,
            });
            Ok(json_output(results, json!({"tol": tol})))
        }
        Cmd::Convert { mode, .. } => {
            let config = json!({"mode": match mode {
                ConvertMode::S => "s",
                ConvertMode::SInv => "s-inv",
                ConvertMode::G => "g",
                ConvertMode::GInv => "g-inv",
                ConvertMode::EmbedCss => "embed-css",
            }});
            match mode {
                ConvertMode::S => {
                    let t = parse_tensor_doc(input)?;
                    Ok(text_output(print_poly(&s_forward(&t)?), config))
                }
                ConvertMode::G => {
                    let t = parse_tensor_doc(input)?;
                    Ok(text_output(print_poly(&g_forward(&t)?), config))
                }
                ConvertMode::SInv => {
                    let p: ConjugatePolynomial<f64> = parse_poly(input)?;
                    Ok(json_output(tensor_to_doc(&s_inverse(&p)?), config))
                }
                ConvertMode::GInv => {
                    let p: ConjugatePolynomial<f64> = parse_poly(input)?;
                    Ok(json_output(tensor_to_doc(&g_inverse(&p)?), config))
                }
                ConvertMode::EmbedCss => {
                    let t = parse_tensor_doc(input)?;
                    Ok(json_output(tensor_to_doc(&embed_cps_to_css(&t)?), config))
                }
            }
        }
        Cmd::Decompose { tol, .. } => {
            let t = parse_tensor_doc(input)?;
            let dec = cps_decompose(&t, *tol)?;
            let psd = is_flattening_psd(&t, *tol)?;
            let results = json!({
                "alphas": Value::Array(dec.alphas.iter().map(|&a| num(a)).collect()),
                "components": Value::Array(dec.components.iter().map(tensor_to_doc).collect()),
                "residual": num(dec.residual),
                "flattening_psd": psd,
            });
            Ok(json_output(results, json!({"tol": tol})))
        }
        Cmd::Eig { kind, starts, tol, seed, .. } => {
            let t = parse_tensor_doc(input)?;
            let cfg = solver_config(*starts, *tol, *seed);
            let pairs = match kind {
                EigKind::C => solve_c_eig(&t, &cfg)?,
                EigKind::G => solve_g_eig(&t, &cfg)?,
                EigKind::Q => solve_q_eig(&t, &cfg)?,
            };
            let results = Value::Array(
                pairs
                    .iter()
                    .map(|p| {
                        json!({
                            "lambda": num(p.lambda),
                            "x": cvec(&p.x),
                            "residual": num(p.residual),
                        })
                    })
                    .collect(),
            );
            let config = json!({
                "kind": match kind { EigKind::C => "c", EigKind::G => "g", EigKind::Q => "q" },
                "starts": starts, "tol": tol, "seed": seed,
            });
            Ok(json_output(results, config))
        }
        Cmd::Banach { check, starts, tol, seed, .. } => {
            let t = parse_tensor_doc(input)?;
            let cfg = banach_config(*starts, *tol, *seed);
            let (check_name, results) = match check {
                BanachKind::Css => ("css", equality_report_json(&check_css_banach(&t, &cfg)?)),
                BanachKind::Cps => ("cps", equality_report_json(&check_cps_banach(&t, &cfg)?)),
                BanachKind::Symmetric => (
                    "symmetric",
                    equality_report_json(&check_symmetric_complex_banach(&t, &cfg)?),
                ),
                BanachKind::Hermitian => {
                    let out = hermitian_banach(&t, &cfg)?;
                    let mut v = equality_report_json(&out.report);
                    let obj = v.as_object_mut().unwrap();
                    obj.insert(
                        "recovered".into(),
                        out.recovered.as_deref().map(cvec).unwrap_or(Value::Null),
                    );
                    obj.insert(
                        "recovered_value".into(),
                        out.recovered_value.map(num).unwrap_or(Value::Null),
                    );
                    ("hermitian", v)
                }
            };
            let config = json!({
                "check": check_name, "starts": starts, "tol": tol, "seed": seed,
            });
            Ok(json_output(results, config))
        }
        Cmd::Rank1 { starts, seed, .. } => {
            let t = parse_tensor_doc(input)?;
            let cfg = banach_config(*starts, 1e-6, *seed);
            let out = rank_one_als(&t, &cfg)?;
            let results = json!({
                "lambda": num(out.lambda),
                "objective": num(out.objective),
                "residual": num(out.residual),
                "factors": Value::Array(out.factors.iter().map(|f| cvec(f)).collect()),
            });
            Ok(json_output(results, json!({"starts": starts, "seed": seed})))
        }
        Cmd::Radar { starts, tol, seed, csv, .. } => {
            let sc = parse_scenario_doc(input)?;
            let cfg = solver_config(*starts, *tol, *seed);
            let sol = solve_radar(&sc, &cfg)?;
            let report: Vec<Value> = sol
                .report
                .iter()
                .map(|e| {
                    json!({
                        "r": e.r,
                        "j": e.j,
                        "x_j": num(e.x_j),
                        "weight": num(e.weight),
                        "value": num(e.value),
                    })
                })
                .collect();
            if let Some(path) = csv {
                let mut text = String::from("r,j,x_j,weight,value\n");
                for e in &sol.report {
                    text.push_str(&format!(
                        "{},{},{},{},{}\n",
                        e.r,
                        e.j,
                        r12(e.x_j),
                        r12(e.weight),
                        r12(e.value)
                    ));
                }
                std::fs::write(path, text)?;
            }
            let results = json!({
                "code": cvec(&sol.code),
                "objective": num(sol.objective),
                "noise": num(sol.noise),
                "residual": num(sol.residual),
                "report": report,
            });
            Ok(json_output(results, json!({"starts": starts, "tol": tol, "seed": seed})))
        }
    }
}

fn input_path(cmd: &Cmd) -> Option<&Path> {
    match cmd {
        Cmd::Parse { input }
        | Cmd::CheckReal { input, .. }
        | Cmd::Convert { input, .. }
        | Cmd::Decompose { input, .. }
        | Cmd::Eig { input, .. }
        | Cmd::Banach { input, .. }
        | Cmd::Rank1 { input, .. }
        | Cmd::Radar { input, .. } => input.as_deref(),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let input = read_input(input_path(&cli.cmd))?;
    let out = run_command(&cli.cmd, &input)?;
    print!("{}", out.stdout);
    if let Some(path) = &cli.manifest {
        let manifest = json!({
            "command": std::env::args().collect::<Vec<_>>(),
            "config": out.config,
            "input_digest": hex::encode(Sha256::digest(input.as_bytes())),
            "results": out.results,
            "wall_time_ms": start.elapsed().as_secs_f64() * 1e3,
        });
        std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(&manifest).unwrap()))?;
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {}", e.msg);
        std::process::exit(e.code);
    }
}
