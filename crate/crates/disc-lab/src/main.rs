//! disc-lab: command-line front end for the graph discrepancy toolkit.
//!
//! Exit codes: 0 success, 2 guard/precondition violation, 3 internal
//! invariant failure.

mod classify;
mod gen_spec;
mod output;
mod sweep;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use disc_core::certificates::{
    cert_cube, cert_dense, cert_energy_value, cert_projector, cert_sandwich, cert_square_value,
    lambda_case_report, upper_bounds, CertError,
};
use disc_core::exact::{
    deficit_exact, disc1_plus_exact, disc_minus_exact, disc_plus_exact, disc_set, rational_to_f64,
    surplus_exact, CutResult,
};
use disc_core::graph::{from_edge_list, Graph};
use disc_core::rounding::{
    arcsin_bounds_check, build_sparse_vectors, expected_disc, hyperplane_round_trace,
    set_to_bisection, RoundError,
};
use disc_core::sdp::{sdp_gap_report, sdp_round, sdp_solve, SdpConfig};
use disc_core::spectral::{eigendecompose, spectral_summary, write_matrix_binary};
use disc_core::{format_sig, Rational, Scalar};

use output::{emit_json, write_atomic, CliError};
use sweep::{rows_to_csv, run_sweep, SweepConfig, SweepModel};

#[derive(Parser)]
#[command(name = "disc-lab", version, about = "Graph discrepancy toolkit: exact oracles, spectral certificates, SDP relaxation, hyperplane rounding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact brute-force discrepancy oracles (small graphs)
    Exact(ExactArgs),
    /// Eigendecomposition and spectral summary
    Spectrum(SpectrumArgs),
    /// Certificate lower bounds and lambda_2 upper bounds
    Certify(CertifyArgs),
    /// Hyperplane rounding from the sparse vector assignment
    Round(RoundArgs),
    /// Low-rank SDP solver for the relaxation
    Sdp(SdpArgs),
    /// Degree-sweep experiment producing a CSV
    Sweep(SweepArgs),
    /// Run the built-in invariant suite
    Verify(VerifyArgs),
    /// Generate a graph and write its edge list
    Gen(GenArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file, or a generator spec (e.g. petersen, c5, rr:n=100,d=4,seed=7)
    #[arg(long)]
    graph: Option<String>,
    /// Generator spec (e.g. blowup:c5,k=100); alternative to --graph
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph, CliError> {
        match (&self.graph, &self.gen) {
            (Some(_), Some(_)) => Err(CliError::guard("pass exactly one of --graph / --gen")),
            (None, None) => Err(CliError::guard("a graph is required: --graph <file|spec> or --gen <spec>")),
            (Some(source), None) => {
                let path = Path::new(source);
                if path.exists() {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::guard(format!("cannot read {}: {e}", path.display())))?;
                    from_edge_list(&text).map_err(classify::graph_err)
                } else {
                    gen_spec::parse_gen_spec(source).map_err(|e| {
                        CliError::guard(format!("`{source}` is neither a readable file nor a generator spec: {e}"))
                    })
                }
            }
            (None, Some(spec)) => gen_spec::parse_gen_spec(spec).map_err(CliError::guard),
        }
    }
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Which oracle to run
    #[arg(long, default_value = "disc-plus", value_parser = ["disc-plus", "disc-minus", "disc1-plus", "surplus", "deficit", "all"])]
    kind: String,
    /// Override the n <= 24 enumeration guard (hard cap 30)
    #[arg(long)]
    force: bool,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Write eigenvalues as CSV
    #[arg(long)]
    eigenvalues_csv: Option<PathBuf>,
    /// Dump eigenvectors in the binary matrix format
    #[arg(long)]
    vectors_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Produce every certificate that applies (default when --cert absent)
    #[arg(long)]
    all: bool,
    /// Comma list of certificates: projector,cube,square,energy,dense,sandwich
    #[arg(long, value_delimiter = ',')]
    cert: Vec<String>,
    /// Slack parameter for the dense and sandwich constructions
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Dump the first explicit certificate matrix (dense, else sandwich)
    /// in the binary matrix format
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RoundArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Sparse-assignment weight parameter
    #[arg(long, default_value_t = disc_core::rounding::DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also convert the rounded set into an equipartition
    #[arg(long)]
    bisect: bool,
    /// Completion samples for the bisection conversion
    #[arg(long, default_value_t = 500)]
    bisect_trials: usize,
    /// Skip the O(n^2) analytic expectation
    #[arg(long)]
    no_expected: bool,
    /// Write the per-trial disc values as CSV
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SdpArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Factor rank (default ceil(sqrt(2n)) + 1)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hyperplane-rounding trials on the factor rows
    #[arg(long, default_value_t = 100)]
    round_trials: usize,
    /// Dump the factor rows in the binary matrix format
    #[arg(long)]
    vectors_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid model
    #[arg(long, default_value = "rr", value_parser = ["rr", "blowup-c5"])]
    model: String,
    /// Vertex counts (rr model), comma-separated
    #[arg(long, value_delimiter = ',', default_value = "500")]
    n: Vec<usize>,
    /// Degrees (rr) or blow-up factors (blowup-c5), comma-separated
    #[arg(long, value_delimiter = ',')]
    d: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 1e-4)]
    delta: f64,
    #[arg(long, default_value_t = 2000)]
    sdp_iters: usize,
    /// Worker threads (falls back to DISCLAB_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall times (timing columns otherwise stay 0 for byte-identical output)
    #[arg(long)]
    timings: bool,
    /// Output format
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only checks whose name contains this substring
    #[arg(long)]
    only: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec
    #[arg(long)]
    gen: String,
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Exact(args) => cmd_exact(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Round(args) => cmd_round(args),
        Command::Sdp(args) => cmd_sdp(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Gen(args) => cmd_gen(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.code);
    }
}

fn cut_json(result: &CutResult) -> serde_json::Value {
    let mut value = result.to_json();
    let extras = json!({
        "method": result.method,
        "seed": result.seed,
        "trial": result.trial,
        "valueFloat": rational_to_f64(result.value),
    });
    value.as_object_mut().unwrap().extend(extras.as_object().unwrap().clone());
    value
}

fn cmd_exact(args: ExactArgs) -> Result<(), CliError> {
    let g = args.input.load()?;
    let run = |kind: &str| -> Result<serde_json::Value, CliError> {
        let result = match kind {
            "disc-plus" => disc_plus_exact(&g, args.force),
            "disc-minus" => disc_minus_exact(&g, args.force),
            "disc1-plus" => disc1_plus_exact(&g, args.force),
            "surplus" => surplus_exact(&g, args.force),
            "deficit" => deficit_exact(&g, args.force),
            other => return Err(CliError::guard(format!("unknown kind {other}"))),
        }
        .map_err(classify::oracle_err)?;
        Ok(cut_json(&result))
    };
    let kinds: Vec<&str> = if args.kind == "all" {
        vec!["disc-plus", "disc-minus", "disc1-plus", "surplus", "deficit"]
    } else {
        vec![args.kind.as_str()]
    };
    if args.format == "csv" {
        let mut csv = String::from("kind,value_num,value_den,valueFloat,subset\n");
        for kind in &kinds {
            let record = run(kind)?;
            let subset: Vec<u64> = record["subset"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                record["kind"].as_str().unwrap(),
                record["value_num"],
                record["value_den"],
                format_sig(record["valueFloat"].as_f64().unwrap()),
                subset.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            ));
        }
        print!("{csv}");
        if let Some(path) = &args.out {
            write_atomic(path, csv.as_bytes())?;
        }
        return Ok(());
    }
    let payload = if args.kind == "all" {
        let mut map = serde_json::Map::new();
        for (key, kind) in [
            ("discPlus", "disc-plus"),
            ("discMinus", "disc-minus"),
            ("disc1Plus", "disc1-plus"),
            ("surplus", "surplus"),
            ("deficit", "deficit"),
        ] {
            map.insert(key.to_string(), run(kind)?);
        }
        serde_json::Value::Object(map)
    } else {
        run(&args.kind)?
    };
    emit_json(&payload, args.out.as_deref())
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let g = args.input.load()?;
    let spectrum = eigendecompose::<Scalar>(&g).map_err(classify::spectral_err)?;
    let summary = spectral_summary(&spectrum, &g);
    if let Some(path) = &args.eigenvalues_csv {
        write_atomic(path, disc_core::spectral::eigenvalues_csv(&spectrum).as_bytes())?;
    }
    if let Some(path) = &args.vectors_out {
        let mut buf = Vec::new();
        write_matrix_binary(&spectrum.eigenvectors, &mut buf)
            .map_err(|e| CliError::guard(format!("binary dump: {e}")))?;
        write_atomic(path, &buf)?;
    }
    let payload = json!({
        "n": g.n(),
        "m": g.m(),
        "eigenvalues": spectrum.eigenvalues,
        "residual": spectrum.residual,
        "summary": summary,
    });
    emit_json(&payload, args.out.as_deref())
}

fn certificate_entry(
    name: &str,
    result: Result<serde_json::Value, CertError>,
    explicit_request: bool,
) -> Result<serde_json::Value, CliError> {
    match result {
        Ok(value) => Ok(value),
        Err(CertError::Precondition(reason)) if !explicit_request => {
            Ok(json!({ "tag": name, "skipped": reason }))
        }
        Err(e) => Err(classify::cert_err(e)),
    }
}

fn cmd_certify(args: CertifyArgs) -> Result<(), CliError> {
    let g = args.input.load()?;
    let spectrum = eigendecompose::<Scalar>(&g).map_err(classify::spectral_err)?;
    let summary = spectral_summary(&spectrum, &g);
    let requested: Vec<String> = if args.cert.is_empty() {
        ["projector", "cube", "square", "energy", "dense", "sandwich"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        args.cert.clone()
    };
    let explicit = !args.cert.is_empty();
    let mut certificates = Vec::new();
    let mut matrix_dump: Option<Vec<u8>> = None;
    let capture = |cert: &disc_core::Certificate64, dump: &mut Option<Vec<u8>>| {
        if args.matrix_out.is_some() && dump.is_none() {
            if let disc_core::certificates::CertMatrix::Explicit(m) = &cert.matrix {
                let mut buf = Vec::new();
                if write_matrix_binary(m, &mut buf).is_ok() {
                    *dump = Some(buf);
                }
            }
        }
    };
    for name in &requested {
        let entry = match name.as_str() {
            "projector" => certificate_entry(
                name,
                cert_projector(&g, &spectrum).map(|c| c.summary_json(json!({}))),
                explicit,
            )?,
            "cube" => certificate_entry(
                name,
                cert_cube(&g, &spectrum).map(|c| c.summary_json(json!({}))),
                explicit,
            )?,
            "square" => json!({ "tag": "square", "bound": cert_square_value(&summary, g.max_degree()) }),
            "energy" => json!({ "tag": "energy", "bound": cert_energy_value(&summary) }),
            "dense" => certificate_entry(
                name,
                cert_dense(&g, &spectrum, args.epsilon).map(|(c, diag)| {
                    capture(&c, &mut matrix_dump);
                    c.summary_json(serde_json::to_value(&diag).unwrap())
                }),
                explicit,
            )?,
            "sandwich" => certificate_entry(
                name,
                cert_sandwich(&g, &spectrum, args.epsilon).map(|(c, report)| {
                    capture(&c, &mut matrix_dump);
                    c.summary_json(serde_json::to_value(&report).unwrap())
                }),
                explicit,
            )?,
            other => return Err(CliError::guard(format!("unknown certificate `{other}`"))),
        };
        certificates.push(entry);
    }
    if let Some(path) = &args.matrix_out {
        match matrix_dump {
            Some(bytes) => write_atomic(path, &bytes)?,
            None => return Err(CliError::guard("no explicit certificate matrix was produced to dump")),
        }
    }
    let payload = json!({
        "certificates": certificates,
        "lambdaCase": lambda_case_report(&g, &summary),
        "upper": upper_bounds(&g, &spectrum),
    });
    emit_json(&payload, args.out.as_deref())
}

fn cmd_round(args: RoundArgs) -> Result<(), CliError> {
    let g = args.input.load()?;
    let ensemble = build_sparse_vectors::<Scalar>(&g, args.delta);
    let (best, trace) =
        hyperplane_round_trace(&ensemble, &g, args.trials, args.seed).map_err(classify::round_err)?;
    if let Some(path) = &args.trace {
        let mut csv = String::from("trial,disc\n");
        for (i, value) in trace.iter().enumerate() {
            csv.push_str(&format!("{},{}\n", i, format_sig(rational_to_f64(*value))));
        }
        write_atomic(path, csv.as_bytes())?;
    }
    let expected = if args.no_expected {
        None
    } else {
        match expected_disc(&ensemble, &g) {
            Ok(v) => Some(v),
            Err(RoundError::Guard { .. }) => None,
            Err(e) => return Err(classify::round_err(e)),
        }
    };
    let arcsin = match arcsin_bounds_check(&ensemble, &g) {
        Ok(report) => Some(report),
        Err(RoundError::Guard { .. }) => None,
        Err(e) => return Err(classify::round_err(e)),
    };
    let bisection = if args.bisect {
        let small = if best.subset.len() <= g.n() / 2 { best.subset.clone() } else { best.subset.complement() };
        if g.is_regular() && disc_set(&g, &small).map_err(classify::oracle_err)? > Rational::new(0, 1) {
            let result =
                set_to_bisection(&g, &small, args.bisect_trials, args.seed ^ 1).map_err(classify::round_err)?;
            Some(cut_json(&result))
        } else {
            None
        }
    } else {
        None
    };
    let payload = json!({
        "cut": cut_json(&best),
        "z": ensemble.z,
        "regime": ensemble.regime,
        "expectedDisc": expected,
        "arcsin": arcsin,
        "bisection": bisection,
    });
    emit_json(&payload, args.out.as_deref())
}

fn cmd_sdp(args: SdpArgs) -> Result<(), CliError> {
    let g = args.input.load()?;
    let config = SdpConfig { k: args.k, max_iters: args.max_iters, tol: args.tol, seed: args.seed };
    let state = sdp_solve::<Scalar>(&g, &config).map_err(classify::sdp_err)?;
    if let Some(path) = &args.vectors_out {
        let mut buf = Vec::new();
        write_matrix_binary(&state.rows, &mut buf)
            .map_err(|e| CliError::guard(format!("binary dump: {e}")))?;
        write_atomic(path, &buf)?;
    }
    let spectrum = eigendecompose::<Scalar>(&g).map_err(classify::spectral_err)?;
    let gap = sdp_gap_report(&g, &state, &spectrum).map_err(classify::sdp_err)?;
    let cut = sdp_round(&g, &state, args.round_trials, args.seed ^ 0xb0).map_err(classify::sdp_err)?;
    let mut payload = state.summary_json();
    payload.as_object_mut().unwrap().extend(
        json!({
            "gradNormFinal": state.grad_norm_final,
            "k": state.k,
            "gap": gap,
            "cut": cut_json(&cut),
        })
        .as_object()
        .unwrap()
        .clone(),
    );
    emit_json(&payload, args.out.as_deref())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.d.is_empty() {
        return Err(CliError::guard("--d is required (degrees or blow-up factors)"));
    }
    let threads = args
        .threads
        .or_else(|| std::env::var("DISCLAB_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1);
    let model = match args.model.as_str() {
        "rr" => SweepModel::RandomRegular,
        "blowup-c5" => SweepModel::BlowupC5,
        other => return Err(CliError::guard(format!("unknown sweep model `{other}`"))),
    };
    let config = SweepConfig {
        model,
        n_values: args.n.clone(),
        d_values: args.d.clone(),
        seeds: args.seeds.clone(),
        trials: args.trials,
        epsilon: args.epsilon,
        delta: args.delta,
        sdp_max_iters: args.sdp_iters,
        threads,
        timings: args.timings,
    };
    let rows = run_sweep(&config)?;
    let payload = match args.format.as_str() {
        "csv" => rows_to_csv(&rows),
        _ => format!("{:#}\n", sweep::rows_to_json(&rows)),
    };
    write_atomic(&args.out, payload.as_bytes())?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let report = disc_core::verify::run(args.only.as_deref());
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {}{}", check.name, if check.detail.is_empty() { String::new() } else { format!(" ({})", check.detail) });
        for failure in &check.failures {
            println!("       {failure}");
        }
    }
    if let Some(path) = &args.out {
        write_atomic(path, serde_json::to_string_pretty(&report.to_json()).unwrap().as_bytes())?;
    }
    if report.checks.is_empty() {
        return Err(CliError::guard("no checks matched the filter"));
    }
    if !report.passed {
        return Err(CliError::invariant("verification failed"));
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let g = gen_spec::parse_gen_spec(&args.gen).map_err(CliError::guard)?;
    write_atomic(&args.out, g.to_edge_list().as_bytes())?;
    println!("wrote {} ({} vertices, {} edges)", args.out.display(), g.n(), g.m());
    Ok(())
}
