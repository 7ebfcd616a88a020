//! Degree-sweep experiment: one row per (point, seed) with spectral stats,
//! every certificate bound, the SDP objective and the rounding value.
//!
//! Rows are computed in a worker pool, then sorted by (n, d, seed); float
//! columns go through the fixed 12-significant-digit formatter, so output
//! is byte-identical across runs of the same config (timing columns stay 0
//! unless --timings is given).

use std::sync::Mutex;
use std::time::Instant;

use disc_core::certificates::{
    cert_cube, cert_dense, cert_energy_value, cert_projector, cert_sandwich, cert_square_value,
    CertError,
};
use disc_core::exact::rational_to_f64;
use disc_core::graph::{gen_blowup, gen_named, gen_random_regular, Graph, NamedFamily};
use disc_core::rounding::{build_sparse_vectors, hyperplane_round};
use disc_core::sdp::{sdp_solve, SdpConfig};
use disc_core::spectral::{eigendecompose, spectral_summary};
use disc_core::{format_sig, Scalar};

use crate::classify;
use crate::output::CliError;

/// Budget: full eigendecompositions per sweep (3 per point: adjacency plus
/// the two explicit PSD checks).
pub const EIGEN_BUDGET: usize = 200;
pub const SWEEP_N_LIMIT: usize = 1000;
const EIGENS_PER_POINT: usize = 3;

/// Sub-stream separation so the SDP and the rounding never share a stream
/// with the graph generator.
const SDP_SEED_MIX: u64 = 0x5d9_0001;
const ROUND_SEED_MIX: u64 = 0x40d_0002;

#[derive(Clone, Debug)]
pub enum SweepModel {
    RandomRegular,
    BlowupC5,
}

impl SweepModel {
    fn label(&self) -> &'static str {
        match self {
            SweepModel::RandomRegular => "rr",
            SweepModel::BlowupC5 => "blowup-c5",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub model: SweepModel,
    pub n_values: Vec<usize>,
    /// Degrees for rr; blow-up factors for blowup-c5.
    pub d_values: Vec<usize>,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub sdp_max_iters: usize,
    pub threads: usize,
    pub timings: bool,
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub model: &'static str,
    pub seed: u64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda_n: f64,
    pub big_lambda: f64,
    pub cert_projector: f64,
    pub cert_cube: f64,
    pub cert_square: f64,
    pub cert_energy: f64,
    pub cert_dense: Option<f64>,
    pub cert_sandwich: Option<f64>,
    pub sdp_objective: f64,
    pub rounding_best: f64,
    pub upper_lambda2_n: f64,
    pub t_eigen_ms: u64,
    pub t_certify_ms: u64,
    pub t_sdp_ms: u64,
    pub t_round_ms: u64,
}

pub const CSV_SCHEMA_LINE: &str = "# schema=1";
pub const CSV_HEADER: &str = "n,d,model,seed,lambda1,lambda2,lambdaN,Lambda,certProjector,certCube,certSquare,certEnergy,certDense,certSandwich,sdpObjective,roundingBest,upperLambda2n,tEigenMs,tCertifyMs,tSdpMs,tRoundMs";

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA_LINE);
    out.push('\n');
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let opt = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.d,
            r.model,
            r.seed,
            format_sig(r.lambda1),
            format_sig(r.lambda2),
            format_sig(r.lambda_n),
            format_sig(r.big_lambda),
            format_sig(r.cert_projector),
            format_sig(r.cert_cube),
            format_sig(r.cert_square),
            format_sig(r.cert_energy),
            opt(r.cert_dense),
            opt(r.cert_sandwich),
            format_sig(r.sdp_objective),
            format_sig(r.rounding_best),
            format_sig(r.upper_lambda2_n),
            r.t_eigen_ms,
            r.t_certify_ms,
            r.t_sdp_ms,
            r.t_round_ms,
        ));
    }
    out
}

pub fn rows_to_json(rows: &[SweepRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n, "d": r.d, "model": r.model, "seed": r.seed,
                    "lambda1": r.lambda1, "lambda2": r.lambda2, "lambdaN": r.lambda_n,
                    "Lambda": r.big_lambda,
                    "certProjector": r.cert_projector, "certCube": r.cert_cube,
                    "certSquare": r.cert_square, "certEnergy": r.cert_energy,
                    "certDense": r.cert_dense, "certSandwich": r.cert_sandwich,
                    "sdpObjective": r.sdp_objective, "roundingBest": r.rounding_best,
                    "upperLambda2n": r.upper_lambda2_n,
                    "tEigenMs": r.t_eigen_ms, "tCertifyMs": r.t_certify_ms,
                    "tSdpMs": r.t_sdp_ms, "tRoundMs": r.t_round_ms,
                })
            })
            .collect(),
    )
}

struct Point {
    n: usize,
    d: usize,
    seed: u64,
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let mut points = Vec::new();
    for &n in &config.n_values {
        for &d in &config.d_values {
            for &seed in &config.seeds {
                points.push(Point { n, d, seed });
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::guard("empty sweep grid"));
    }
    let worst_n = match config.model {
        SweepModel::RandomRegular => config.n_values.iter().copied().max().unwrap_or(0),
        SweepModel::BlowupC5 => config.d_values.iter().copied().max().unwrap_or(0) * 5,
    };
    if worst_n > SWEEP_N_LIMIT {
        return Err(CliError::guard(format!(
            "sweep point with n = {worst_n} exceeds the n <= {SWEEP_N_LIMIT} budget"
        )));
    }
    let eigens = points.len() * EIGENS_PER_POINT;
    if eigens > EIGEN_BUDGET {
        return Err(CliError::guard(format!(
            "sweep needs ~{eigens} eigendecompositions ({} points x {EIGENS_PER_POINT}), budget is {EIGEN_BUDGET}; shrink the grid",
            points.len()
        )));
    }

    let threads = config.threads.max(1).min(points.len());
    let results: Mutex<Vec<Option<Result<SweepRow, CliError>>>> =
        Mutex::new((0..points.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for worker in 0..threads {
            let results = &results;
            let points = &points;
            scope.spawn(move || {
                let mut idx = worker;
                while idx < points.len() {
                    let outcome = run_point(config, &points[idx]);
                    results.lock().unwrap()[idx] = Some(outcome);
                    idx += threads;
                }
            });
        }
    });
    let mut rows = Vec::with_capacity(points.len());
    for outcome in results.into_inner().unwrap() {
        rows.push(outcome.expect("worker filled every slot")?);
    }
    rows.sort_by(|a, b| (a.n, a.d, a.seed).cmp(&(b.n, b.d, b.seed)));
    Ok(rows)
}

fn build_graph(config: &SweepConfig, point: &Point) -> Result<Graph, CliError> {
    match config.model {
        SweepModel::RandomRegular => {
            gen_random_regular(point.n, point.d, point.seed).map_err(classify::graph_err)
        }
        SweepModel::BlowupC5 => {
            let c5 = gen_named(&NamedFamily::Cycle { n: 5 }).map_err(classify::graph_err)?;
            gen_blowup(&c5, point.d).map_err(classify::graph_err)
        }
    }
}

fn optional_cert<T>(result: Result<T, CertError>) -> Result<Option<T>, CliError> {
    match result {
        Ok(v) => Ok(Some(v)),
        // Out-of-regime points are normal sweep cells, not failures.
        Err(CertError::Precondition(_)) => Ok(None),
        Err(e) => Err(classify::cert_err(e)),
    }
}

fn run_point(config: &SweepConfig, point: &Point) -> Result<SweepRow, CliError> {
    let g = build_graph(config, point)?;

    let t0 = Instant::now();
    let spectrum = eigendecompose::<Scalar>(&g).map_err(classify::spectral_err)?;
    let t_eigen = t0.elapsed();

    let t0 = Instant::now();
    let summary = spectral_summary(&spectrum, &g);
    let projector = cert_projector(&g, &spectrum).map_err(classify::cert_err)?;
    let cube = cert_cube(&g, &spectrum).map_err(classify::cert_err)?;
    let square = cert_square_value(&summary, g.max_degree());
    let energy = cert_energy_value(&summary);
    let dense = optional_cert(cert_dense(&g, &spectrum, config.epsilon))?.map(|(c, _)| c.bound);
    let sandwich = optional_cert(cert_sandwich(&g, &spectrum, config.epsilon))?.map(|(c, _)| c.bound);
    let t_certify = t0.elapsed();

    let t0 = Instant::now();
    let sdp_config = SdpConfig {
        k: None,
        max_iters: config.sdp_max_iters,
        tol: 1e-9,
        seed: point.seed ^ SDP_SEED_MIX,
    };
    let state = sdp_solve::<Scalar>(&g, &sdp_config).map_err(classify::sdp_err)?;
    let t_sdp = t0.elapsed();

    let t0 = Instant::now();
    let ensemble = build_sparse_vectors::<Scalar>(&g, config.delta);
    let rounded = hyperplane_round(&ensemble, &g, config.trials, point.seed ^ ROUND_SEED_MIX)
        .map_err(classify::round_err)?;
    let t_round = t0.elapsed();

    let ms = |d: std::time::Duration| if config.timings { d.as_millis() as u64 } else { 0 };
    Ok(SweepRow {
        n: g.n(),
        d: point.d,
        model: config.model.label(),
        seed: point.seed,
        lambda1: summary.lambda_1,
        lambda2: summary.lambda_2,
        lambda_n: summary.lambda_n,
        big_lambda: summary.big_lambda,
        cert_projector: projector.bound,
        cert_cube: cube.bound,
        cert_square: square,
        cert_energy: energy,
        cert_dense: dense,
        cert_sandwich: sandwich,
        sdp_objective: state.objective,
        rounding_best: rational_to_f64(rounded.value),
        upper_lambda2_n: summary.lambda_2 * g.n() as f64,
        t_eigen_ms: ms(t_eigen),
        t_certify_ms: ms(t_certify),
        t_sdp_ms: ms(t_sdp),
        t_round_ms: ms(t_round),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> SweepConfig {
        SweepConfig {
            model: SweepModel::RandomRegular,
            n_values: vec![24],
            d_values: vec![4, 6],
            seeds: vec![1, 2],
            trials: 20,
            epsilon: 0.1,
            delta: 1e-4,
            sdp_max_iters: 400,
            threads: 2,
            timings: false,
        }
    }

    #[test]
    fn sweep_rows_and_determinism() {
        let config = tiny_config();
        let rows = run_sweep(&config).unwrap();
        assert_eq!(rows.len(), 4);
        let csv_a = rows_to_csv(&rows);
        let csv_b = rows_to_csv(&run_sweep(&config).unwrap());
        assert_eq!(csv_a, csv_b);
        assert!(csv_a.starts_with("# schema=1\nn,d,model,seed,"));
        // Regular instances: every certificate below lambda2 n.
        for row in &rows {
            let tol = 1e-6 * row.n as f64;
            for bound in [row.cert_projector, row.cert_cube, row.cert_square, row.cert_energy] {
                assert!(bound <= row.upper_lambda2_n + tol);
            }
            assert!(row.sdp_objective <= row.upper_lambda2_n + tol);
        }
    }

    #[test]
    fn budget_guard_refuses_oversized_grids() {
        let mut config = tiny_config();
        config.seeds = (0..100).collect();
        let err = run_sweep(&config).unwrap_err();
        assert_eq!(err.code, crate::output::EXIT_GUARD);
        assert!(err.message.contains("budget"));
    }
}
