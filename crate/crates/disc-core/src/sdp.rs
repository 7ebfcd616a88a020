//! Low-rank primal solver for the semidefinite relaxation.
//!
//! The relaxation max <X, A - (d/n)J> over PSD X with diag <= 1 is solved
//! through the factorization X = V V^T with unit-capped rows: projected
//! gradient ascent with backtracking keeps every iterate feasible, so the
//! running objective is a valid lower bound on the optimum at all times.
//! The J term is applied through its rank-one structure (J V = 1 (1^T V)),
//! keeping iterations at O((n + m) k).

use thiserror::Error;

use crate::certificates::{cert_energy_value, cert_square_value};
use crate::exact::CutResult;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::real::{rf, ri, Real};
use crate::rng::SeededRng;
use crate::rounding::{from_factor_rows, hyperplane_round_trace, pm1_to_subset, RoundError};
use crate::spectral::{spectral_summary, Spectrum};

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("rank k must be >= 2 (got {0})")]
    RankTooSmall(usize),
    #[error("objective {objective} exceeds the lambda_2 n upper bound {upper} beyond tolerance")]
    UpperBoundViolation { objective: f64, upper: f64 },
    #[error(transparent)]
    Round(#[from] RoundError),
}

#[derive(Clone, Debug)]
pub struct SdpConfig {
    /// Factor rank; defaults to ceil(sqrt(2n)) + 1.
    pub k: Option<usize>,
    pub max_iters: usize,
    /// Relative objective-gain tolerance over a 25-iteration window.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SdpConfig {
    fn default() -> Self {
        SdpConfig { k: None, max_iters: 5000, tol: 1e-9, seed: 0 }
    }
}

/// Convergence window for the relative-gain stop rule.
const STALL_WINDOW: usize = 25;

#[derive(Clone, Debug)]
pub struct FactorState<F> {
    /// Row i is the vector assigned to vertex i (n x k).
    pub rows: Matrix<F>,
    pub k: usize,
    /// <V V^T, A - (d/n) J>; a valid relaxation lower bound by feasibility.
    pub objective: F,
    pub iterations: usize,
    pub converged: bool,
    pub grad_norm_final: F,
    /// Largest row norm observed across all accepted iterates.
    pub max_row_norm_seen: F,
    /// Objective after every accepted iteration (index 0 = initial point).
    pub objective_history: Vec<F>,
}

impl<F: Real> FactorState<F> {
    /// Recomputes the objective from the stored rows.
    pub fn recompute_objective(&self, g: &Graph) -> F {
        objective_value(g, &self.rows)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "objective": self.objective.to_f64(),
            "iterations": self.iterations,
            "converged": self.converged,
        })
    }
}

pub fn default_rank(n: usize) -> usize {
    ((2.0 * n as f64).sqrt().ceil() as usize) + 1
}

fn objective_value<F: Real>(g: &Graph, rows: &Matrix<F>) -> F {
    let k = rows.cols();
    let mut edge_term = F::zero();
    for (u, v) in g.edges() {
        let dot: F = rows.row(u).iter().zip(rows.row(v)).map(|(&a, &b)| a * b).sum();
        edge_term += dot + dot;
    }
    let mut col_sums = vec![F::zero(); k];
    for i in 0..rows.rows() {
        for (j, &x) in rows.row(i).iter().enumerate() {
            col_sums[j] += x;
        }
    }
    let j_term: F = col_sums.iter().map(|&s| s * s).sum();
    let d_over_n = rf::<F>(g.avg_degree()) / ri(g.n());
    edge_term - d_over_n * j_term
}

fn gradient<F: Real>(g: &Graph, rows: &Matrix<F>) -> Matrix<F> {
    let n = rows.rows();
    let k = rows.cols();
    let mut col_sums = vec![F::zero(); k];
    for i in 0..n {
        for (j, &x) in rows.row(i).iter().enumerate() {
            col_sums[j] += x;
        }
    }
    let d_over_n = rf::<F>(g.avg_degree()) / ri(n);
    let mut grad = Matrix::zeros(n, k);
    for i in 0..n {
        let mut acc = vec![F::zero(); k];
        for u in g.neighbors(i) {
            for (j, &x) in rows.row(u).iter().enumerate() {
                acc[j] += x;
            }
        }
        let row = grad.row_mut(i);
        for j in 0..k {
            row[j] = rf::<F>(2.0) * (acc[j] - d_over_n * col_sums[j]);
        }
    }
    grad
}

/// Rescales any row with norm above 1 back onto the unit sphere.
fn project_rows<F: Real>(rows: &mut Matrix<F>) {
    for i in 0..rows.rows() {
        let norm_sq: F = rows.row(i).iter().map(|&x| x * x).sum();
        if norm_sq > F::one() {
            let inv = F::one() / norm_sq.sqrt();
            for x in rows.row_mut(i) {
                *x *= inv;
            }
        }
    }
}

fn max_row_norm<F: Real>(rows: &Matrix<F>) -> F {
    (0..rows.rows())
        .map(|i| rows.row(i).iter().map(|&x| x * x).sum::<F>().sqrt())
        .fold(F::zero(), F::max)
}

/// Power-iteration estimate of lambda_1 used for the base step size.
fn lambda1_estimate<F: Real>(g: &Graph) -> F {
    let n = g.n();
    if n == 0 || g.m() == 0 {
        return F::zero();
    }
    let mut v: Vec<F> = (0..n).map(|i| F::one() + ri::<F>(g.degree(i))).collect();
    let mut estimate = F::zero();
    for _ in 0..30 {
        let mut next = vec![F::zero(); n];
        for u in 0..n {
            for w in g.neighbors(u) {
                next[u] += v[w];
            }
        }
        let norm = next.iter().map(|&x| x * x).sum::<F>().sqrt();
        if norm <= rf(1e-300) {
            return F::zero();
        }
        let vnorm = v.iter().map(|&x| x * x).sum::<F>().sqrt();
        estimate = norm / vnorm;
        for x in &mut next {
            *x /= norm;
        }
        v = next;
    }
    estimate
}

/// Projected gradient ascent on the row factor. Every iterate is feasible;
/// the objective is non-decreasing across accepted steps (backtracking
/// halves the step until it gains). Deterministic for a fixed config.
pub fn sdp_solve<F: Real>(g: &Graph, config: &SdpConfig) -> Result<FactorState<F>, SdpError> {
    let n = g.n();
    let k = config.k.unwrap_or_else(|| default_rank(n));
    if k < 2 {
        return Err(SdpError::RankTooSmall(k));
    }

    // Interior start: rows i.i.d. uniform on the sphere, scaled to 1/2.
    let mut rng = SeededRng::new(config.seed);
    let mut rows = Matrix::zeros(n, k);
    for i in 0..n {
        let dir: Vec<F> = rng.unit_vector(k);
        for (j, &x) in dir.iter().enumerate() {
            rows.set(i, j, x * rf(0.5));
        }
    }

    let base_step = {
        let denom = rf::<F>(2.0) * lambda1_estimate::<F>(g) + rf::<F>(2.0 * g.avg_degree());
        F::one() / denom.max(rf(1e-9))
    };

    let mut objective = objective_value(g, &rows);
    let mut history = vec![objective];
    let mut max_norm_seen = max_row_norm(&rows);
    let mut converged = false;
    let mut iterations = 0usize;
    let mut grad = gradient(g, &rows);

    while iterations < config.max_iters {
        let scale = F::one() + objective.abs();
        let slack = rf::<F>(1e-12) * scale;
        let mut step = base_step;
        let mut accepted = false;
        for _ in 0..40 {
            let mut candidate = rows.clone();
            for i in 0..n {
                let row = candidate.row_mut(i);
                for (j, x) in row.iter_mut().enumerate() {
                    *x += step * grad.get(i, j);
                }
            }
            project_rows(&mut candidate);
            let cand_obj = objective_value(g, &candidate);
            if cand_obj >= objective - slack {
                rows = candidate;
                objective = objective.max(cand_obj);
                history.push(cand_obj);
                accepted = true;
                break;
            }
            step = step / rf(2.0);
        }
        iterations += 1;
        if !accepted {
            converged = true;
            break;
        }
        max_norm_seen = max_norm_seen.max(max_row_norm(&rows));
        grad = gradient(g, &rows);
        if history.len() > STALL_WINDOW {
            let past = history[history.len() - 1 - STALL_WINDOW];
            let latest = *history.last().unwrap();
            if latest - past < rf::<F>(config.tol) * (F::one() + latest.abs()) {
                converged = true;
                break;
            }
        }
    }

    let grad_norm_final = grad.frobenius_norm();
    Ok(FactorState {
        rows,
        k,
        objective,
        iterations,
        converged,
        grad_norm_final,
        max_row_norm_seen: max_norm_seen,
        objective_history: history,
    })
}

/// Hyperplane rounding over the factor rows with the subset/complement
/// correction applied to the winning trial.
pub fn sdp_round<F: Real>(
    g: &Graph,
    state: &FactorState<F>,
    trials: usize,
    seed: u64,
) -> Result<CutResult, SdpError> {
    let ensemble = from_factor_rows(&state.rows);
    let (best, _) = hyperplane_round_trace(&ensemble, g, trials, seed)?;
    let signs: Vec<i8> = (0..g.n()).map(|v| if best.subset.contains(v) { 1 } else { -1 }).collect();
    let mut corrected = pm1_to_subset(g, &signs)?;
    corrected.method = "sdp_round".into();
    corrected.seed = Some(seed);
    corrected.trial = best.trial;
    Ok(corrected)
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport<F> {
    pub objective: F,
    /// Best eigenvector-certificate lower bound.
    pub cert_best: F,
    /// lambda_2 n (only meaningful when `applicable`).
    pub upper_lambda2_n: F,
    pub applicable: bool,
}

/// Compares the solver objective against the certificate bounds and the
/// lambda_2 n cap; exceeding the cap on a regular graph with lambda_2 >= 0
/// is an error (it would contradict the upper-bound lemma).
pub fn sdp_gap_report<F: Real>(
    g: &Graph,
    state: &FactorState<F>,
    spectrum: &Spectrum<F>,
) -> Result<GapReport<F>, SdpError> {
    let summary = spectral_summary(spectrum, g);
    let cert_best = summary
        .positive_sum
        .max(summary.positive_cube_sum / ri::<F>(g.max_degree().max(1)))
        .max(cert_square_value(&summary, g.max_degree()))
        .max(cert_energy_value(&summary));
    let upper = summary.lambda_2 * ri::<F>(g.n());
    let applicable = g.is_regular() && summary.lambda_2 >= -rf::<F>(1e-9) * summary.lambda_1.abs().max(F::one());
    if applicable {
        let tol = rf::<F>(1e-6) * ri::<F>(g.n());
        if state.objective > upper + tol {
            return Err(SdpError::UpperBoundViolation {
                objective: state.objective.to_f64().unwrap_or(f64::NAN),
                upper: upper.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(GapReport { objective: state.objective, cert_best, upper_lambda2_n: upper, applicable })
}
