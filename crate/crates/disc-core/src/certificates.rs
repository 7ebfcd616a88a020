//! Feasible-matrix certificates for the semidefinite relaxation.
//!
//! The relaxation maximizes disc(X) = <X, A - (d/n)J> over PSD X with
//! diagonal at most 1; any feasible X certifies a lower bound on the
//! optimum. This module builds the eigenvector-combination certificates
//! (projector, cube, square, energy), the Hadamard-product constructions
//! for the dense and lambda_2-sandwich regimes, and the lambda_2-based
//! upper bounds that every lower bound is checked against.
//!
//! Every bound is normalized by max(1, max diagonal) instead of trusting
//! diag <= 1 to hold exactly in floating point: X / maxDiag is always
//! feasible, so the normalized value remains a valid bound.

use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{adjacency_matrix, adjacency_square, jacobi_eigen, JacobiConfig, LinalgError, Matrix};
use crate::real::{rf, ri, Real};
use crate::rng::SeededRng;
use crate::spectral::{spectral_summary, SpectralError, SpectralSummary, Spectrum};

/// Relative tolerance for dual-route value agreement.
pub const ROUTE_TOL: f64 = 1e-6;
/// PSD slack factor: min eigenvalue >= -PSD_TOL * (1 + ||X||_2 estimate).
pub const PSD_TOL: f64 = 1e-8;
/// Explicit matrices above this size use Rayleigh smoke tests instead of a
/// full eigendecomposition for the PSD diagnostic.
pub const PSD_DENSE_LIMIT: usize = 2000;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value routes disagree: {route_a} vs {route_b} (relative {relative:e})")]
    RouteDisagreement { route_a: f64, route_b: f64, relative: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate matrix is not PSD within tolerance (min eig {min_eig:e}, scale {scale:e})")]
    PsdViolation { min_eig: f64, scale: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CertTag {
    Projector,
    Cube,
    Square,
    Energy,
    LambdaCase,
    DenseXZ,
    SandwichYZ,
    Custom,
}

/// Matrix payload: explicit entries, or coefficients over the eigenvector
/// outer products v_i v_i^T (whose eigenvalues are exactly the coefficients).
#[derive(Clone, Debug)]
pub enum CertMatrix<F> {
    Explicit(Matrix<F>),
    EigenCombination(Vec<F>),
}

#[derive(Clone, Debug)]
pub struct Certificate<F> {
    pub tag: CertTag,
    pub matrix: CertMatrix<F>,
    /// disc(X) = <X, A - (d/n)J>.
    pub disc_value: F,
    pub max_diag: F,
    /// Smallest eigenvalue (exact for eigen-combinations, numeric for
    /// explicit matrices); diagnostic for PSD feasibility.
    pub min_eig: F,
    /// Certified lower bound: disc(X) / max(1, maxDiag).
    pub bound: F,
}

impl<F: Real> Certificate<F> {
    /// PSD feasibility within tolerance, scale-aware.
    pub fn check_feasible(&self) -> Result<(), CertError> {
        let scale = match &self.matrix {
            CertMatrix::Explicit(m) => F::one() + m.frobenius_norm(),
            CertMatrix::EigenCombination(coeffs) => {
                F::one() + coeffs.iter().fold(F::zero(), |acc, &c| acc.max(c.abs()))
            }
        };
        if self.min_eig < -rf::<F>(PSD_TOL) * scale {
            return Err(CertError::PsdViolation {
                min_eig: self.min_eig.to_f64().unwrap_or(f64::NAN),
                scale: scale.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn summary_json(&self, diagnostics: serde_json::Value) -> serde_json::Value {
        serde_json::json!({
            "tag": self.tag,
            "bound": self.bound.to_f64(),
            "discValue": self.disc_value.to_f64(),
            "maxDiag": self.max_diag.to_f64(),
            "minEig": self.min_eig.to_f64(),
            "diagnostics": diagnostics,
        })
    }
}

/// disc(X) for an explicit symmetric matrix: <X, A> - (d/n) <X, J>.
pub fn disc_matrix_explicit<F: Real>(g: &Graph, x: &Matrix<F>) -> Result<F, CertError> {
    if x.rows() != g.n() || x.cols() != g.n() {
        return Err(CertError::DimensionMismatch { expected: g.n(), got: x.rows() });
    }
    let mut edge_term = F::zero();
    for (u, v) in g.edges() {
        edge_term += x.get(u, v) + x.get(v, u);
    }
    let d_over_n = rf::<F>(g.avg_degree()) / ri(g.n());
    Ok(edge_term - d_over_n * x.sum_entries())
}

/// disc(X) for X = sum_i coeffs[i] v_i v_i^T, computed two independent
/// ways — the eigenvalue route sum_i a_i lambda_i - d sum_i a_i <v_i,e>^2
/// and full explicit expansion — which must agree to 1e-6 relative.
pub fn disc_matrix_eigen<F: Real>(
    g: &Graph,
    spectrum: &Spectrum<F>,
    coeffs: &[F],
) -> Result<F, CertError> {
    if coeffs.len() != g.n() {
        return Err(CertError::DimensionMismatch { expected: g.n(), got: coeffs.len() });
    }
    let d = rf::<F>(g.avg_degree());
    let mut route_eigen = F::zero();
    for (i, &a) in coeffs.iter().enumerate() {
        if a != F::zero() {
            let overlap = spectrum.eigenvector_mean_overlap[i];
            route_eigen += a * spectrum.eigenvalues[i] - d * a * overlap * overlap;
        }
    }
    let x = expand_eigen_combination(spectrum, coeffs);
    let route_explicit = disc_matrix_explicit(g, &x)?;
    let scale = route_eigen.abs().max(route_explicit.abs()).max(F::one());
    let relative = (route_eigen - route_explicit).abs() / scale;
    if relative > rf(ROUTE_TOL) {
        return Err(CertError::RouteDisagreement {
            route_a: route_eigen.to_f64().unwrap_or(f64::NAN),
            route_b: route_explicit.to_f64().unwrap_or(f64::NAN),
            relative: relative.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(route_eigen)
}

/// Materializes sum_i coeffs[i] v_i v_i^T.
pub fn expand_eigen_combination<F: Real>(spectrum: &Spectrum<F>, coeffs: &[F]) -> Matrix<F> {
    let n = spectrum.n();
    let mut x = Matrix::zeros(n, n);
    for (i, &a) in coeffs.iter().enumerate() {
        if a != F::zero() {
            x.add_outer(a, &spectrum.eigenvector(i));
        }
    }
    x
}

fn certificate_from_eigen<F: Real>(
    g: &Graph,
    spectrum: &Spectrum<F>,
    tag: CertTag,
    coeffs: Vec<F>,
) -> Result<Certificate<F>, CertError> {
    let disc_value = disc_matrix_eigen(g, spectrum, &coeffs)?;
    let n = g.n();
    let mut max_diag = F::neg_infinity();
    for j in 0..n {
        let mut diag = F::zero();
        for (i, &a) in coeffs.iter().enumerate() {
            if a != F::zero() {
                let v = spectrum.eigenvectors.get(j, i);
                diag += a * v * v;
            }
        }
        max_diag = max_diag.max(diag);
    }
    // Eigenvalues of the combination are the coefficients themselves, plus
    // zero whenever some eigenvector is left out.
    let mut min_eig = coeffs.iter().copied().fold(F::infinity(), F::min);
    if coeffs.iter().any(|&a| a == F::zero()) {
        min_eig = min_eig.min(F::zero());
    }
    let bound = disc_value / max_diag.max(F::one());
    let cert = Certificate { tag, matrix: CertMatrix::EigenCombination(coeffs), disc_value, max_diag, min_eig, bound };
    cert.check_feasible()?;
    Ok(cert)
}

fn certificate_from_explicit<F: Real>(
    g: &Graph,
    tag: CertTag,
    x: Matrix<F>,
) -> Result<Certificate<F>, CertError> {
    let disc_value = disc_matrix_explicit(g, &x)?;
    let max_diag = x.max_diag();
    let min_eig = explicit_min_eig(&x)?;
    let bound = disc_value / max_diag.max(F::one());
    let cert = Certificate { tag, matrix: CertMatrix::Explicit(x), disc_value, max_diag, min_eig, bound };
    cert.check_feasible()?;
    Ok(cert)
}

/// Smallest eigenvalue of an explicit symmetric matrix: full Jacobi up to
/// the dense limit, then 20 seeded Rayleigh quotients as a smoke check.
fn explicit_min_eig<F: Real>(x: &Matrix<F>) -> Result<F, CertError> {
    let n = x.rows();
    if n <= PSD_DENSE_LIMIT {
        let (vals, _) = jacobi_eigen(x.clone(), &JacobiConfig::default())?;
        Ok(vals.into_iter().fold(F::infinity(), F::min))
    } else {
        let mut rng = SeededRng::new(0x5eed_0001);
        let mut min_q = F::infinity();
        for _ in 0..20 {
            let v: Vec<F> = rng.unit_vector(n);
            let xv = x.matvec(&v);
            let q: F = v.iter().zip(&xv).map(|(&a, &b)| a * b).sum();
            min_q = min_q.min(q);
        }
        Ok(min_q)
    }
}

/// Projector certificate X = sum_{i <= K} v_i v_i^T: 0 <= X <= I, so the
/// diagonal is automatically feasible; bound >= sum_{i=2..K} lambda_i.
pub fn cert_projector<F: Real>(g: &Graph, spectrum: &Spectrum<F>) -> Result<Certificate<F>, CertError> {
    let k = spectrum.positive_count();
    let mut coeffs = vec![F::zero(); g.n()];
    for c in coeffs.iter_mut().take(k) {
        *c = F::one();
    }
    certificate_from_eigen(g, spectrum, CertTag::Projector, coeffs)
}

/// Cube certificate X = (1/Delta) sum_{i <= K} lambda_i^2 v_i v_i^T;
/// Y <= A^2 gives diag <= Delta before scaling, so feasibility holds and
/// bound >= (1/Delta) sum_{i=2..K} lambda_i^3.
pub fn cert_cube<F: Real>(g: &Graph, spectrum: &Spectrum<F>) -> Result<Certificate<F>, CertError> {
    let delta = g.max_degree();
    if delta == 0 {
        return Err(CertError::Precondition("cube certificate requires max degree >= 1".into()));
    }
    let k = spectrum.positive_count();
    let inv_delta = F::one() / ri::<F>(delta);
    let mut coeffs = vec![F::zero(); g.n()];
    for (i, c) in coeffs.iter_mut().enumerate().take(k) {
        let l = spectrum.eigenvalues[i];
        *c = inv_delta * l * l;
    }
    certificate_from_eigen(g, spectrum, CertTag::Cube, coeffs)
}

/// Scalar bound (1/sqrt(Delta)) sum_{i=2..K} lambda_i^2.
pub fn cert_square_value<F: Real>(summary: &SpectralSummary<F>, max_degree: usize) -> F {
    if max_degree == 0 {
        return F::zero();
    }
    summary.positive_square_sum / ri::<F>(max_degree).sqrt()
}

/// Scalar bound E(G)/2 - lambda_1.
pub fn cert_energy_value<F: Real>(summary: &SpectralSummary<F>) -> F {
    summary.energy / rf(2.0) - summary.lambda_1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LambdaBranch {
    HypothesesUnmet,
    /// Lambda_2(tail) <= dn/4, so positive squares carry >= dn/4.
    SquareDominant,
    /// Lambda <= Lambda_3 / 2, so positive cubes carry >= Lambda_3 / 2.
    CubeDominant,
    /// Positive sum route: sum_{i <= K} lambda_i >= Lambda_2^2 / (2 Lambda).
    ProjectorRoute,
}

/// The decision chain of the small-Lambda lower-bound lemma evaluated with
/// actual numbers, reporting which branch fires and the explicit
/// certificate value that the branch guarantees.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaCaseReport<F> {
    pub branch: LambdaBranch,
    pub hypotheses_met: bool,
    pub big_lambda: F,
    pub tail_square_sum: F,
    pub tail_cube_sum: F,
    /// Regime split threshold d^{3/2} n / 16.
    pub lambda_threshold: F,
    pub lambda_small_regime: bool,
    pub square_route_value: F,
    pub cube_route_value: F,
    pub projector_route_value: F,
    /// Best explicit certificate value among the routes the branch implies.
    pub best_bound: F,
}

pub fn lambda_case_report<F: Real>(g: &Graph, summary: &SpectralSummary<F>) -> LambdaCaseReport<F> {
    let n = ri::<F>(g.n());
    let d = rf::<F>(g.avg_degree());
    let delta = ri::<F>(g.max_degree().max(1));
    let hypotheses_met =
        ri::<F>(g.max_degree()) <= rf::<F>(1.1) * d && rf::<F>(2.0) * d <= n && g.m() > 0;

    let square_route_value = cert_square_value(summary, g.max_degree());
    let cube_route_value = summary.tail_cube_sum / (rf::<F>(2.0) * delta);
    let projector_route_value = if summary.big_lambda > F::zero() {
        summary.tail_square_sum * summary.tail_square_sum
            / (rf::<F>(2.0) * summary.big_lambda)
            - summary.lambda_1
    } else {
        F::zero()
    };
    let lambda_threshold = d.powf(rf(1.5)) * n / rf(16.0);
    let lambda_small_regime = summary.big_lambda <= lambda_threshold;

    let (branch, best_bound) = if !hypotheses_met {
        (LambdaBranch::HypothesesUnmet, F::zero())
    } else if summary.tail_square_sum <= d * n / rf(4.0) {
        (LambdaBranch::SquareDominant, square_route_value)
    } else if rf::<F>(2.0) * summary.big_lambda <= summary.tail_cube_sum {
        // Positive cubes dominate: the cube certificate value itself is the
        // explicit bound, at least Lambda_3 / (2 Delta).
        (LambdaBranch::CubeDominant, summary.positive_cube_sum / delta)
    } else {
        (LambdaBranch::ProjectorRoute, summary.positive_sum)
    };

    LambdaCaseReport {
        branch,
        hypotheses_met,
        big_lambda: summary.big_lambda,
        tail_square_sum: summary.tail_square_sum,
        tail_cube_sum: summary.tail_cube_sum,
        lambda_threshold,
        lambda_small_regime,
        square_route_value,
        cube_route_value,
        projector_route_value,
        best_bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum DenseCase {
    /// Correction term negligible; disc(X) itself carries the bound.
    Case1,
    /// Correction term large, which forces the cube route to be large.
    Case2,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenseCertDiagnostics<F> {
    /// Spectral threshold t = sqrt(d).
    pub t: F,
    /// ||v_1 - <v_1, e> e||_2 and its in-regime ceiling sqrt(2n)/d^{7/8}.
    pub w_norm: F,
    pub w_norm_bound: F,
    /// ||Y o A||_F^2 and its in-regime ceiling 2 Lambda / Delta.
    pub ya_frob_sq: F,
    pub ya_frob_sq_bound: F,
    pub e_max_diag: F,
    pub y_max_diag: F,
    pub disc_e0: F,
    pub disc_e1: F,
    pub disc_zy: F,
    /// disc(Z o Y) recomputed through the trace identity
    /// -(d/n) tr(Y) - (1/t)(1 - d/n) <Y, A>.
    pub disc_zy_identity: F,
    pub inner_ya: F,
    pub inner_ya_expected: F,
    pub case_taken: DenseCase,
    /// Whether Lambda >= d^{7/4} n, the regime the construction targets.
    pub in_regime: bool,
    /// Number of eigenvalues at or above t (corrected by E).
    pub corrected_count: usize,
}

/// Builds the dense-regime certificate X = (Z + E) o Y with
/// Y = (1/Delta)(A^2 - lambda_1^2 v_1 v_1^T), Z = I - A/t, t = sqrt(d),
/// E = sum_{lambda_i >= t} (lambda_i / t) v_i v_i^T.
///
/// X is PSD by the Schur product theorem; a PSD-check failure beyond
/// tolerance therefore signals an implementation bug and is an error, not
/// a diagnostic.
pub fn cert_dense<F: Real>(
    g: &Graph,
    spectrum: &Spectrum<F>,
    epsilon: f64,
) -> Result<(Certificate<F>, DenseCertDiagnostics<F>), CertError> {
    let n = g.n();
    if n > PSD_DENSE_LIMIT {
        return Err(CertError::Precondition(format!(
            "dense certificate builds explicit matrices; n = {n} exceeds {PSD_DENSE_LIMIT}"
        )));
    }
    if !(0.0..0.5).contains(&epsilon) || epsilon <= 0.0 {
        return Err(CertError::Precondition("dense certificate requires epsilon in (0, 1/2)".into()));
    }
    let d = g.avg_degree();
    if d < 1.0 {
        return Err(CertError::Precondition("dense certificate requires average degree >= 1".into()));
    }
    let delta = g.max_degree();
    if (delta as f64) > (1.0 + epsilon / 2.0) * d {
        return Err(CertError::Precondition(format!(
            "max degree {delta} exceeds (1 + eps/2) d = {:.3}",
            (1.0 + epsilon / 2.0) * d
        )));
    }
    if d > (0.5 - epsilon) * n as f64 {
        return Err(CertError::Precondition(format!(
            "average degree {d:.3} exceeds (1/2 - eps) n = {:.3}",
            (0.5 - epsilon) * n as f64
        )));
    }

    let summary = spectral_summary(spectrum, g);
    let t = rf::<F>(d.sqrt());
    let inv_delta = F::one() / ri::<F>(delta);
    let lambda_1 = spectrum.eigenvalues[0];
    let v1 = spectrum.eigenvector(0);

    // Y = (1/Delta) (A^2 - lambda_1^2 v_1 v_1^T)
    let mut y = adjacency_square::<F>(g);
    for i in 0..n {
        for j in 0..n {
            let val = inv_delta * (y.get(i, j) - lambda_1 * lambda_1 * v1[i] * v1[j]);
            y.set(i, j, val);
        }
    }

    // Z = I - A / t
    let a = adjacency_matrix::<F>(g);
    let mut z = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let base = if i == j { F::one() } else { F::zero() };
            z.set(i, j, base - a.get(i, j) / t);
        }
    }

    // E = sum over eigenvalues >= t; E0 is the top term, E1 the rest.
    let mut e = Matrix::zeros(n, n);
    let mut e1 = Matrix::zeros(n, n);
    let mut corrected_count = 0;
    for i in 0..n {
        let l = spectrum.eigenvalues[i];
        if l >= t {
            corrected_count += 1;
            let col = spectrum.eigenvector(i);
            e.add_outer(l / t, &col);
            if i > 0 {
                e1.add_outer(l / t, &col);
            }
        } else {
            break; // eigenvalues sorted descending
        }
    }
    let e0_scale = if lambda_1 >= t { lambda_1 / t } else { F::zero() };
    let mut e0 = Matrix::zeros(n, n);
    if e0_scale > F::zero() {
        e0.add_outer(e0_scale, &v1);
    }

    let x = z.add(&e).hadamard(&y);
    let cert = certificate_from_explicit(g, CertTag::DenseXZ, x)?;

    // Diagnostics.
    let inv_sqrt_n = F::one() / ri::<F>(n).sqrt();
    let overlap = spectrum.eigenvector_mean_overlap[0];
    let w_norm = {
        let mut acc = F::zero();
        for &vi in &v1 {
            let w = vi - overlap * inv_sqrt_n;
            acc += w * w;
        }
        acc.sqrt()
    };
    let w_norm_bound = rf::<F>((2.0 * n as f64).sqrt() / d.powf(7.0 / 8.0));

    let ya = y.hadamard(&a);
    let ya_frob = ya.frobenius_norm();
    let ya_frob_sq = ya_frob * ya_frob;
    let ya_frob_sq_bound = rf::<F>(2.0) * summary.big_lambda * inv_delta;
    let inner_ya = y.inner(&a);
    let inner_ya_expected = -summary.big_lambda * inv_delta;

    let disc_e0 = disc_matrix_explicit(g, &e0.hadamard(&y))?;
    let disc_e1 = disc_matrix_explicit(g, &e1.hadamard(&y))?;
    let disc_zy = disc_matrix_explicit(g, &z.hadamard(&y))?;
    let d_over_n = rf::<F>(d) / ri(n);
    let disc_zy_identity = -d_over_n * y.trace() - (F::one() - d_over_n) / t * inner_ya;

    let in_regime = summary.big_lambda.to_f64().unwrap_or(0.0) >= d.powf(1.75) * n as f64;
    let case_threshold = rf::<F>(epsilon) * summary.big_lambda / (rf::<F>(16.0) * rf::<F>(d.powf(1.5)));
    let case_taken = if disc_e1.abs() <= case_threshold { DenseCase::Case1 } else { DenseCase::Case2 };

    let diagnostics = DenseCertDiagnostics {
        t,
        w_norm,
        w_norm_bound,
        ya_frob_sq,
        ya_frob_sq_bound,
        e_max_diag: e.max_diag(),
        y_max_diag: y.max_diag(),
        disc_e0,
        disc_e1,
        disc_zy,
        disc_zy_identity,
        inner_ya,
        inner_ya_expected,
        case_taken,
        in_regime,
        corrected_count,
    };
    Ok((cert, diagnostics))
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SandwichReport<F> {
    /// Spectral shift t = lambda_2.
    pub t: F,
    pub disc_value: F,
    /// Exact identity -(d/n) tr(Y) - ((n - 2d + t)/(n t)) <Y, A>;
    /// tr(Y) = n - d for the regular construction.
    pub disc_identity: F,
    pub relative_error: F,
    pub inner_ya: F,
    /// -Lambda / d.
    pub inner_ya_expected: F,
    /// Proof floor eps * Lambda / (8 d lambda_2).
    pub proof_floor: F,
}

/// Sandwich certificate X = Y o Z with t = lambda_2,
/// Z = I - A/t + ((d - t)/(t n)) J and Y = (1/d)(A^2 - (d^2/n) J),
/// for regular graphs with lambda_2 > 0.
pub fn cert_sandwich<F: Real>(
    g: &Graph,
    spectrum: &Spectrum<F>,
    epsilon: f64,
) -> Result<(Certificate<F>, SandwichReport<F>), CertError> {
    if !g.is_regular() {
        return Err(CertError::Precondition("sandwich certificate requires a regular graph".into()));
    }
    let n = g.n();
    if n > PSD_DENSE_LIMIT {
        return Err(CertError::Precondition(format!(
            "sandwich certificate builds explicit matrices; n = {n} exceeds {PSD_DENSE_LIMIT}"
        )));
    }
    let summary = spectral_summary(spectrum, g);
    let t = summary.lambda_2;
    if t <= rf(1e-12) {
        return Err(CertError::Precondition("sandwich certificate requires lambda_2 > 0".into()));
    }
    let d = g.avg_degree();
    if d > (0.5 - epsilon) * n as f64 {
        return Err(CertError::Precondition(format!(
            "average degree {d:.3} exceeds (1/2 - eps) n = {:.3}",
            (0.5 - epsilon) * n as f64
        )));
    }

    let df = rf::<F>(d);
    let nf = ri::<F>(n);
    let a = adjacency_matrix::<F>(g);
    let shift = (df - t) / (t * nf);
    let mut z = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let base = if i == j { F::one() } else { F::zero() };
            z.set(i, j, base - a.get(i, j) / t + shift);
        }
    }
    let mut y = adjacency_square::<F>(g);
    let d2_over_n = df * df / nf;
    for i in 0..n {
        for j in 0..n {
            y.set(i, j, (y.get(i, j) - d2_over_n) / df);
        }
    }

    let x = y.hadamard(&z);
    let cert = certificate_from_explicit(g, CertTag::SandwichYZ, x)?;

    let inner_ya = y.inner(&a);
    let inner_ya_expected = -summary.big_lambda / df;
    let disc_identity = -df / nf * y.trace() - (nf - rf::<F>(2.0) * df + t) / (nf * t) * inner_ya;
    let scale = cert.disc_value.abs().max(disc_identity.abs()).max(F::one());
    let relative_error = (cert.disc_value - disc_identity).abs() / scale;
    if relative_error > rf(ROUTE_TOL) {
        return Err(CertError::RouteDisagreement {
            route_a: cert.disc_value.to_f64().unwrap_or(f64::NAN),
            route_b: disc_identity.to_f64().unwrap_or(f64::NAN),
            relative: relative_error.to_f64().unwrap_or(f64::NAN),
        });
    }
    let proof_floor = rf::<F>(epsilon) * summary.big_lambda / (rf::<F>(8.0) * df * t);
    let report = SandwichReport {
        t,
        disc_value: cert.disc_value,
        disc_identity,
        relative_error,
        inner_ya,
        inner_ya_expected,
        proof_floor,
    };
    Ok((cert, report))
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UpperBounds<F> {
    /// pdisc(G) <= lambda_2 n (regular, lambda_2 >= 0).
    pub lambda2_n: F,
    /// disc+(G) <= (lambda_2 / 2) n + d (regular).
    pub half_lambda2_n_plus_d: F,
    pub regular: bool,
    /// The bounds only apply to regular graphs with lambda_2 >= 0
    /// (complete graphs have lambda_2 < 0 and pdisc = 0 > lambda_2 n).
    pub applicable: bool,
}

pub fn upper_bounds<F: Real>(g: &Graph, spectrum: &Spectrum<F>) -> UpperBounds<F> {
    let lambda_2 = spectrum.eigenvalues.get(1).copied().unwrap_or(F::zero());
    let n = ri::<F>(g.n());
    let regular = g.is_regular();
    UpperBounds {
        lambda2_n: lambda_2 * n,
        half_lambda2_n_plus_d: lambda_2 / rf(2.0) * n + rf(g.avg_degree()),
        regular,
        applicable: regular && lambda_2 >= -rf::<F>(1e-9) * spectrum.eigenvalues[0].abs().max(F::one()),
    }
}
