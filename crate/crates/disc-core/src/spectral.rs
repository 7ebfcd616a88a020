//! Full eigendecomposition of the adjacency matrix and every spectral
//! statistic derived from it: the lambda summary, the cubic-tail quantity
//! Lambda, graph energy, triangle counts, and strongly-regular parameter
//! families.

use std::io::Write;

use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{adjacency_matrix, jacobi_eigen, sort_eigenpairs, JacobiConfig, LinalgError, Matrix};
use crate::real::{rf, ri, Real};

/// Vertex-count guard for dense eigendecomposition.
pub const EIGEN_GUARD: usize = 4000;

/// Relative threshold under which an eigenvalue counts as zero rather than
/// positive; exact zeros from bipartite blow-ups must not inflate K.
pub const POSITIVE_EIGENVALUE_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("eigendecomposition guard: n = {n} exceeds {limit}")]
    Guard { n: usize, limit: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("spectrum invariant violated: {0}")]
    InvariantViolation(String),
    #[error("operation requires a regular graph")]
    NotRegular,
    #[error("requires d <= n/2 (got d = {d}, n = {n})")]
    TooDense { d: usize, n: usize },
    #[error("invalid strongly-regular parameters: {0}")]
    InvalidSrgParameters(String),
    #[error("negative discriminant in strongly-regular eigenvalue formula")]
    NegativeDiscriminant,
}

/// Full eigendecomposition of the adjacency matrix: eigenvalues in
/// descending order, orthonormal eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct Spectrum<F> {
    pub eigenvalues: Vec<F>,
    pub eigenvectors: Matrix<F>,
    /// ||A V - V diag||_F / ||A||_F (0 for edgeless graphs).
    pub residual: F,
    /// Cached <v_i, e> against the unit all-ones vector e = 1/sqrt(n).
    pub eigenvector_mean_overlap: Vec<F>,
}

impl<F: Real> Spectrum<F> {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda(&self, i: usize) -> F {
        self.eigenvalues[i]
    }

    pub fn eigenvector(&self, i: usize) -> Vec<F> {
        self.eigenvectors.column(i)
    }

    /// K: number of eigenvalues counted as strictly positive
    /// (lambda > 1e-9 * max(lambda_1, 0)).
    pub fn positive_count(&self) -> usize {
        let lambda1 = self.eigenvalues.first().copied().unwrap_or(F::zero());
        let threshold = rf::<F>(POSITIVE_EIGENVALUE_THRESHOLD) * lambda1.max(F::zero());
        self.eigenvalues.iter().filter(|&&l| l > threshold).count()
    }

    /// Checks orthonormality, reconstruction residual and the trace
    /// identities sum(lambda) = 0, sum(lambda^2) = 2m.
    pub fn validate(&self, g: &Graph) -> Result<(), SpectralError> {
        let n = self.n();
        let fail = |msg: String| Err(SpectralError::InvariantViolation(msg));
        // Orthonormality: ||V^T V - I||_max <= 1e-8.
        let mut max_dev = F::zero();
        for i in 0..n {
            let ci = self.eigenvectors.column(i);
            for j in i..n {
                let dot: F = ci.iter().zip(self.eigenvectors.column(j).iter()).map(|(&a, &b)| a * b).sum();
                let target = if i == j { F::one() } else { F::zero() };
                max_dev = max_dev.max((dot - target).abs());
            }
        }
        if max_dev > rf(1e-8) {
            return fail(format!("orthonormality deviation {max_dev}"));
        }
        if self.residual > rf(1e-8) {
            return fail(format!("reconstruction residual {}", self.residual));
        }
        let trace: F = self.eigenvalues.iter().copied().sum();
        if trace.abs() > rf::<F>(1e-6) * ri(n) {
            return fail(format!("eigenvalue sum {trace} not ~ 0"));
        }
        let square_sum: F = self.eigenvalues.iter().map(|&l| l * l).sum();
        let two_m = rf::<F>(2.0 * g.m() as f64);
        if (square_sum - two_m).abs() > rf::<F>(1e-8) * two_m.max(F::one()) {
            return fail(format!("eigenvalue square sum {square_sum} != 2m = {two_m}"));
        }
        Ok(())
    }
}

/// Eigendecomposes the adjacency matrix with the pinned Jacobi settings and
/// validates the spectrum invariants.
pub fn eigendecompose<F: Real>(g: &Graph) -> Result<Spectrum<F>, SpectralError> {
    if g.n() > EIGEN_GUARD {
        return Err(SpectralError::Guard { n: g.n(), limit: EIGEN_GUARD });
    }
    let a = adjacency_matrix::<F>(g);
    let (vals, vecs) = jacobi_eigen(a, &JacobiConfig::default())?;
    let (eigenvalues, eigenvectors) = sort_eigenpairs(vals, vecs);

    let n = g.n();
    let a = adjacency_matrix::<F>(g);
    let a_norm = a.frobenius_norm();
    let mut residual_sq = F::zero();
    for j in 0..n {
        let col = eigenvectors.column(j);
        let av = a.matvec(&col);
        let lambda = eigenvalues[j];
        for i in 0..n {
            let d = av[i] - lambda * col[i];
            residual_sq += d * d;
        }
    }
    let residual = if a_norm > F::zero() { residual_sq.sqrt() / a_norm } else { F::zero() };

    let inv_sqrt_n = F::one() / ri::<F>(n).sqrt();
    let eigenvector_mean_overlap: Vec<F> = (0..n)
        .map(|j| (0..n).map(|i| eigenvectors.get(i, j) * inv_sqrt_n).sum())
        .collect();

    let spectrum = Spectrum { eigenvalues, eigenvectors, residual, eigenvector_mean_overlap };
    spectrum.validate(g)?;
    Ok(spectrum)
}

/// All the scalar statistics the certificate constructions consume.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectralSummary<F> {
    pub lambda_1: F,
    pub lambda_2: F,
    pub lambda_n: F,
    /// K: largest index (1-based) with lambda_K > 0.
    pub positive_count: usize,
    /// Lambda = -sum_{i >= 2} lambda_i^3.
    pub big_lambda: F,
    /// Lambda_1 = sum_{i > K} |lambda_i|.
    pub tail_abs_sum: F,
    /// Lambda_2 = sum_{i > K} lambda_i^2.
    pub tail_square_sum: F,
    /// Lambda_3 = sum_{i > K} |lambda_i|^3.
    pub tail_cube_sum: F,
    /// Graph energy sum |lambda_i|.
    pub energy: F,
    /// sum_{i = 2..K} lambda_i.
    pub positive_sum: F,
    /// sum_{i = 2..K} lambda_i^2.
    pub positive_square_sum: F,
    /// sum_{i = 2..K} lambda_i^3.
    pub positive_cube_sum: F,
}

/// Derives the spectral summary; `g` supplies max degree for the
/// Lambda <= Delta^3 sanity bound.
pub fn spectral_summary<F: Real>(spectrum: &Spectrum<F>, g: &Graph) -> SpectralSummary<F> {
    let n = spectrum.n();
    let k = spectrum.positive_count();
    let lambda = &spectrum.eigenvalues;
    let lambda_1 = lambda.first().copied().unwrap_or(F::zero());

    let mut big_lambda = F::zero();
    let mut energy = lambda_1.abs();
    for &l in &lambda[1..] {
        big_lambda -= l * l * l;
        energy += l.abs();
    }
    let tail = &lambda[k.min(n)..];
    let tail_abs_sum = tail.iter().map(|&l| l.abs()).sum();
    let tail_square_sum = tail.iter().map(|&l| l * l).sum();
    let tail_cube_sum = tail.iter().map(|&l| l.abs().powi(3)).sum();
    let positives = &lambda[1.min(n)..k.min(n)];
    let positive_sum = positives.iter().copied().sum();
    let positive_square_sum = positives.iter().map(|&l| l * l).sum();
    let positive_cube_sum = positives.iter().map(|&l| l * l * l).sum();

    let summary = SpectralSummary {
        lambda_1,
        lambda_2: lambda.get(1).copied().unwrap_or(F::zero()),
        lambda_n: lambda.last().copied().unwrap_or(F::zero()),
        positive_count: k,
        big_lambda,
        tail_abs_sum,
        tail_square_sum,
        tail_cube_sum,
        energy,
        positive_sum,
        positive_square_sum,
        positive_cube_sum,
    };
    // Lambda <= Delta^3 and d <= lambda_1 <= Delta always hold; a failure
    // here means the eigensolver broke, not the graph.
    let delta = ri::<F>(g.max_degree());
    let slack = rf::<F>(1e-6) * (F::one() + delta * delta * delta);
    debug_assert!(summary.big_lambda <= delta * delta * delta + slack);
    debug_assert!(lambda_1 >= rf::<F>(g.avg_degree()) - slack && lambda_1 <= delta + slack);
    summary
}

/// Number of homomorphic triangle copies: 6 times the triangle count,
/// counted combinatorially via row intersections (equals trace(A^3)).
pub fn triangle_hom_count(g: &Graph) -> u64 {
    let mut per_edge_sum = 0u64;
    for (u, v) in g.edges() {
        per_edge_sum += g.common_neighbors(u, v) as u64;
    }
    // Each triangle contributes 1 to three edges; hom count is 6 per triangle.
    2 * per_edge_sum
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaTriangleReport<F> {
    pub big_lambda_spectral: F,
    pub d_cubed_minus_t: F,
    pub relative_difference: F,
    pub passed: bool,
}

/// Checks Lambda = d^3 - T on a regular graph, T the homomorphic triangle
/// count: the spectral and combinatorial routes must agree to 1e-6.
pub fn check_lambda_triangle_identity<F: Real>(g: &Graph) -> Result<LambdaTriangleReport<F>, SpectralError> {
    if !g.is_regular() {
        return Err(SpectralError::NotRegular);
    }
    let spectrum = eigendecompose::<F>(g)?;
    let summary = spectral_summary(&spectrum, g);
    let d = rf::<F>(g.avg_degree());
    let combinatorial = d * d * d - rf::<F>(triangle_hom_count(g) as f64);
    let scale = summary.big_lambda.abs().max(combinatorial.abs()).max(F::one());
    let relative_difference = (summary.big_lambda - combinatorial).abs() / scale;
    Ok(LambdaTriangleReport {
        big_lambda_spectral: summary.big_lambda,
        d_cubed_minus_t: combinatorial,
        relative_difference,
        passed: relative_difference <= rf(1e-6),
    })
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductBoundReport<F> {
    pub lhs: F,
    pub rhs: F,
    pub passed: bool,
}

/// Checks (1 + lambda_2) * |lambda_n| >= d / 4 for a d-regular graph with
/// d <= n/2.
pub fn check_product_bound<F: Real>(g: &Graph) -> Result<ProductBoundReport<F>, SpectralError> {
    if !g.is_regular() {
        return Err(SpectralError::NotRegular);
    }
    let d = g.max_degree();
    if 2 * d > g.n() {
        return Err(SpectralError::TooDense { d, n: g.n() });
    }
    let spectrum = eigendecompose::<F>(g)?;
    let lambda_2 = spectrum.eigenvalues.get(1).copied().unwrap_or(F::zero());
    let lambda_n = spectrum.eigenvalues.last().copied().unwrap_or(F::zero());
    let lhs = (F::one() + lambda_2) * lambda_n.abs();
    let rhs = ri::<F>(d) / rf(4.0);
    Ok(ProductBoundReport { lhs, rhs, passed: lhs >= rhs - rf(1e-9) })
}

/// Strongly-regular parameter set (n, d, r, s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SrgParams {
    pub n: i64,
    pub d: i64,
    pub r: i64,
    pub s: i64,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SrgSpectrum {
    pub lambda_2: f64,
    pub lambda_n: f64,
    /// Eigenvalue multiplicities from the standard formula; non-integral or
    /// non-positive values flag an infeasible or degenerate parameter set.
    pub multiplicity_2: f64,
    pub multiplicity_n: f64,
    /// d(d - r - 1) = (n - d - 1)s feasibility identity.
    pub edge_feasible: bool,
    pub degenerate: bool,
}

/// Second and last eigenvalue of a strongly-regular graph:
/// (1/2)(r - s +- sqrt((r - s)^2 + 4(d - s))).
pub fn srg_lambda2(params: &SrgParams) -> Result<SrgSpectrum, SpectralError> {
    let SrgParams { n, d, r, s } = *params;
    let disc = (r - s) * (r - s) + 4 * (d - s);
    if disc < 0 {
        return Err(SpectralError::NegativeDiscriminant);
    }
    let root = (disc as f64).sqrt();
    let lambda_2 = 0.5 * ((r - s) as f64 + root);
    let lambda_n = 0.5 * ((r - s) as f64 - root);
    let edge_feasible = d * (d - r - 1) == (n - d - 1) * s;
    let (multiplicity_2, multiplicity_n, degenerate) = if root == 0.0 {
        (f64::NAN, f64::NAN, true)
    } else {
        let m2 = 0.5 * ((n - 1) as f64 - (2 * d + (n - 1) * (r - s)) as f64 / root);
        let mn = 0.5 * ((n - 1) as f64 + (2 * d + (n - 1) * (r - s)) as f64 / root);
        let is_integral = |x: f64| (x - x.round()).abs() <= 1e-6;
        let degenerate = !is_integral(m2) || !is_integral(mn) || m2.round() < 1.0 || mn.round() < 1.0;
        (m2, mn, degenerate)
    };
    Ok(SrgSpectrum { lambda_2, lambda_n, multiplicity_2, multiplicity_n, edge_feasible, degenerate })
}

/// Parameters of the elliptic-quadric family Q(q):
/// n = q^2(q^2-1)/2, d = (q-1)(q^2+1), r = (q-1)(q+2), s = 2q(q-1).
pub fn metz_params(q: i64) -> Result<SrgParams, SpectralError> {
    if q < 2 {
        return Err(SpectralError::InvalidSrgParameters("metz: q >= 2 required".into()));
    }
    Ok(SrgParams {
        n: q * q * (q * q - 1) / 2,
        d: (q - 1) * (q * q + 1),
        r: (q - 1) * (q + 2),
        s: 2 * q * (q - 1),
    })
}

/// Parameters of the partial-difference-set family D(p, m) for odd prime p
/// and m >= 2; second eigenvalue p^m - p^{m-1}.
pub fn dhjp_params(p: i64, m: u32) -> Result<SrgParams, SpectralError> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(SpectralError::InvalidSrgParameters(format!("dhjp: p = {p} must be an odd prime")));
    }
    if m < 2 {
        return Err(SpectralError::InvalidSrgParameters("dhjp: m >= 2 required".into()));
    }
    let pm = p.checked_pow(m).ok_or_else(|| SpectralError::InvalidSrgParameters("dhjp: overflow".into()))?;
    let pm1 = p.pow(m - 1);
    let p2m1 = pm
        .checked_mul(pm1)
        .ok_or_else(|| SpectralError::InvalidSrgParameters("dhjp: overflow".into()))?;
    let core = p2m1 - pm + pm1;
    let n = pm
        .checked_mul(pm)
        .and_then(|x| x.checked_mul(pm))
        .ok_or_else(|| SpectralError::InvalidSrgParameters("dhjp: overflow".into()))?;
    Ok(SrgParams {
        n,
        d: core * (pm - 1),
        r: pm - pm1 + core * (pm1 - 2),
        s: core * (pm1 - 1),
    })
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Eigenvalue CSV: `index,eigenvalue` with 12 significant digits.
pub fn eigenvalues_csv<F: Real>(spectrum: &Spectrum<F>) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, l) in spectrum.eigenvalues.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i, crate::format_sig(l.to_f64().unwrap_or(f64::NAN))));
    }
    out
}

pub const BINARY_DUMP_MAGIC: &[u8; 8] = b"DLABSPEC";

/// Binary matrix dump: 16-byte header (magic "DLABSPEC" + u64 row count,
/// little-endian) followed by the matrix row-major as f64 little-endian.
/// Column count is implied by the payload size.
pub fn write_matrix_binary<F: Real, W: Write>(matrix: &Matrix<F>, out: &mut W) -> std::io::Result<()> {
    out.write_all(BINARY_DUMP_MAGIC)?;
    out.write_all(&(matrix.rows() as u64).to_le_bytes())?;
    for i in 0..matrix.rows() {
        for &x in matrix.row(i) {
            out.write_all(&x.to_f64().unwrap_or(f64::NAN).to_le_bytes())?;
        }
    }
    Ok(())
}
