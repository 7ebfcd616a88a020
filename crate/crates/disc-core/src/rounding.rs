//! Randomized hyperplane rounding and the sampling conversions between
//! subsets, sign vectors and bisections.
//!
//! The sparse vector assignment gives vertex v the vector
//! x_v = e_v + z * 1_{N(v)} with z = delta/sqrt(d) (or delta*n/d^2 in the
//! dense regime); rounding a random hyperplane against the normalized
//! vectors extracts a subset whose expected discrepancy is computable in
//! closed form from the pairwise angles. Extracted sets are always
//! evaluated exactly through the rational oracle.

use thiserror::Error;

use crate::exact::{disc_pair, disc_set, CutKind, CutResult, OracleError};
use crate::graph::{Graph, VertexSet};
use crate::linalg::Matrix;
use crate::real::{rf, ri, Real};
use crate::rng::SeededRng;
use crate::Rational;

/// Guard for the all-pairs expectation computation.
pub const EXPECTED_DISC_GUARD: usize = 3000;

/// Default sparse-assignment weight parameter.
pub const DEFAULT_DELTA: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum RoundError {
    #[error("operation requires a regular graph")]
    NotRegular,
    #[error("trials must be >= 1")]
    NoTrials,
    #[error("all-pairs guard: n = {n} exceeds {limit}")]
    Guard { n: usize, limit: usize },
    #[error("entries must be +1 or -1 (index {index})")]
    BadSign { index: usize },
    #[error("subset size {size} exceeds floor(n/2) = {half}; pass the smaller side")]
    SubsetTooLarge { size: usize, half: usize },
    #[error("bisection conversion requires disc(U) > 0 (got {0})")]
    NonPositiveDisc(String),
    #[error("pairwise inner product {inner} at ({u}, {v}) exceeds the 0.5 regime bound")]
    RegimeViolation { u: usize, v: usize, inner: f64 },
    #[error("ensemble built for {ensemble_n} vertices, graph has {graph_n}")]
    UniverseMismatch { ensemble_n: usize, graph_n: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VectorSource {
    SparseAssignment,
    SdpFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SparseRegime {
    /// z = delta / sqrt(d), for d <= n^(2/3).
    DeltaOverSqrtD,
    /// z = delta * n / d^2, for d > n^(2/3).
    DeltaNOverD2,
}

enum Store<F> {
    /// Implicit x_v = e_v + z * 1_{N(v)}; only the row norms are kept.
    Sparse { norms: Vec<F> },
    /// Explicit unit rows (from an SDP factor).
    Dense { rows: Matrix<F> },
}

pub struct RoundingEnsemble<F> {
    pub source: VectorSource,
    pub delta: F,
    pub z: F,
    pub regime: Option<SparseRegime>,
    n: usize,
    store: Store<F>,
}

impl<F: Real> RoundingEnsemble<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the assigned vectors: n for the sparse assignment, the
    /// factor rank for SDP rows.
    pub fn dim(&self) -> usize {
        match &self.store {
            Store::Sparse { .. } => self.n,
            Store::Dense { rows } => rows.cols(),
        }
    }

    /// Norm of every stored vector; sparse rows are y_v = x_v / ||x_v||, so
    /// this is 1 by construction up to floating error.
    pub fn row_norm(&self, v: usize) -> F {
        match &self.store {
            Store::Sparse { .. } => F::one(),
            Store::Dense { rows } => rows.row(v).iter().map(|&x| x * x).sum::<F>().sqrt(),
        }
    }

    fn check_graph(&self, g: &Graph) -> Result<(), RoundError> {
        if g.n() != self.n {
            return Err(RoundError::UniverseMismatch { ensemble_n: self.n, graph_n: g.n() });
        }
        Ok(())
    }

    /// <y_u, y_v> for u != v.
    pub fn inner(&self, g: &Graph, u: usize, v: usize) -> F {
        match &self.store {
            Store::Sparse { norms } => {
                let adjacent = if g.has_edge(u, v) { F::one() } else { F::zero() };
                let common = ri::<F>(g.common_neighbors(u, v));
                (rf::<F>(2.0) * self.z * adjacent + self.z * self.z * common) / (norms[u] * norms[v])
            }
            Store::Dense { rows } => {
                rows.row(u).iter().zip(rows.row(v)).map(|(&a, &b)| a * b).sum()
            }
        }
    }

    /// Signed projections <y_v, w> for all v.
    fn scores(&self, g: &Graph, w: &[F]) -> Vec<F> {
        match &self.store {
            Store::Sparse { norms } => (0..self.n)
                .map(|v| {
                    let neighbor_sum: F = g.neighbors(v).map(|u| w[u]).sum();
                    (w[v] + self.z * neighbor_sum) / norms[v]
                })
                .collect(),
            Store::Dense { rows } => (0..self.n)
                .map(|v| rows.row(v).iter().zip(w).map(|(&a, &b)| a * b).sum())
                .collect(),
        }
    }
}

/// Builds the sparse vector assignment for `g`. The regime split d <= n^(2/3)
/// is decided exactly on integers (8 m^3 <= n^5).
pub fn build_sparse_vectors<F: Real>(g: &Graph, delta: F) -> RoundingEnsemble<F> {
    let n = g.n();
    let d = rf::<F>(g.avg_degree());
    let sparse_regime = {
        let m = g.m() as i128;
        let n = n as i128;
        8 * m * m * m <= n * n * n * n * n
    };
    let (z, regime) = if g.m() == 0 {
        (F::zero(), SparseRegime::DeltaOverSqrtD)
    } else if sparse_regime {
        (delta / d.sqrt(), SparseRegime::DeltaOverSqrtD)
    } else {
        (delta * ri::<F>(n) / (d * d), SparseRegime::DeltaNOverD2)
    };
    let norms: Vec<F> = (0..n)
        .map(|v| (F::one() + z * z * ri::<F>(g.degree(v))).sqrt())
        .collect();
    RoundingEnsemble {
        source: VectorSource::SparseAssignment,
        delta,
        z,
        regime: Some(regime),
        n,
        store: Store::Sparse { norms },
    }
}

/// Wraps SDP factor rows as a rounding ensemble, normalizing each row;
/// rows of negligible norm become the first standard basis vector.
pub fn from_factor_rows<F: Real>(rows: &Matrix<F>) -> RoundingEnsemble<F> {
    let n = rows.rows();
    let k = rows.cols();
    let mut unit = Matrix::zeros(n, k);
    for i in 0..n {
        let norm = rows.row(i).iter().map(|&x| x * x).sum::<F>().sqrt();
        if norm > rf(1e-12) {
            for j in 0..k {
                unit.set(i, j, rows.get(i, j) / norm);
            }
        } else {
            unit.set(i, 0, F::one());
        }
    }
    RoundingEnsemble {
        source: VectorSource::SdpFactor,
        delta: F::zero(),
        z: F::zero(),
        regime: None,
        n,
        store: Store::Dense { rows: unit },
    }
}

/// One rounding trial: vertices whose vector lies on the nonnegative side
/// of the hyperplane normal to `w` (ties included, for determinism).
fn round_once<F: Real>(ens: &RoundingEnsemble<F>, g: &Graph, rng: &mut SeededRng) -> VertexSet {
    let w: Vec<F> = rng.unit_vector(ens.dim());
    let scores = ens.scores(g, &w);
    let mut subset = VertexSet::empty(ens.n);
    for (v, &s) in scores.iter().enumerate() {
        if s >= F::zero() {
            subset.insert(v);
        }
    }
    subset
}

/// Hyperplane rounding: `trials` independent hyperplanes, each subset
/// evaluated exactly; returns the best disc(U) with its trial index.
/// Deterministic for fixed (ensemble, graph, trials, seed).
pub fn hyperplane_round<F: Real>(
    ens: &RoundingEnsemble<F>,
    g: &Graph,
    trials: usize,
    seed: u64,
) -> Result<CutResult, RoundError> {
    let (best, _) = hyperplane_round_trace(ens, g, trials, seed)?;
    Ok(best)
}

/// As [`hyperplane_round`], also returning the per-trial values.
pub fn hyperplane_round_trace<F: Real>(
    ens: &RoundingEnsemble<F>,
    g: &Graph,
    trials: usize,
    seed: u64,
) -> Result<(CutResult, Vec<Rational>), RoundError> {
    ens.check_graph(g)?;
    if trials == 0 {
        return Err(RoundError::NoTrials);
    }
    let mut best: Option<(Rational, VertexSet, u64)> = None;
    let mut trace = Vec::with_capacity(trials);
    for trial in 0..trials as u64 {
        let mut rng = SeededRng::for_trial(seed, trial);
        let subset = round_once(ens, g, &mut rng);
        let value = disc_set(g, &subset)?;
        trace.push(value);
        if best.as_ref().map(|(b, _, _)| value > *b).unwrap_or(true) {
            best = Some((value, subset, trial));
        }
    }
    let (value, subset, trial) = best.expect("trials >= 1");
    Ok((
        CutResult {
            kind: CutKind::Witness,
            subset,
            value,
            method: "hyperplane_round".into(),
            seed: Some(seed),
            trial: Some(trial),
        },
        trace,
    ))
}

/// Analytic expectation of disc(U) for one rounding trial:
/// E = (1/(4 pi)) [ sum_{u~v} beta_uv - (d/(n-1)) sum_{u!=v} beta_uv ]
/// over ordered pairs, where beta = arcsin <y_u, y_v>.
pub fn expected_disc<F: Real>(ens: &RoundingEnsemble<F>, g: &Graph) -> Result<F, RoundError> {
    ens.check_graph(g)?;
    let n = ens.n;
    if n > EXPECTED_DISC_GUARD {
        return Err(RoundError::Guard { n, limit: EXPECTED_DISC_GUARD });
    }
    if n < 2 {
        return Ok(F::zero());
    }
    let mut edge_sum = F::zero();
    let mut all_sum = F::zero();
    for u in 0..n {
        for v in (u + 1)..n {
            let inner = ens.inner(g, u, v).max(-F::one()).min(F::one());
            let beta = inner.asin();
            all_sum += beta;
            if g.has_edge(u, v) {
                edge_sum += beta;
            }
        }
    }
    let d = rf::<F>(g.avg_degree());
    let scale = F::one() / (rf::<F>(4.0) * F::PI());
    // Unordered sums doubled to ordered.
    Ok(scale * (rf::<F>(2.0) * edge_sum - d / ri::<F>(n - 1) * rf::<F>(2.0) * all_sum))
}

/// Probability that both endpoints land in U: (pi - alpha) / (2 pi).
pub fn pair_inclusion_probability<F: Real>(inner: F) -> F {
    let alpha = inner.max(-F::one()).min(F::one()).acos();
    (F::PI() - alpha) / (rf::<F>(2.0) * F::PI())
}

/// Empirical both-in frequencies for tracked pairs over `trials` roundings.
pub fn empirical_pair_inclusion<F: Real>(
    ens: &RoundingEnsemble<F>,
    g: &Graph,
    pairs: &[(usize, usize)],
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>, RoundError> {
    ens.check_graph(g)?;
    if trials == 0 {
        return Err(RoundError::NoTrials);
    }
    let mut hits = vec![0usize; pairs.len()];
    for trial in 0..trials as u64 {
        let mut rng = SeededRng::for_trial(seed, trial);
        let subset = round_once(ens, g, &mut rng);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if subset.contains(u) && subset.contains(v) {
                hits[i] += 1;
            }
        }
    }
    Ok(hits.into_iter().map(|h| h as f64 / trials as f64).collect())
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArcsinReport {
    pub pairs_checked: usize,
    /// max over pairs of beta - t (>= 0 when the lower bound holds).
    pub min_lower_slack: f64,
    /// min over pairs of t + t^2 - beta (>= 0 when the upper bound holds).
    pub min_upper_slack: f64,
    pub max_inner: f64,
    pub passed: bool,
}

/// Verifies t <= arcsin(t) <= t + t^2 for every realized nonnegative
/// pairwise inner product; inner products above 0.5 violate the regime and
/// are an error.
pub fn arcsin_bounds_check<F: Real>(
    ens: &RoundingEnsemble<F>,
    g: &Graph,
) -> Result<ArcsinReport, RoundError> {
    ens.check_graph(g)?;
    let n = ens.n;
    if n > EXPECTED_DISC_GUARD {
        return Err(RoundError::Guard { n, limit: EXPECTED_DISC_GUARD });
    }
    let mut pairs_checked = 0usize;
    let mut min_lower = f64::INFINITY;
    let mut min_upper = f64::INFINITY;
    let mut max_inner = f64::NEG_INFINITY;
    for u in 0..n {
        for v in (u + 1)..n {
            let t = ens.inner(g, u, v).to_f64().unwrap_or(f64::NAN);
            max_inner = max_inner.max(t);
            if t < 0.0 {
                continue; // vacuous for the claim
            }
            if t > 0.5 + 1e-12 {
                return Err(RoundError::RegimeViolation { u, v, inner: t });
            }
            let beta = t.min(1.0).asin();
            min_lower = min_lower.min(beta - t);
            min_upper = min_upper.min(t + t * t - beta);
            pairs_checked += 1;
        }
    }
    let passed = pairs_checked == 0 || (min_lower >= -1e-12 && min_upper >= -1e-12);
    Ok(ArcsinReport {
        pairs_checked,
        min_lower_slack: if min_lower.is_finite() { min_lower } else { 0.0 },
        min_upper_slack: if min_upper.is_finite() { min_upper } else { 0.0 },
        max_inner,
        passed,
    })
}

/// Converts a sign vector into the better of U = {i : x_i = +1} and its
/// complement; the winner satisfies disc >= disc(x) / 4 whenever
/// disc(x) > 0.
pub fn pm1_to_subset(g: &Graph, signs: &[i8]) -> Result<CutResult, RoundError> {
    if signs.len() != g.n() {
        return Err(OracleError::DimensionMismatch { expected: g.n(), got: signs.len() }.into());
    }
    let mut subset = VertexSet::empty(g.n());
    for (i, &s) in signs.iter().enumerate() {
        match s {
            1 => subset.insert(i),
            -1 => {}
            _ => return Err(RoundError::BadSign { index: i }),
        }
    }
    let complement = subset.complement();
    let disc_u = disc_set(g, &subset)?;
    let disc_uc = disc_set(g, &complement)?;
    let (winner, value) = if disc_uc > disc_u { (complement, disc_uc) } else { (subset, disc_u) };
    Ok(CutResult {
        kind: CutKind::Witness,
        subset: winner,
        value,
        method: "pm1_to_subset".into(),
        seed: None,
        trial: None,
    })
}

/// disc(x) for a sign vector, exactly: disc(U) - disc(U, U^c) + disc(U^c).
pub fn disc_signs_exact(g: &Graph, signs: &[i8]) -> Result<Rational, RoundError> {
    if signs.len() != g.n() {
        return Err(OracleError::DimensionMismatch { expected: g.n(), got: signs.len() }.into());
    }
    let mut subset = VertexSet::empty(g.n());
    for (i, &s) in signs.iter().enumerate() {
        match s {
            1 => subset.insert(i),
            -1 => {}
            _ => return Err(RoundError::BadSign { index: i }),
        }
    }
    let complement = subset.complement();
    Ok(disc_set(g, &subset)? - disc_pair(g, &subset, &complement)? + disc_set(g, &complement)?)
}

/// Pads a positive-discrepancy subset U (|U| <= floor(n/2)) of a regular
/// graph into an equipartition by sampling random completions Z of U^c,
/// maximizing the bisection deficit m/2 - e(Y, Y^c) over `trials` samples.
pub fn set_to_bisection(
    g: &Graph,
    subset: &VertexSet,
    trials: usize,
    seed: u64,
) -> Result<CutResult, RoundError> {
    if !g.is_regular() {
        return Err(RoundError::NotRegular);
    }
    if trials == 0 {
        return Err(RoundError::NoTrials);
    }
    let n = g.n();
    let half = n / 2;
    let size = subset.len();
    if size > half {
        return Err(RoundError::SubsetTooLarge { size, half });
    }
    let disc_u = disc_set(g, subset)?;
    if disc_u <= Rational::new(0, 1) {
        return Err(RoundError::NonPositiveDisc(format!("{disc_u}")));
    }
    let complement: Vec<usize> = subset.complement().to_indices();
    let fill = half - size;
    let effective_trials = if fill == 0 { 1 } else { trials };

    let m_half = Rational::new(g.m() as i128, 2);
    let mut best: Option<(Rational, VertexSet, u64)> = None;
    for trial in 0..effective_trials as u64 {
        let mut rng = SeededRng::for_trial(seed, trial);
        let mut candidate = subset.clone();
        for v in rng.sample_subset(&complement, fill) {
            candidate.insert(v);
        }
        let cut = g.edges_between(&candidate, &candidate.complement());
        let deficit = m_half - Rational::new(cut as i128, 1);
        if best.as_ref().map(|(b, _, _)| deficit > *b).unwrap_or(true) {
            best = Some((deficit, candidate, trial));
        }
    }
    let (value, subset, trial) = best.expect("at least one trial");
    Ok(CutResult {
        kind: CutKind::Deficit,
        subset,
        value,
        method: "set_to_bisection".into(),
        seed: Some(seed),
        trial: Some(trial),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_to_f64;
    use crate::graph::{from_edge_list, gen_named, gen_random_regular, NamedFamily};

    #[test]
    fn edgeless_vectors_are_standard_basis() {
        let g = from_edge_list("4 0").unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        assert_eq!(ens.z, 0.0);
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert_eq!(ens.inner(&g, u, v), 0.0);
            }
        }
    }

    #[test]
    fn k2_inner_product_formula() {
        let g = from_edge_list("2 1\n0 1").unwrap();
        let delta = 1e-4f64;
        let ens = build_sparse_vectors(&g, delta);
        // d = 1 -> z = delta; <y_0, y_1> = 2z / (1 + z^2).
        let z = delta;
        let expected = 2.0 * z / (1.0 + z * z);
        assert!((ens.inner(&g, 0, 1) - expected).abs() < 1e-15);
    }

    #[test]
    fn regime_switch_exact() {
        // n = 9, d = 4: d^3 = 64 <= 81 = n^2 -> sparse regime.
        let g = gen_random_regular(9, 4, 1).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        assert_eq!(ens.regime, Some(SparseRegime::DeltaOverSqrtD));
        // n = 9, d = 5: 125 > 81 -> dense regime (z = delta n / d^2).
        let g = gen_random_regular(10, 5, 1).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        // n = 10, d = 5: 125 > 100.
        assert_eq!(ens.regime, Some(SparseRegime::DeltaNOverD2));
        assert!((ens.z - 1e-4 * 10.0 / 25.0).abs() < 1e-18);
    }

    #[test]
    fn sparse_inner_product_bounds() {
        let g = gen_random_regular(60, 6, 3).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        let delta_max = g.max_degree() as f64;
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let inner = ens.inner(&g, u, v);
                if g.has_edge(u, v) {
                    assert!(inner >= ens.z / 2.0, "adjacent inner {inner} below z/2");
                } else {
                    assert!(inner <= delta_max * ens.z * ens.z + 1e-15);
                }
            }
        }
    }

    #[test]
    fn rounding_deterministic_and_recoverable() {
        let g = gen_random_regular(40, 4, 9).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        let a = hyperplane_round(&ens, &g, 50, 11).unwrap();
        let b = hyperplane_round(&ens, &g, 50, 11).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.subset, b.subset);
        assert_eq!(a.trial, b.trial);
        assert_eq!(a.recompute(&g).unwrap(), a.value);
    }

    #[test]
    fn expected_disc_orthogonal_and_identical() {
        let g = from_edge_list("6 0").unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        assert!(expected_disc(&ens, &g).unwrap().abs() < 1e-15);

        // Identical vectors: complete graph rows from a rank-one factor.
        let g = gen_named(&NamedFamily::Complete { n: 5 }).unwrap();
        let mut rows = Matrix::<f64>::zeros(5, 3);
        for i in 0..5 {
            rows.set(i, 1, 2.0);
        }
        let ens = from_factor_rows(&rows);
        // beta = pi/2 for all pairs; E = (pi/4)(2m - dn)/(2 pi ...) = 0 since 2m = dn.
        assert!(expected_disc(&ens, &g).unwrap().abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_tracks_expectation() {
        let g = gen_random_regular(120, 8, 21).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        let expected = expected_disc(&ens, &g).unwrap();
        let trials = 3000;
        let (_, trace) = hyperplane_round_trace(&ens, &g, trials, 5).unwrap();
        let values: Vec<f64> = trace.iter().map(|r| rational_to_f64(*r)).collect();
        let mean = values.iter().sum::<f64>() / trials as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
        let se = (var / trials as f64).sqrt();
        assert!(
            (mean - expected).abs() <= 3.0 * se,
            "mean {mean} vs expected {expected} (se {se})"
        );
    }

    #[test]
    fn arcsin_bounds_on_sparse_ensemble() {
        let g = gen_random_regular(80, 6, 2).unwrap();
        let ens = build_sparse_vectors::<f64>(&g, 1e-4);
        let report = arcsin_bounds_check(&ens, &g).unwrap();
        assert!(report.passed);
        assert!(report.max_inner <= 0.5);
        assert!(report.pairs_checked > 0);
    }

    #[test]
    fn arcsin_scalar_cases() {
        // t = 0.5: arcsin = pi/6 ~ 0.5236 <= 0.75; t = 0.3: 0.3047 <= 0.39.
        for (t, hi) in [(0.5f64, 0.75), (0.3, 0.39)] {
            let beta = t.asin();
            assert!(t <= beta && beta <= hi);
        }
    }

    #[test]
    fn pm1_guarantee_exhaustive_small() {
        let g = crate::corpus::random_graph(10, 22, 13);
        for mask in 0u32..1024 {
            let signs: Vec<i8> = (0..10).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            let disc_x = disc_signs_exact(&g, &signs).unwrap();
            let result = pm1_to_subset(&g, &signs).unwrap();
            if disc_x > Rational::new(0, 1) {
                assert!(result.value * Rational::new(4, 1) >= disc_x);
            }
        }
    }

    #[test]
    fn pm1_rejects_bad_entries() {
        let g = gen_named(&NamedFamily::Cycle { n: 4 }).unwrap();
        assert!(matches!(pm1_to_subset(&g, &[1, -1, 0, 1]), Err(RoundError::BadSign { index: 2 })));
    }

    #[test]
    fn bisection_half_size_is_deterministic_identity() {
        // |U| = n/2 -> Z is forced empty and the deficit has the exact value
        // 2 disc(U) - dn/(4(n-1)) (regular-graph complement identity).
        let g = gen_random_regular(12, 4, 17).unwrap();
        let plus = crate::exact::disc_plus_exact(&g, false).unwrap();
        // Find a positive-disc subset of size exactly n/2 by brute scan.
        let mut chosen = None;
        for mask in 0u64..(1 << 12) {
            if mask.count_ones() == 6 {
                let set = VertexSet::from_indices(
                    12,
                    &(0..12).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>(),
                );
                let disc = disc_set(&g, &set).unwrap();
                if disc > Rational::new(0, 1) {
                    chosen = Some((set, disc));
                    break;
                }
            }
        }
        let (set, disc) = chosen.expect("regular graph with positive disc subset");
        let result = set_to_bisection(&g, &set, 10, 3).unwrap();
        let d = 4i128;
        let correction = Rational::new(d * 12, 4 * 11);
        assert_eq!(result.value, disc * Rational::new(2, 1) - correction);
        let _ = plus;
    }

    #[test]
    fn bisection_c4_matches_enumeration() {
        let g = gen_named(&NamedFamily::Cycle { n: 4 }).unwrap();
        let u = VertexSet::from_indices(4, &[0, 1]); // adjacent pair, disc = 1/3
        let result = set_to_bisection(&g, &u, 5, 1).unwrap();
        // Equipartitions of C4: {01|23} cut 2, {02|13} cut 4, {03|12} cut 2.
        // Candidate is forced to {0,1}: deficit = 2 - 2 = 0.
        assert_eq!(result.value, Rational::new(0, 1));
        assert!(matches!(
            set_to_bisection(&g, &VertexSet::from_indices(4, &[0, 2]), 5, 1),
            Err(RoundError::NonPositiveDisc(_))
        ));
    }
}
