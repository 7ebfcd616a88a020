//! High-degree pruning and the sampling witness built on it.
//!
//! Vertices of degree above (1 + delta) * average either already force a
//! large positive discrepancy (witnessed by sampling below) or can be
//! stripped without moving the discrepancy much. The threshold comparison
//! is exact rational arithmetic, never floating point.

use super::{Graph, GraphBuilder, GraphError, VertexSet};
use crate::exact::{disc_set, CutKind, CutResult};
use crate::rng::SeededRng;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct PruneReport {
    /// Vertices of degree strictly above (1 + delta) * d.
    pub high_set: VertexSet,
    /// e(X) + e(X, X^c): edges touched by the high-degree set.
    pub f: u64,
    /// Input graph with every edge incident to the high set removed.
    pub pruned: Graph,
    /// Average degree of the pruned graph.
    pub d0: Rational,
    pub delta: Rational,
}

/// Splits off the vertices of degree above (1 + delta) * average degree.
pub fn prune_high_degree(g: &Graph, delta: Rational) -> Result<PruneReport, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    if delta <= Rational::new(0, 1) || delta >= Rational::new(1, 1) {
        return Err(GraphError::InvalidParameters("prune: delta must lie in (0, 1)".into()));
    }
    // deg(v) > (1 + delta) * 2m/n  <=>  deg(v) * n * den > 2m * (den + num)
    let num = *delta.numer();
    let den = *delta.denom();
    let rhs = 2 * g.m() as i128 * (den + num);
    let mut high_set = VertexSet::empty(g.n());
    for v in 0..g.n() {
        if g.degree(v) as i128 * g.n() as i128 * den > rhs {
            high_set.insert(v);
        }
    }

    let degree_sum_high: u64 = high_set.iter().map(|v| g.degree(v) as u64).sum();
    let e_high = g.edges_within(&high_set);
    let f = degree_sum_high - e_high; // e(X) + e(X, X^c)

    let mut builder = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        if !high_set.contains(u) && !high_set.contains(v) {
            builder.add_edge(u, v)?;
        }
    }
    let pruned = builder.build();
    debug_assert_eq!(pruned.m(), g.m() - f);
    let d0 = Rational::new(2 * pruned.m() as i128, g.n() as i128);
    Ok(PruneReport { high_set, f, pruned, d0, delta })
}

/// Samples `trials` uniform subsets Y of X^c with |Y| = floor(alpha * |X^c|),
/// alpha = 1/(1 + delta), and returns X union Y maximizing disc over the
/// sampled family. Exact discrepancy values throughout.
pub fn high_degree_witness(
    g: &Graph,
    delta: Rational,
    trials: usize,
    seed: u64,
) -> Result<CutResult, GraphError> {
    let report = prune_high_degree(g, delta)?;
    if report.high_set.is_empty() {
        return Err(GraphError::InvalidParameters(
            "high-degree witness: no vertex exceeds the (1 + delta) * d threshold".into(),
        ));
    }
    if trials == 0 {
        return Err(GraphError::InvalidParameters("high-degree witness: trials >= 1 required".into()));
    }
    let complement: Vec<usize> = report.high_set.complement().to_indices();
    let s = complement.len();
    // b = floor(alpha * s) with alpha = den / (den + num), exactly.
    let num = *report.delta.numer() as u128;
    let den = *report.delta.denom() as u128;
    let b = ((s as u128 * den) / (den + num)) as usize;

    let mut best: Option<(Rational, VertexSet, u64)> = None;
    for trial in 0..trials as u64 {
        let mut rng = SeededRng::for_trial(seed, trial);
        let mut subset = report.high_set.clone();
        for v in rng.sample_subset(&complement, b) {
            subset.insert(v);
        }
        let value = disc_set(g, &subset).expect("subset within range");
        if best.as_ref().map(|(bv, _, _)| value > *bv).unwrap_or(true) {
            best = Some((value, subset, trial));
        }
    }
    let (value, subset, trial) = best.expect("at least one trial");
    Ok(CutResult {
        kind: CutKind::Witness,
        subset,
        value,
        method: "high_degree_witness".into(),
        seed: Some(seed),
        trial: Some(trial),
    })
}
