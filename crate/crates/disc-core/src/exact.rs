//! Exact discrepancy oracles.
//!
//! Everything here is exact rational arithmetic over the graph density
//! p = m / C(n,2): disc(U) = e(U) - p * C(|U|,2) and friends, plus
//! brute-force maximizers over subsets, sign vectors, bipartitions and
//! equipartitions. Subsets are enumerated in Gray-code order with O(1)
//! incremental edge-count updates, so n = 24 (~16.7M subsets) stays in the
//! seconds range. These oracles are the reference the spectral and SDP
//! modules are validated against.

use serde_json::json;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::{choose2, density, Rational};

/// Default vertex-count guard for the exhaustive oracles.
pub const ENUM_GUARD: usize = 24;
/// Hard cap even when the guard is overridden; 2^32 subsets is past desk scale.
pub const ENUM_HARD_CAP: usize = 30;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("subsets must be disjoint (vertex {vertex} in both)")]
    NotDisjoint { vertex: usize },
    #[error("enumeration guard: n = {n} exceeds limit {limit} (override with force)")]
    EnumerationGuard { n: usize, limit: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entries must be +1 or -1 (index {index})")]
    NotSigns { index: usize },
    #[error("universe mismatch: set over {set_n} vertices, graph has {graph_n}")]
    UniverseMismatch { set_n: usize, graph_n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CutKind {
    DiscPlus,
    DiscMinus,
    Disc1Plus,
    Surplus,
    Deficit,
    Witness,
}

/// A vertex subset (or the +1 side of a sign vector) together with its
/// exact value and provenance.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub kind: CutKind,
    pub subset: VertexSet,
    pub value: Rational,
    pub method: String,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
}

impl CutResult {
    /// Recomputes the value from the stored subset; must match exactly.
    pub fn recompute(&self, g: &Graph) -> Result<Rational, OracleError> {
        check_universe(g, &self.subset)?;
        let complement = self.subset.complement();
        Ok(match self.kind {
            CutKind::DiscPlus | CutKind::Witness => disc_set(g, &self.subset)?,
            CutKind::DiscMinus => -disc_set(g, &self.subset)?,
            CutKind::Disc1Plus => {
                disc_set(g, &self.subset)? - disc_pair(g, &self.subset, &complement)?
                    + disc_set(g, &complement)?
            }
            CutKind::Surplus => {
                Rational::new(g.edges_between(&self.subset, &complement) as i128, 1)
                    - Rational::new(g.m() as i128, 2)
            }
            CutKind::Deficit => {
                Rational::new(g.m() as i128, 2)
                    - Rational::new(g.edges_between(&self.subset, &complement) as i128, 1)
            }
        })
    }

    /// JSON record {kind, value_num, value_den, subset}.
    pub fn to_json(&self) -> serde_json::Value {
        let reduced = self.value;
        json!({
            "kind": self.kind,
            "value_num": i64::try_from(*reduced.numer()).expect("numerator fits i64 at desk scale"),
            "value_den": i64::try_from(*reduced.denom()).expect("denominator fits i64 at desk scale"),
            "subset": self.subset.to_indices(),
        })
    }
}

fn check_universe(g: &Graph, set: &VertexSet) -> Result<(), OracleError> {
    if set.universe() != g.n() {
        return Err(OracleError::UniverseMismatch { set_n: set.universe(), graph_n: g.n() });
    }
    Ok(())
}

/// disc(U) = e(U) - p * C(|U|, 2), exactly.
pub fn disc_set(g: &Graph, u: &VertexSet) -> Result<Rational, OracleError> {
    check_universe(g, u)?;
    let e = g.edges_within(u) as i128;
    let pairs = choose2(u.len()) as i128;
    Ok(Rational::new(e, 1) - density(g) * Rational::new(pairs, 1))
}

/// disc(U, W) = e(U, W) - p |U| |W| for disjoint U, W, exactly.
pub fn disc_pair(g: &Graph, u: &VertexSet, w: &VertexSet) -> Result<Rational, OracleError> {
    check_universe(g, u)?;
    check_universe(g, w)?;
    if u.intersects(w) {
        let vertex = u.iter().find(|&v| w.contains(v)).unwrap_or(0);
        return Err(OracleError::NotDisjoint { vertex });
    }
    let e = g.edges_between(u, w) as i128;
    let cross = u.len() as i128 * w.len() as i128;
    Ok(Rational::new(e, 1) - density(g) * Rational::new(cross, 1))
}

/// disc(x) = 1/2 sum_{i~j} x_i x_j - (p/2) sum_{i != j} x_i x_j over
/// ordered pairs, for an arbitrary real vector.
pub fn disc_vector<F: crate::real::Real>(g: &Graph, x: &[F]) -> Result<F, OracleError> {
    if x.len() != g.n() {
        return Err(OracleError::DimensionMismatch { expected: g.n(), got: x.len() });
    }
    let mut edge_sum = F::zero();
    for (u, v) in g.edges() {
        edge_sum += x[u] * x[v];
    }
    let total: F = x.iter().copied().sum();
    let squares: F = x.iter().map(|&v| v * v).sum();
    let off_diag = total * total - squares;
    let p = crate::real::rf::<F>(rational_to_f64(density(g)));
    Ok(edge_sum - p / crate::real::rf(2.0) * off_diag)
}

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Gray-code scan over all 2^n subsets with incremental e(U) and
/// e(U, U^c) maintenance. Visits the empty set first.
fn scan_subsets(g: &Graph, mut visit: impl FnMut(u64, u32, i64, i64)) {
    let n = g.n();
    assert!(n <= ENUM_HARD_CAP, "scan_subsets requires n <= {ENUM_HARD_CAP}");
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let degrees: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();

    let mut mask = 0u64;
    let mut size = 0u32;
    let mut e_in = 0i64;
    let mut e_cross = 0i64;
    visit(mask, size, e_in, e_cross);
    for i in 1u64..(1u64 << n) {
        let bit = i.trailing_zeros() as usize;
        let row = rows[bit];
        if mask >> bit & 1 == 0 {
            // bit joins U
            let into_u = (row & mask).count_ones() as i64;
            e_in += into_u;
            e_cross += degrees[bit] - 2 * into_u;
            mask |= 1 << bit;
            size += 1;
        } else {
            mask &= !(1 << bit);
            size -= 1;
            let into_u = (row & mask).count_ones() as i64;
            e_in -= into_u;
            e_cross -= degrees[bit] - 2 * into_u;
        }
        visit(mask, size, e_in, e_cross);
    }
}

fn guard(g: &Graph, force: bool) -> Result<(), OracleError> {
    let limit = if force { ENUM_HARD_CAP } else { ENUM_GUARD };
    if g.n() > limit {
        return Err(OracleError::EnumerationGuard { n: g.n(), limit });
    }
    Ok(())
}

fn mask_to_set(n: usize, mask: u64) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for v in 0..n {
        if mask >> v & 1 == 1 {
            s.insert(v);
        }
    }
    s
}

/// Scaled integer value C(n,2) * disc(U) = C(n,2) e(U) - m C(|U|,2).
#[inline]
fn scaled_disc(pairs_n: i64, m: i64, e_in: i64, size: u32) -> i64 {
    pairs_n * e_in - m * (size as i64 * (size as i64 - 1) / 2)
}

fn finish(g: &Graph, kind: CutKind, mask: u64, scaled: i64, method: &str) -> CutResult {
    let pairs_n = choose2(g.n()).max(1) as i128;
    CutResult {
        kind,
        subset: mask_to_set(g.n(), mask),
        value: Rational::new(scaled as i128, pairs_n),
        method: method.into(),
        seed: None,
        trial: None,
    }
}

/// Maximizes disc(U) over all subsets by exhaustive Gray-code enumeration.
pub fn disc_plus_exact(g: &Graph, force: bool) -> Result<CutResult, OracleError> {
    guard(g, force)?;
    let pairs_n = choose2(g.n()).max(1) as i64;
    let m = g.m() as i64;
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    scan_subsets(g, |mask, size, e_in, _| {
        let value = scaled_disc(pairs_n, m, e_in, size);
        if value > best {
            best = value;
            best_mask = mask;
        }
    });
    Ok(finish(g, CutKind::DiscPlus, best_mask, best, "gray_enumeration"))
}

/// Maximizes p * C(|U|,2) - e(U) over all subsets.
pub fn disc_minus_exact(g: &Graph, force: bool) -> Result<CutResult, OracleError> {
    guard(g, force)?;
    let pairs_n = choose2(g.n()).max(1) as i64;
    let m = g.m() as i64;
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    scan_subsets(g, |mask, size, e_in, _| {
        let value = -scaled_disc(pairs_n, m, e_in, size);
        if value > best {
            best = value;
            best_mask = mask;
        }
    });
    Ok(finish(g, CutKind::DiscMinus, best_mask, best, "gray_enumeration"))
}

/// Maximizes disc(x) over sign vectors x in {-1, +1}^n; the stored subset
/// is the +1 side. Uses disc(x) = disc(U) - disc(U, U^c) + disc(U^c).
pub fn disc1_plus_exact(g: &Graph, force: bool) -> Result<CutResult, OracleError> {
    guard(g, force)?;
    let n = g.n() as i64;
    let pairs_n = choose2(g.n()).max(1) as i64;
    let m = g.m() as i64;
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    scan_subsets(g, |mask, size, _, e_cross| {
        // C(n,2) disc(x) = C(n,2)(m - 2 e_cross) - m (C(u,2) + C(n-u,2) - u(n-u))
        let u = size as i64;
        let sign_pairs = u * (u - 1) / 2 + (n - u) * (n - u - 1) / 2 - u * (n - u);
        let value = pairs_n * (m - 2 * e_cross) - m * sign_pairs;
        if value > best {
            best = value;
            best_mask = mask;
        }
    });
    Ok(finish(g, CutKind::Disc1Plus, best_mask, best, "gray_enumeration"))
}

/// Maximum cut surplus: max over bipartitions of e(U, U^c) - m/2.
pub fn surplus_exact(g: &Graph, force: bool) -> Result<CutResult, OracleError> {
    guard(g, force)?;
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    scan_subsets(g, |mask, _, _, e_cross| {
        if e_cross > best {
            best = e_cross;
            best_mask = mask;
        }
    });
    let value = Rational::new(best as i128, 1) - Rational::new(g.m() as i128, 2);
    Ok(CutResult {
        kind: CutKind::Surplus,
        subset: mask_to_set(g.n(), best_mask),
        value,
        method: "gray_enumeration".into(),
        seed: None,
        trial: None,
    })
}

/// Minimum bisection deficit: max over equipartitions (parts floor(n/2),
/// ceil(n/2)) of m/2 - e(U, U^c). May be negative.
pub fn deficit_exact(g: &Graph, force: bool) -> Result<CutResult, OracleError> {
    guard(g, force)?;
    let half = g.n() as u32 / 2;
    let mut best: Option<i64> = None;
    let mut best_mask = 0u64;
    scan_subsets(g, |mask, size, _, e_cross| {
        if size == half && best.map(|b| e_cross < b).unwrap_or(true) {
            best = Some(e_cross);
            best_mask = mask;
        }
    });
    let cut = best.expect("every graph has an equipartition");
    let value = Rational::new(g.m() as i128, 2) - Rational::new(cut as i128, 1);
    Ok(CutResult {
        kind: CutKind::Deficit,
        subset: mask_to_set(g.n(), best_mask),
        value,
        method: "gray_enumeration".into(),
        seed: None,
        trial: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{from_edge_list, gen_named, NamedFamily};

    fn c5() -> Graph {
        gen_named(&NamedFamily::Cycle { n: 5 }).unwrap()
    }

    fn k4() -> Graph {
        gen_named(&NamedFamily::Complete { n: 4 }).unwrap()
    }

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    /// Independent oracle: plain binary enumeration recomputing e(U) from
    /// the edge list for every subset. No Gray code, no popcount sharing.
    fn naive_disc_plus(g: &Graph) -> Rational {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let p = density(g);
        let mut best: Option<Rational> = None;
        for mask in 0u64..(1 << g.n()) {
            let e = edges.iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
            let size = mask.count_ones() as u64;
            let value = r(e as i128, 1) - p * r(choose2(size as usize) as i128, 1);
            if best.map(|b| value > b).unwrap_or(true) {
                best = Some(value);
            }
        }
        best.unwrap()
    }

    #[test]
    fn disc_set_examples() {
        let g = c5();
        assert_eq!(disc_set(&g, &VertexSet::empty(5)).unwrap(), r(0, 1));
        let u = VertexSet::from_indices(5, &[0, 1, 2]);
        assert_eq!(disc_set(&g, &u).unwrap(), r(1, 2));
        // K4 has density 1: every subset has disc exactly 0.
        let g = k4();
        for mask in 0u64..16 {
            let u = mask_to_set(4, mask);
            assert_eq!(disc_set(&g, &u).unwrap(), r(0, 1));
        }
    }

    #[test]
    fn disc_pair_examples() {
        let g = c5();
        let u = VertexSet::from_indices(5, &[0]);
        let w = VertexSet::from_indices(5, &[1, 2]);
        assert_eq!(disc_pair(&g, &u, &w).unwrap(), r(0, 1));
        assert_eq!(disc_pair(&g, &VertexSet::empty(5), &w).unwrap(), r(0, 1));
        let overlapping = VertexSet::from_indices(5, &[2, 3]);
        assert!(matches!(disc_pair(&g, &w, &overlapping), Err(OracleError::NotDisjoint { vertex: 2 })));
    }

    #[test]
    fn zero_sum_identity_exact() {
        for seed in 0..20u64 {
            let g = crate::corpus::random_graph(4 + (seed as usize % 9), seed as usize * 3 + 1, seed);
            for submask in 0..32u64 {
                let u = mask_to_set(g.n(), submask & ((1 << g.n()) - 1));
                let uc = u.complement();
                let total = disc_set(&g, &u).unwrap()
                    + disc_pair(&g, &u, &uc).unwrap()
                    + disc_set(&g, &uc).unwrap();
                assert_eq!(total, r(0, 1));
            }
        }
    }

    #[test]
    fn additivity_identity() {
        let g = crate::corpus::random_graph(10, 22, 5);
        let u = VertexSet::from_indices(10, &[0, 2, 5]);
        let w = VertexSet::from_indices(10, &[1, 7, 8, 9]);
        let mut union = u.clone();
        union.union_with(&w);
        let lhs = disc_set(&g, &union).unwrap();
        let rhs = disc_set(&g, &u).unwrap() + disc_pair(&g, &u, &w).unwrap() + disc_set(&g, &w).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn disc_plus_named_values() {
        assert_eq!(disc_plus_exact(&c5(), false).unwrap().value, r(1, 2));
        for n in 2..=8 {
            let g = gen_named(&NamedFamily::Complete { n }).unwrap();
            assert_eq!(disc_plus_exact(&g, false).unwrap().value, r(0, 1));
        }
        let petersen = gen_named(&NamedFamily::Petersen).unwrap();
        let result = disc_plus_exact(&petersen, false).unwrap();
        // Outer 5-cycle gives 5 - (1/3) C(5,2) = 5/3; enumeration must do at least as well.
        assert!(result.value >= r(5, 3));
        assert_eq!(result.value, naive_disc_plus(&petersen));
        assert_eq!(result.recompute(&petersen).unwrap(), result.value);
    }

    #[test]
    fn gray_matches_naive_on_random_graphs() {
        for seed in 0..12 {
            let g = crate::corpus::random_graph(4 + (seed as usize % 7), 2 + seed as usize, seed);
            assert_eq!(disc_plus_exact(&g, false).unwrap().value, naive_disc_plus(&g));
        }
    }

    #[test]
    fn disc_minus_is_disc_plus_of_complement_for_regular() {
        for g in [c5(), gen_named(&NamedFamily::Petersen).unwrap(), gen_named(&NamedFamily::Turan { n: 6, r: 3 }).unwrap()] {
            let minus = disc_minus_exact(&g, false).unwrap().value;
            let comp_plus = disc_plus_exact(&g.complement(), false).unwrap().value;
            assert_eq!(minus, comp_plus);
        }
    }

    #[test]
    fn disc1_sandwich_on_c5() {
        let d1 = disc1_plus_exact(&c5(), false).unwrap();
        assert!(d1.value >= r(1, 2));
        assert!(d1.value <= r(2, 1));
        assert_eq!(d1.recompute(&c5()).unwrap(), d1.value);
    }

    #[test]
    fn disc1_on_edgeless() {
        let g = from_edge_list("4 0").unwrap();
        assert_eq!(disc1_plus_exact(&g, false).unwrap().value, r(0, 1));
    }

    #[test]
    fn surplus_and_deficit_examples() {
        let k3 = gen_named(&NamedFamily::Complete { n: 3 }).unwrap();
        assert_eq!(surplus_exact(&k3, false).unwrap().value, r(1, 2));
        let c4 = gen_named(&NamedFamily::Cycle { n: 4 }).unwrap();
        assert_eq!(surplus_exact(&c4, false).unwrap().value, r(2, 1));
        // Every equipartition of K4 cuts 4 of 6 edges: deficit 3 - 4 = -1.
        assert_eq!(deficit_exact(&k4(), false).unwrap().value, r(-1, 1));
    }

    #[test]
    fn deficit_odd_n_uses_floor_part() {
        let g = c5();
        let result = deficit_exact(&g, false).unwrap();
        assert_eq!(result.subset.len(), 2);
        // C5: every 2/3 split cuts at least 2 edges; min cut over splits is 2 -> deficit 1/2.
        assert_eq!(result.value, r(1, 2));
    }

    #[test]
    fn enumeration_guard_fires() {
        let g = crate::graph::gen_random_regular(26, 3, 1).unwrap();
        assert!(matches!(disc_plus_exact(&g, false), Err(OracleError::EnumerationGuard { .. })));
        assert!(disc_plus_exact(&g, true).is_ok());
    }

    #[test]
    fn disc_vector_matches_disc_set_on_characteristic_vectors() {
        let g = crate::corpus::random_graph(9, 14, 2);
        for mask in [0u64, 1, 5, 37, 100, 511] {
            let u = mask_to_set(9, mask & 511);
            let x: Vec<f64> = (0..9).map(|v| if u.contains(v) { 1.0 } else { 0.0 }).collect();
            let direct = disc_vector(&g, &x).unwrap();
            let expected = rational_to_f64(disc_set(&g, &u).unwrap());
            assert!((direct - expected).abs() < 1e-9);
        }
        let zero = vec![0.0f64; 9];
        assert_eq!(disc_vector(&g, &zero).unwrap(), 0.0);
    }

    #[test]
    fn disc1_matches_sign_identity_per_subset() {
        let g = crate::corpus::random_graph(8, 13, 9);
        for mask in 0u64..256 {
            let u = mask_to_set(8, mask);
            let uc = u.complement();
            let via_sets = disc_set(&g, &u).unwrap() - disc_pair(&g, &u, &uc).unwrap()
                + disc_set(&g, &uc).unwrap();
            let x: Vec<f64> = (0..8).map(|v| if u.contains(v) { 1.0 } else { -1.0 }).collect();
            let via_vector = disc_vector(&g, &x).unwrap();
            assert!((via_vector - rational_to_f64(via_sets)).abs() < 1e-9);
        }
    }
}
