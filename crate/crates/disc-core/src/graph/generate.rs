//! Graph generators: named families, configuration-model random regular
//! graphs, and blow-ups.

use std::collections::BTreeMap;

use super::{Graph, GraphBuilder, GraphError};
use crate::rng::SeededRng;

/// Whole-sample rejections of the pairing model before switching to
/// edge-swap repair. Plain rejection stalls once d approaches sqrt(n).
const PAIRING_REJECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFamily {
    Complete { n: usize },
    Cycle { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Turan { n: usize, r: usize },
    Petersen,
}

/// Builds one of the named graph families.
pub fn gen_named(family: &NamedFamily) -> Result<Graph, GraphError> {
    match *family {
        NamedFamily::Complete { n } => {
            if n == 0 {
                return Err(GraphError::InvalidParameters("complete: n >= 1 required".into()));
            }
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    b.add_edge(u, v)?;
                }
            }
            Ok(b.build())
        }
        NamedFamily::Cycle { n } => {
            if n < 3 {
                return Err(GraphError::InvalidParameters("cycle: n >= 3 required".into()));
            }
            let mut b = GraphBuilder::new(n);
            for v in 0..n {
                b.add_edge(v, (v + 1) % n)?;
            }
            Ok(b.build())
        }
        NamedFamily::CompleteBipartite { a, b: bn } => {
            if a == 0 || bn == 0 {
                return Err(GraphError::InvalidParameters("complete_bipartite: both sides >= 1".into()));
            }
            let mut b = GraphBuilder::new(a + bn);
            for u in 0..a {
                for v in a..a + bn {
                    b.add_edge(u, v)?;
                }
            }
            Ok(b.build())
        }
        NamedFamily::Turan { n, r } => {
            if r == 0 || r > n {
                return Err(GraphError::InvalidParameters("turan: 1 <= r <= n required".into()));
            }
            // Parts of size floor(n/r) or ceil(n/r); vertex v goes to part v mod r.
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if u % r != v % r {
                        b.add_edge(u, v)?;
                    }
                }
            }
            Ok(b.build())
        }
        NamedFamily::Petersen => {
            let mut b = GraphBuilder::new(10);
            for v in 0..5 {
                b.add_edge(v, (v + 1) % 5)?; // outer 5-cycle
                b.add_edge(v, v + 5)?; // spokes
                b.add_edge(5 + v, 5 + (v + 2) % 5)?; // inner pentagram
            }
            Ok(b.build())
        }
    }
}

/// Samples a uniform-ish simple d-regular graph on n vertices via the
/// pairing (configuration) model with whole-sample rejection, falling back
/// to random double-edge swaps when rejection stalls. Deterministic for a
/// fixed (n, d, seed).
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if d >= n {
        return Err(GraphError::InvalidParameters(format!("regular: d = {d} must be < n = {n}")));
    }
    if (n * d) % 2 != 0 {
        return Err(GraphError::InvalidParameters(format!("regular: n*d = {} must be even", n * d)));
    }
    if d == 0 {
        return Ok(GraphBuilder::new(n).build());
    }

    let mut rng = SeededRng::new(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let half = stubs.len() / 2;

    let mut last_pairing: Vec<(usize, usize)> = Vec::with_capacity(half);
    for _ in 0..PAIRING_REJECTIONS {
        rng.shuffle(&mut stubs);
        last_pairing.clear();
        let mut builder = GraphBuilder::new(n);
        let mut simple = true;
        for i in 0..half {
            let (u, v) = (stubs[i], stubs[half + i]);
            last_pairing.push((u, v));
            if simple && (u == v || builder.has_edge(u, v)) {
                simple = false;
            } else if simple {
                builder.add_edge(u, v).expect("checked fresh");
            }
        }
        if simple {
            return Ok(builder.build());
        }
    }
    repair_by_edge_swaps(n, d, last_pairing, &mut rng)
}

/// Random double-edge swaps on a defective pairing until it is simple.
fn repair_by_edge_swaps(
    n: usize,
    d: usize,
    mut edges: Vec<(usize, usize)>,
    rng: &mut SeededRng,
) -> Result<Graph, GraphError> {
    let budget = 400 * edges.len() + 10_000;
    let mut attempts = 0usize;
    loop {
        // Multiplicity map over normalized endpoints; self-loops keyed as (v, v).
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(u, v) in &edges {
            *counts.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        let defects: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| u == v || counts[&(u.min(v), u.max(v))] > 1)
            .map(|(i, _)| i)
            .collect();
        if defects.is_empty() {
            let mut builder = GraphBuilder::new(n);
            for &(u, v) in &edges {
                builder.add_edge(u, v)?;
            }
            return Ok(builder.build());
        }
        let mut progressed = false;
        while attempts < budget {
            attempts += 1;
            let i = defects[rng.uniform_usize(defects.len())];
            let j = rng.uniform_usize(edges.len());
            if i == j {
                continue;
            }
            let (a, b) = edges[i];
            let (c, e) = edges[j];
            // Swap to (a, c), (b, e) or (a, e), (b, c), keeping both simple
            // and not duplicating existing pairs.
            let options = [[(a, c), (b, e)], [(a, e), (b, c)]];
            let pick = rng.uniform_usize(2);
            let mut done = false;
            for opt in [options[pick], options[1 - pick]] {
                if opt.iter().all(|&(x, y)| x != y) && swap_is_fresh(&counts, edges[i], edges[j], opt) {
                    edges[i] = opt[0];
                    edges[j] = opt[1];
                    done = true;
                    break;
                }
            }
            if done {
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(GraphError::RetryBudgetExhausted { n, d });
        }
    }
}

fn swap_is_fresh(
    counts: &BTreeMap<(usize, usize), usize>,
    old_i: (usize, usize),
    old_j: (usize, usize),
    new: [(usize, usize); 2],
) -> bool {
    let key = |(u, v): (usize, usize)| (u.min(v), u.max(v));
    let (k0, k1) = (key(new[0]), key(new[1]));
    if k0 == k1 {
        return false;
    }
    for &k in &[k0, k1] {
        let mut c = counts.get(&k).copied().unwrap_or(0);
        // The two replaced slots no longer occupy their old keys.
        if key(old_i) == k {
            c -= 1;
        }
        if key(old_j) == k {
            c -= 1;
        }
        if c > 0 {
            return false;
        }
    }
    true
}

/// Replaces every vertex by an independent set of k copies; copies of
/// adjacent originals are completely joined. Vertex (v, i) maps to v*k + i.
pub fn gen_blowup(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameters("blowup: k >= 1 required".into()));
    }
    let n = g
        .n()
        .checked_mul(k)
        .ok_or_else(|| GraphError::InvalidParameters("blowup: size overflow".into()))?;
    if n > 100_000 {
        return Err(GraphError::InvalidParameters(format!("blowup: n = {n} exceeds supported scale")));
    }
    let mut b = GraphBuilder::new(n);
    for (u, v) in g.edges() {
        for i in 0..k {
            for j in 0..k {
                b.add_edge(u * k + i, v * k + j)?;
            }
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::from_edge_list;

    fn c5() -> Graph {
        gen_named(&NamedFamily::Cycle { n: 5 }).unwrap()
    }

    fn triangle_count(g: &Graph) -> u64 {
        let mut t = 0u64;
        for (u, v) in g.edges() {
            t += g.common_neighbors(u, v) as u64;
        }
        t / 3
    }

    #[test]
    fn complete_k4() {
        let g = gen_named(&NamedFamily::Complete { n: 4 }).unwrap();
        assert_eq!(g.m(), 6);
        g.check_invariants().unwrap();
    }

    #[test]
    fn turan_6_3_is_k222() {
        let g = gen_named(&NamedFamily::Turan { n: 6, r: 3 }).unwrap();
        assert_eq!(g.m(), 12);
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn petersen_shape() {
        let g = gen_named(&NamedFamily::Petersen).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 15);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(triangle_count(&g), 0);
        // Girth 5: no 4-cycles either, i.e. non-adjacent pairs share at most one neighbor.
        for u in 0..10 {
            for v in (u + 1)..10 {
                if !g.has_edge(u, v) {
                    assert_eq!(g.common_neighbors(u, v), 1);
                }
            }
        }
    }

    #[test]
    fn random_regular_basic_and_deterministic() {
        let g = gen_random_regular(100, 3, 7).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
        g.check_invariants().unwrap();
        let h = gen_random_regular(100, 3, 7).unwrap();
        assert_eq!(g, h);
        let other = gen_random_regular(100, 3, 8).unwrap();
        assert_ne!(g, other);
    }

    #[test]
    fn random_regular_n4_d2_is_c4() {
        let g = gen_random_regular(4, 2, 123).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(g.m(), 4);
        // The only simple 2-regular graph on 4 vertices is C4.
        assert_eq!(triangle_count(&g), 0);
    }

    #[test]
    fn random_regular_rejects_odd_product() {
        assert!(matches!(gen_random_regular(5, 3, 1), Err(GraphError::InvalidParameters(_))));
        assert!(matches!(gen_random_regular(4, 4, 1), Err(GraphError::InvalidParameters(_))));
    }

    #[test]
    fn random_regular_dense_uses_repair_path() {
        // d close to n forces the repair path; the result must still be simple and regular.
        let g = gen_random_regular(30, 20, 5).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 20));
        g.check_invariants().unwrap();
    }

    #[test]
    fn blowup_identity_and_k33() {
        let g = c5();
        assert_eq!(gen_blowup(&g, 1).unwrap(), g);
        let k2 = from_edge_list("2 1\n0 1").unwrap();
        let k33 = gen_blowup(&k2, 3).unwrap();
        assert_eq!(k33.n(), 6);
        assert_eq!(k33.m(), 9);
        assert!(k33.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn blowup_c5_large_is_triangle_free_regular() {
        let g = gen_blowup(&c5(), 20).unwrap();
        assert_eq!(g.n(), 100);
        assert!(g.degrees().iter().all(|&d| d == 40));
        assert_eq!(triangle_count(&g), 0);
    }
}
