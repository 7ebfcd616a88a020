//! Undirected simple graphs with bit-packed adjacency rows.
//!
//! Dense storage is deliberate: every algorithm in this crate is
//! dense-spectral and the supported scale tops out around n = 4000, where a
//! full bitset adjacency is 2 MB. Edge queries are O(1); induced edge
//! counts, cut sizes and common-neighbor counts use row AND + popcount.

mod generate;
mod prune;

pub use generate::{gen_blowup, gen_named, gen_random_regular, NamedFamily};
pub use prune::{high_degree_witness, prune_high_degree, PruneReport};

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("random regular sampler exhausted its retry budget (n = {n}, d = {d})")]
    RetryBudgetExhausted { n: usize, d: usize },
}

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A set of vertices, bit-packed to match [`Graph`] row layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut s = VertexSet::empty(n);
        for &v in indices {
            assert!(v < n, "vertex {v} out of range");
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        out.mask_tail();
        out
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter { words: &self.words, word: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn mask_tail(&mut self) {
        let rem = self.n % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word * WORD_BITS + bit)
    }
}

/// Immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
    m: u64,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Average degree 2m/n.
    pub fn avg_degree(&self) -> f64 {
        2.0 * self.m as f64 / self.n as f64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        BitIter { words: row, word: 0, current: row.first().copied().unwrap_or(0) }
    }

    /// Edges as (u, v) with u < v, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of common neighbors of u and v.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges inside the induced subgraph on `set`.
    pub fn edges_within(&self, set: &VertexSet) -> u64 {
        let twice: u64 = set.iter().map(|v| self.degree_into(v, set) as u64).sum();
        twice / 2
    }

    /// Edges between two disjoint vertex sets.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> u64 {
        a.iter().map(|v| self.degree_into(v, b) as u64).sum()
    }

    /// Complement graph (same vertex set, inverted non-diagonal adjacency).
    pub fn complement(&self) -> Graph {
        let mut builder = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    builder.add_edge(u, v).expect("complement edges are fresh");
                }
            }
        }
        builder.build()
    }

    /// Consistency check used by tests and `verify`: symmetry, empty
    /// diagonal, cached degrees, degree sum = 2m.
    pub fn check_invariants(&self) -> Result<(), String> {
        for v in 0..self.n {
            if self.has_edge(v, v) {
                return Err(format!("self-loop at {v}"));
            }
            let row_count = self.row(v).iter().map(|w| w.count_ones()).sum::<u32>();
            if row_count != self.degrees[v] {
                return Err(format!("degree cache mismatch at {v}"));
            }
            let rem = self.n % WORD_BITS;
            if rem != 0 && self.row(v).last().map(|w| w >> rem).unwrap_or(0) != 0 {
                return Err(format!("stray bits beyond n in row {v}"));
            }
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return Err(format!("asymmetric pair ({u}, {v})"));
                }
            }
        }
        let degree_sum: u64 = self.degrees.iter().map(|&d| d as u64).sum();
        if degree_sum != 2 * self.m {
            return Err(format!("degree sum {degree_sum} != 2m = {}", 2 * self.m));
        }
        Ok(())
    }

    /// Serializes to the edge-list text format: header `n m`, then one
    /// sorted `u v` line per edge with u < v.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Incremental constructor enforcing simple-graph invariants per edge.
pub struct GraphBuilder {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
    m: u64,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        GraphBuilder { n, words, rows: vec![0; n * words], degrees: vec![0; n], m: 0 }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.add_edge_at_line(u, v, 0)
    }

    fn add_edge_at_line(&mut self, u: usize, v: usize, line: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { line, vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { line, vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
        }
        self.rows[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * self.words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.m += 1;
        Ok(())
    }

    pub fn build(self) -> Graph {
        Graph { n: self.n, words: self.words, rows: self.rows, degrees: self.degrees, m: self.m }
    }
}

/// Parses the edge-list text format.
///
/// First line `n m`, then exactly m lines `u v` with 0-indexed endpoints.
/// Self-loops, duplicates, out-of-range endpoints and malformed lines are
/// rejected with the offending 1-based line number.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (n, m) = loop {
        match lines.next() {
            Some((idx, raw)) => {
                let line = idx + 1;
                if raw.trim().is_empty() {
                    continue;
                }
                let mut parts = raw.split_whitespace();
                let n = parse_field(parts.next(), line, "vertex count")?;
                let m = parse_field(parts.next(), line, "edge count")?;
                if parts.next().is_some() {
                    return Err(GraphError::Malformed { line, reason: "trailing tokens after header".into() });
                }
                break (n, m);
            }
            None => return Err(GraphError::Malformed { line: 1, reason: "missing header line".into() }),
        }
    };
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut builder = GraphBuilder::new(n);
    let mut found = 0usize;
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut parts = raw.split_whitespace();
        let u = parse_field(parts.next(), line, "endpoint")?;
        let v = parse_field(parts.next(), line, "endpoint")?;
        if parts.next().is_some() {
            return Err(GraphError::Malformed { line, reason: "trailing tokens after edge".into() });
        }
        builder.add_edge_at_line(u, v, line)?;
        found += 1;
    }
    if found != m {
        return Err(GraphError::EdgeCountMismatch { expected: m, found });
    }
    Ok(builder.build())
}

fn parse_field(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Malformed { line, reason: format!("missing {what}") })?;
    tok.parse::<usize>()
        .map_err(|_| GraphError::Malformed { line, reason: format!("invalid {what} `{tok}`") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path_p3() {
        let g = from_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.degrees(), &[1, 2, 1]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn parse_cycle_c5() {
        let g = from_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        assert_eq!(g.m(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn parse_rejects_self_loop_with_line() {
        match from_edge_list("2 1\n0 0") {
            Err(GraphError::SelfLoop { line, vertex }) => {
                assert_eq!(line, 2);
                assert_eq!(vertex, 0);
            }
            other => panic!("expected self-loop error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_and_range_and_malformed() {
        assert!(matches!(
            from_edge_list("3 2\n0 1\n1 0"),
            Err(GraphError::DuplicateEdge { line: 3, u: 0, v: 1 })
        ));
        assert!(matches!(
            from_edge_list("3 1\n0 7"),
            Err(GraphError::VertexOutOfRange { line: 2, vertex: 7, n: 3 })
        ));
        assert!(matches!(from_edge_list("3 1\nx y"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(matches!(from_edge_list("3 2\n0 1"), Err(GraphError::EdgeCountMismatch { expected: 2, found: 1 })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = from_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        let text = g.to_edge_list();
        let h = from_edge_list(&text).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn set_counting_matches_naive() {
        let g = from_edge_list("6 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3").unwrap();
        let u = VertexSet::from_indices(6, &[0, 1, 3]);
        assert_eq!(g.edges_within(&u), 2); // 0-1, 0-3
        let w = VertexSet::from_indices(6, &[2, 5]);
        assert_eq!(g.edges_between(&u, &w), 3); // 1-2, 2-3, 0-5
    }

    #[test]
    fn complement_degrees() {
        let g = from_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        let c = g.complement();
        assert_eq!(c.m(), 5);
        assert!(c.degrees().iter().all(|&d| d == 2));
        c.check_invariants().unwrap();
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::from_indices(70, &[0, 63, 64, 69]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64));
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.complement().len(), 67);
        assert_eq!(s.to_indices(), vec![0, 63, 69]);
    }
}
