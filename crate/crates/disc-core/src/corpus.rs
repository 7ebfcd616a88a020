//! Built-in graph corpus for the verification suite and tests: the named
//! small graphs plus seeded random families. Everything here is
//! deterministic per seed.

use crate::graph::{gen_blowup, gen_named, gen_random_regular, Graph, GraphBuilder, NamedFamily};
use crate::rng::SeededRng;

pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// Uniform random graph with exactly min(m, C(n,2)) edges.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let mut rng = SeededRng::new(seed);
    rng.shuffle(&mut pairs);
    let mut builder = GraphBuilder::new(n);
    for &(u, v) in pairs.iter().take(m.min(pairs.len())) {
        builder.add_edge(u, v).expect("pairs are distinct");
    }
    builder.build()
}

/// Paley graph on a prime q = 1 mod 4: x ~ y iff x - y is a nonzero square.
pub fn paley(q: usize) -> Graph {
    assert!(q % 4 == 1, "paley requires q = 1 mod 4");
    let squares: Vec<bool> = {
        let mut sq = vec![false; q];
        for x in 1..q {
            sq[x * x % q] = true;
        }
        sq
    };
    let mut builder = GraphBuilder::new(q);
    for u in 0..q {
        for v in (u + 1)..q {
            if squares[(v - u) % q] {
                builder.add_edge(u, v).expect("fresh");
            }
        }
    }
    builder.build()
}

/// The named graphs referenced throughout the test corpus.
pub fn named_graphs() -> Vec<CorpusEntry> {
    let mk = |name: &str, g: Graph| CorpusEntry { name: name.into(), graph: g };
    vec![
        mk("k3", gen_named(&NamedFamily::Complete { n: 3 }).unwrap()),
        mk("k4", gen_named(&NamedFamily::Complete { n: 4 }).unwrap()),
        mk("k6", gen_named(&NamedFamily::Complete { n: 6 }).unwrap()),
        mk("c4", gen_named(&NamedFamily::Cycle { n: 4 }).unwrap()),
        mk("c5", gen_named(&NamedFamily::Cycle { n: 5 }).unwrap()),
        mk("c9", gen_named(&NamedFamily::Cycle { n: 9 }).unwrap()),
        mk("k33", gen_named(&NamedFamily::CompleteBipartite { a: 3, b: 3 }).unwrap()),
        mk("k45", gen_named(&NamedFamily::CompleteBipartite { a: 4, b: 5 }).unwrap()),
        mk("turan_6_3", gen_named(&NamedFamily::Turan { n: 6, r: 3 }).unwrap()),
        mk("turan_10_4", gen_named(&NamedFamily::Turan { n: 10, r: 4 }).unwrap()),
        mk("petersen", gen_named(&NamedFamily::Petersen).unwrap()),
        mk("paley13", paley(13)),
        mk("blowup_c5_2", gen_blowup(&gen_named(&NamedFamily::Cycle { n: 5 }).unwrap(), 2).unwrap()),
    ]
}

/// Seeded random graphs with n in [4, max_n] and a spread of densities.
pub fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<CorpusEntry> {
    let densities = [2usize, 3, 5, 7, 9]; // numerators over 10
    (0..count)
        .map(|i| {
            let n = 4 + (i * 5 + seed as usize) % (max_n - 3);
            let pairs = crate::choose2(n) as usize;
            let m = pairs * densities[i % densities.len()] / 10;
            CorpusEntry {
                name: format!("random_n{n}_i{i}"),
                graph: random_graph(n, m, seed.wrapping_add(i as u64 * 7919)),
            }
        })
        .collect()
}

/// Seeded random regular graphs over a degree spread.
pub fn regular_corpus(seed: u64) -> Vec<CorpusEntry> {
    let shapes = [(8usize, 3usize), (10, 4), (12, 3), (12, 6), (14, 5), (16, 4), (20, 6), (24, 9)];
    shapes
        .iter()
        .enumerate()
        .map(|(i, &(n, d))| CorpusEntry {
            name: format!("regular_n{n}_d{d}"),
            graph: gen_random_regular(n, d, seed.wrapping_add(i as u64)).expect("valid shape"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_satisfy_graph_invariants() {
        for entry in named_graphs().iter().chain(&random_corpus(20, 14, 1)).chain(&regular_corpus(2)) {
            entry.graph.check_invariants().unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        }
    }

    #[test]
    fn paley13_is_strongly_regular_6_2_3() {
        let g = paley(13);
        assert!(g.degrees().iter().all(|&d| d == 6));
        for u in 0..13 {
            for v in (u + 1)..13 {
                let common = g.common_neighbors(u, v);
                if g.has_edge(u, v) {
                    assert_eq!(common, 2);
                } else {
                    assert_eq!(common, 3);
                }
            }
        }
    }

    #[test]
    fn random_graph_deterministic() {
        assert_eq!(random_graph(10, 20, 3), random_graph(10, 20, 3));
        assert_ne!(random_graph(10, 20, 3), random_graph(10, 20, 4));
    }
}
