//! Generator spec strings: reproducible graph provenance inside output
//! files. Examples: `petersen`, `c5`, `k4`, `k3x3`, `cycle:n=7`,
//! `complete:n=6`, `complete_bipartite:a=3,b=4`, `turan:n=10,r=4`,
//! `rr:n=500,d=22,seed=7`, `blowup:c5,k=100`.

use disc_core::graph::{gen_blowup, gen_named, gen_random_regular, Graph, NamedFamily};

pub fn parse_gen_spec(spec: &str) -> Result<Graph, String> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("blowup:") {
        let (base, params) = rest
            .split_once(',')
            .ok_or_else(|| format!("blowup spec `{spec}` needs `base,k=<int>`"))?;
        let k = parse_kv(params, "k")?;
        let base_graph = parse_gen_spec(base)?;
        return gen_blowup(&base_graph, k).map_err(|e| e.to_string());
    }
    if let Some(rest) = spec.strip_prefix("rr:") {
        let n = parse_kv_in(rest, "n")?;
        let d = parse_kv_in(rest, "d")?;
        let seed = parse_kv_in(rest, "seed")? as u64;
        return gen_random_regular(n, d, seed).map_err(|e| e.to_string());
    }
    if let Some(rest) = spec.strip_prefix("cycle:") {
        return named(NamedFamily::Cycle { n: parse_kv_in(rest, "n")? });
    }
    if let Some(rest) = spec.strip_prefix("complete:") {
        return named(NamedFamily::Complete { n: parse_kv_in(rest, "n")? });
    }
    if let Some(rest) = spec.strip_prefix("complete_bipartite:") {
        return named(NamedFamily::CompleteBipartite {
            a: parse_kv_in(rest, "a")?,
            b: parse_kv_in(rest, "b")?,
        });
    }
    if let Some(rest) = spec.strip_prefix("turan:") {
        return named(NamedFamily::Turan { n: parse_kv_in(rest, "n")?, r: parse_kv_in(rest, "r")? });
    }
    if spec == "petersen" {
        return named(NamedFamily::Petersen);
    }
    // Short aliases: cN, kN, kAxB.
    if let Some(n) = spec.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        return named(NamedFamily::Cycle { n });
    }
    if let Some(rest) = spec.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once('x') {
            if let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) {
                return named(NamedFamily::CompleteBipartite { a, b });
            }
        } else if let Ok(n) = rest.parse::<usize>() {
            return named(NamedFamily::Complete { n });
        }
    }
    Err(format!("unrecognized generator spec `{spec}`"))
}

fn named(family: NamedFamily) -> Result<Graph, String> {
    gen_named(&family).map_err(|e| e.to_string())
}

fn parse_kv(pair: &str, key: &str) -> Result<usize, String> {
    let (k, v) = pair.split_once('=').ok_or_else(|| format!("expected `{key}=<int>`, got `{pair}`"))?;
    if k.trim() != key {
        return Err(format!("expected key `{key}`, got `{k}`"));
    }
    v.trim().parse().map_err(|_| format!("invalid integer `{v}` for `{key}`"))
}

fn parse_kv_in(params: &str, key: &str) -> Result<usize, String> {
    for pair in params.split(',') {
        if let Some((k, v)) = pair.split_once('=') {
            if k.trim() == key {
                return v.trim().parse().map_err(|_| format!("invalid integer `{v}` for `{key}`"));
            }
        }
    }
    Err(format!("missing `{key}=` in `{params}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_and_long_forms() {
        assert_eq!(parse_gen_spec("c5").unwrap().n(), 5);
        assert_eq!(parse_gen_spec("cycle:n=5").unwrap(), parse_gen_spec("c5").unwrap());
        assert_eq!(parse_gen_spec("k4").unwrap().m(), 6);
        assert_eq!(parse_gen_spec("k3x3").unwrap().m(), 9);
        assert_eq!(parse_gen_spec("petersen").unwrap().n(), 10);
        assert_eq!(parse_gen_spec("turan:n=6,r=3").unwrap().m(), 12);
        let g = parse_gen_spec("rr:n=20,d=3,seed=7").unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
        let b = parse_gen_spec("blowup:c5,k=4").unwrap();
        assert_eq!(b.n(), 20);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_gen_spec("frob:n=3").is_err());
        assert!(parse_gen_spec("rr:n=5,d=3,seed=1").is_err()); // odd nd
        assert!(parse_gen_spec("blowup:c5").is_err());
    }
}
