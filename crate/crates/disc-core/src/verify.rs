//! Self-check suite: every module's invariants executed against the
//! built-in corpus. This backs the `verify` CLI command; the acceptance
//! tests run the heavier configurations directly.
//!
//! Setting `DISCLAB_FAULT_INJECT=spectrum` corrupts one eigenvalue before
//! validation inside the spectrum check, proving the harness actually
//! detects a broken eigensolver.

use serde_json::json;

use crate::certificates::{
    cert_cube, cert_dense, cert_energy_value, cert_projector, cert_sandwich, cert_square_value,
};
use crate::corpus;
use crate::exact::{
    deficit_exact, disc1_plus_exact, disc_minus_exact, disc_pair, disc_plus_exact, disc_set,
    rational_to_f64,
};
use crate::graph::{gen_blowup, gen_named, gen_random_regular, NamedFamily, VertexSet};
use crate::linalg::{jacobi_eigen, JacobiConfig, Matrix};
use crate::rng::SeededRng;
use crate::rounding::{
    arcsin_bounds_check, build_sparse_vectors, disc_signs_exact, expected_disc,
    hyperplane_round_trace, pm1_to_subset, set_to_bisection,
};
use crate::sdp::{sdp_gap_report, sdp_solve, SdpConfig};
use crate::spectral::{
    check_lambda_triangle_identity, check_product_bound, eigendecompose, spectral_summary,
    srg_lambda2, SrgParams,
};
use crate::{Rational, Scalar};

#[derive(Clone, Debug, serde::Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "passed": self.passed,
            "checks": self.checks,
        })
    }
}

struct Checker {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn finish(self, name: &'static str) -> CheckOutcome {
        CheckOutcome {
            passed: self.failures.is_empty(),
            detail: self.notes.join("; "),
            failures: self.failures,
            name,
        }
    }
}

/// Runs every check whose name contains `filter` (all when `None`).
pub fn run(filter: Option<&str>) -> VerifyReport {
    let all: Vec<(&'static str, fn() -> CheckOutcome)> = vec![
        ("graph-invariants", check_graph_invariants),
        ("blowup-spectral-law", check_blowup_spectral_law),
        ("prune-max-degree", check_prune),
        ("zero-sum-identity", check_zero_sum),
        ("regular-complement-identity", check_regular_complement),
        ("disc-sandwich", check_disc_sandwich),
        ("surplus-linkage", check_surplus_linkage),
        ("spectrum-invariants", check_spectrum_invariants),
        ("lambda-triangle", check_lambda_triangle),
        ("product-bound", check_product_bound_corpus),
        ("srg-agreement", check_srg_agreement),
        ("certificate-soundness", check_certificate_soundness),
        ("xy-identity", check_xy_identity),
        ("hadamard-psd", check_hadamard_psd),
        ("rounding-ensemble", check_rounding_ensemble),
        ("rounding-montecarlo", check_rounding_montecarlo),
        ("pm1-guarantee", check_pm1_guarantee),
        ("bisection-linkage", check_bisection_linkage),
        ("sdp-invariants", check_sdp_invariants),
        ("dense-cert", check_dense_cert),
        ("sandwich-cert", check_sandwich_cert),
    ];
    let checks: Vec<CheckOutcome> = all
        .into_iter()
        .filter(|(name, _)| filter.map(|f| name.contains(f)).unwrap_or(true))
        .map(|(_, f)| f())
        .collect();
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}

fn small_corpus() -> Vec<corpus::CorpusEntry> {
    let mut entries = corpus::named_graphs();
    entries.extend(corpus::random_corpus(20, 14, 11));
    entries.extend(corpus::regular_corpus(5));
    entries
}

fn check_graph_invariants() -> CheckOutcome {
    let mut c = Checker::new();
    let entries = small_corpus();
    for entry in &entries {
        if let Err(e) = entry.graph.check_invariants() {
            c.require(false, || format!("{}: {e}", entry.name));
        }
    }
    c.note(format!("{} graphs", entries.len()));
    c.finish("graph-invariants")
}

fn check_blowup_spectral_law() -> CheckOutcome {
    let mut c = Checker::new();
    for (name, base, k) in [
        ("c5", gen_named(&NamedFamily::Cycle { n: 5 }).unwrap(), 3usize),
        ("k4", gen_named(&NamedFamily::Complete { n: 4 }).unwrap(), 4),
        ("petersen", gen_named(&NamedFamily::Petersen).unwrap(), 2),
    ] {
        let blown = gen_blowup(&base, k).unwrap();
        let base_spec = eigendecompose::<Scalar>(&base).unwrap();
        let blown_spec = eigendecompose::<Scalar>(&blown).unwrap();
        let mut expected: Vec<f64> = base_spec.eigenvalues.iter().map(|l| l * k as f64).collect();
        expected.extend(std::iter::repeat(0.0).take(blown.n() - base.n()));
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (i, (got, want)) in blown_spec.eigenvalues.iter().zip(&expected).enumerate() {
            c.require((got - want).abs() <= 1e-7 * (1.0 + want.abs()), || {
                format!("blowup({name},{k}) eigenvalue {i}: {got} vs {want}")
            });
        }
    }
    c.finish("blowup-spectral-law")
}

fn check_prune() -> CheckOutcome {
    let mut c = Checker::new();
    let delta = Rational::new(1, 4);
    for entry in small_corpus() {
        let g = &entry.graph;
        let report = match crate::graph::prune_high_degree(g, delta) {
            Ok(r) => r,
            Err(e) => {
                c.require(false, || format!("{}: {e}", entry.name));
                continue;
            }
        };
        c.require(report.pruned.m() == g.m() - report.f, || {
            format!("{}: pruned edge count mismatch", entry.name)
        });
        let bound = 2 * g.m() as i128 * (delta.denom() + delta.numer());
        for v in 0..g.n() {
            let in_high = report.high_set.contains(v);
            let above = g.degree(v) as i128 * g.n() as i128 * delta.denom() > bound;
            c.require(in_high == above, || format!("{}: threshold split wrong at {v}", entry.name));
            let pruned_lhs = report.pruned.degree(v) as i128 * g.n() as i128 * delta.denom();
            c.require(pruned_lhs <= bound, || {
                format!("{}: pruned degree above (1+delta)d at {v}", entry.name)
            });
        }
    }
    c.finish("prune-max-degree")
}

fn random_subset(n: usize, rng: &mut SeededRng) -> VertexSet {
    let mut set = VertexSet::empty(n);
    for v in 0..n {
        if rng.next_u64() & 1 == 1 {
            set.insert(v);
        }
    }
    set
}

fn check_zero_sum() -> CheckOutcome {
    let mut c = Checker::new();
    let mut rng = SeededRng::new(100);
    let zero = Rational::new(0, 1);
    let mut graphs = 0;
    for entry in corpus::named_graphs().iter().chain(corpus::random_corpus(50, 14, 23).iter()) {
        let g = &entry.graph;
        graphs += 1;
        for _ in 0..50 {
            let u = random_subset(g.n(), &mut rng);
            let uc = u.complement();
            let total = disc_set(g, &u).unwrap() + disc_pair(g, &u, &uc).unwrap() + disc_set(g, &uc).unwrap();
            c.require(total == zero, || format!("{}: zero-sum violated ({total})", entry.name));
        }
    }
    c.note(format!("{graphs} graphs x 50 subsets"));
    c.finish("zero-sum-identity")
}

fn check_regular_complement() -> CheckOutcome {
    let mut c = Checker::new();
    let mut rng = SeededRng::new(200);
    for entry in small_corpus() {
        let g = &entry.graph;
        if !g.is_regular() {
            continue;
        }
        for _ in 0..50 {
            let u = random_subset(g.n(), &mut rng);
            let uc = u.complement();
            let du = disc_set(g, &u).unwrap();
            let duc = disc_set(g, &uc).unwrap();
            let cross = disc_pair(g, &u, &uc).unwrap();
            c.require(du == duc, || format!("{}: disc(U) != disc(U^c)", entry.name));
            c.require(du * Rational::new(2, 1) == -cross, || {
                format!("{}: disc(U) != -disc(U,U^c)/2", entry.name)
            });
        }
    }
    c.finish("regular-complement-identity")
}

fn check_disc_sandwich() -> CheckOutcome {
    let mut c = Checker::new();
    let mut count = 0;
    for entry in small_corpus() {
        let g = &entry.graph;
        if g.n() > 12 {
            continue;
        }
        count += 1;
        let plus = disc_plus_exact(g, false).unwrap().value;
        let one = disc1_plus_exact(g, false).unwrap().value;
        c.require(plus <= one, || format!("{}: disc+ > disc1+", entry.name));
        c.require(one <= plus * Rational::new(4, 1), || {
            format!("{}: disc1+ > 4 disc+ ({one} vs 4 * {plus})", entry.name)
        });
    }
    c.note(format!("{count} graphs with n <= 12"));
    c.finish("disc-sandwich")
}

fn check_surplus_linkage() -> CheckOutcome {
    let mut c = Checker::new();
    for entry in small_corpus() {
        let g = &entry.graph;
        if !g.is_regular() || g.n() > 20 {
            continue;
        }
        let plus = disc_plus_exact(g, false).unwrap().value;
        let minus = disc_minus_exact(g, false).unwrap().value;
        let surplus = crate::exact::surplus_exact(g, false).unwrap().value;
        // Exact all-n form of the surplus linkage for regular graphs:
        // disc- >= surplus/2 - m/(4(n-1)); the uncorrected surplus/2 <= disc-
        // needs n >= 100 and is not assertable at oracle scale.
        let correction = Rational::new(g.m() as i128, 4 * (g.n() as i128 - 1));
        c.require(surplus <= (minus + correction) * Rational::new(2, 1), || {
            format!("{}: surplus/2 - m/(4(n-1)) > disc-", entry.name)
        });
        if g.n() % 2 == 0 {
            let deficit = deficit_exact(g, false).unwrap().value;
            c.require(deficit <= plus * Rational::new(2, 1), || {
                format!("{}: deficit/2 > disc+", entry.name)
            });
        }
        let comp_plus = disc_plus_exact(&g.complement(), false).unwrap().value;
        c.require(minus == comp_plus, || {
            format!("{}: disc- != disc+ of complement", entry.name)
        });
    }
    c.finish("surplus-linkage")
}

fn check_spectrum_invariants() -> CheckOutcome {
    let mut c = Checker::new();
    let inject = std::env::var("DISCLAB_FAULT_INJECT").ok().as_deref() == Some("spectrum");
    for entry in small_corpus() {
        let g = &entry.graph;
        match eigendecompose::<Scalar>(g) {
            Ok(mut spectrum) => {
                if inject {
                    spectrum.eigenvalues[0] += 1e-3;
                    spectrum.residual += 1e-3;
                }
                if let Err(e) = spectrum.validate(g) {
                    c.require(false, || format!("{}: {e}", entry.name));
                }
            }
            Err(e) => c.require(false, || format!("{}: {e}", entry.name)),
        }
    }
    if inject {
        c.note("fault injection active".into());
    }
    c.finish("spectrum-invariants")
}

fn check_lambda_triangle() -> CheckOutcome {
    let mut c = Checker::new();
    let mut count = 0;
    // Named regular graphs plus seeded random regular instances: 30 total.
    let mut graphs: Vec<(String, crate::Graph)> = vec![
        ("k4".into(), gen_named(&NamedFamily::Complete { n: 4 }).unwrap()),
        ("petersen".into(), gen_named(&NamedFamily::Petersen).unwrap()),
        ("k33".into(), gen_named(&NamedFamily::CompleteBipartite { a: 3, b: 3 }).unwrap()),
        ("c5".into(), gen_named(&NamedFamily::Cycle { n: 5 }).unwrap()),
        ("turan_6_3".into(), gen_named(&NamedFamily::Turan { n: 6, r: 3 }).unwrap()),
        ("paley13".into(), corpus::paley(13)),
    ];
    for i in 0..24u64 {
        let n = 10 + (i as usize % 6) * 4;
        let d = 3 + (i as usize % 4);
        let (n, d) = if (n * d) % 2 == 1 { (n, d + 1) } else { (n, d) };
        graphs.push((format!("rr_{n}_{d}_{i}"), gen_random_regular(n, d, 900 + i).unwrap()));
    }
    for (name, g) in graphs {
        match check_lambda_triangle_identity::<Scalar>(&g) {
            Ok(report) => {
                count += 1;
                c.require(report.passed, || {
                    format!(
                        "{name}: Lambda {} vs d^3 - T {} (rel {})",
                        report.big_lambda_spectral, report.d_cubed_minus_t, report.relative_difference
                    )
                });
            }
            Err(e) => c.require(false, || format!("{name}: {e}")),
        }
    }
    // All graphs (regular or not): Lambda = lambda_1^3 - trace(A^3), with
    // trace(A^3) = T counted combinatorially.
    for entry in corpus::random_corpus(10, 14, 31) {
        let g = &entry.graph;
        let spectrum = eigendecompose::<Scalar>(g).unwrap();
        let summary = spectral_summary(&spectrum, g);
        let l1 = summary.lambda_1;
        let combinatorial = l1 * l1 * l1 - crate::spectral::triangle_hom_count(g) as f64;
        let scale = summary.big_lambda.abs().max(combinatorial.abs()).max(1.0);
        c.require((summary.big_lambda - combinatorial).abs() / scale <= 1e-6, || {
            format!("{}: Lambda != lambda1^3 - T", entry.name)
        });
    }
    c.note(format!("{count} regular instances + 10 general"));
    c.finish("lambda-triangle")
}

fn check_product_bound_corpus() -> CheckOutcome {
    let mut c = Checker::new();
    let mut count = 0;
    for i in 0..50u64 {
        let n = 20 + (i as usize % 10) * 12;
        let mut d = 3 + (i as usize % 7) * 2;
        if d * 2 > n {
            d = n / 2;
        }
        let (n, d) = if (n * d) % 2 == 1 { (n, d + 1) } else { (n, d) };
        let g = gen_random_regular(n, d, 7000 + i).unwrap();
        match check_product_bound::<Scalar>(&g) {
            Ok(report) => {
                count += 1;
                c.require(report.passed, || {
                    format!("rr({n},{d},{i}): (1+l2)|ln| = {} < d/4 = {}", report.lhs, report.rhs)
                });
            }
            Err(e) => c.require(false, || format!("rr({n},{d},{i}): {e}")),
        }
    }
    c.note(format!("{count} regular instances"));
    c.finish("product-bound")
}

fn check_srg_agreement() -> CheckOutcome {
    let mut c = Checker::new();
    for (name, g, params) in [
        ("petersen", gen_named(&NamedFamily::Petersen).unwrap(), SrgParams { n: 10, d: 3, r: 0, s: 1 }),
        ("paley13", corpus::paley(13), SrgParams { n: 13, d: 6, r: 2, s: 3 }),
    ] {
        let formula = srg_lambda2(&params).unwrap();
        let spectrum = eigendecompose::<Scalar>(&g).unwrap();
        let lambda_2 = spectrum.eigenvalues[1];
        let lambda_n = *spectrum.eigenvalues.last().unwrap();
        c.require((formula.lambda_2 - lambda_2).abs() <= 1e-8, || {
            format!("{name}: lambda2 formula {} vs eigensolver {lambda_2}", formula.lambda_2)
        });
        c.require((formula.lambda_n - lambda_n).abs() <= 1e-8, || {
            format!("{name}: lambdaN formula {} vs eigensolver {lambda_n}", formula.lambda_n)
        });
    }
    c.finish("srg-agreement")
}

fn check_certificate_soundness() -> CheckOutcome {
    let mut c = Checker::new();
    for entry in small_corpus() {
        let g = &entry.graph;
        let spectrum = match eigendecompose::<Scalar>(g) {
            Ok(s) => s,
            Err(e) => {
                c.require(false, || format!("{}: {e}", entry.name));
                continue;
            }
        };
        let summary = spectral_summary(&spectrum, g);
        let mut bounds = vec![];
        if let Ok(cert) = cert_projector(g, &spectrum) {
            c.require(cert.check_feasible().is_ok(), || format!("{}: projector not PSD", entry.name));
            bounds.push(cert.bound);
        }
        if g.max_degree() >= 1 {
            if let Ok(cert) = cert_cube(g, &spectrum) {
                c.require(cert.check_feasible().is_ok(), || format!("{}: cube not PSD", entry.name));
                bounds.push(cert.bound);
            }
        }
        bounds.push(cert_square_value(&summary, g.max_degree()));
        bounds.push(cert_energy_value(&summary));
        let ub = crate::certificates::upper_bounds(g, &spectrum);
        if ub.applicable {
            let tol = 1e-6 * g.n() as f64;
            for b in &bounds {
                c.require(*b <= ub.lambda2_n + tol, || {
                    format!("{}: bound {b} exceeds lambda2 n = {}", entry.name, ub.lambda2_n)
                });
            }
            if g.n() <= 14 {
                let plus = rational_to_f64(disc_plus_exact(g, false).unwrap().value);
                c.require(plus <= ub.half_lambda2_n_plus_d + 1e-6, || {
                    format!("{}: disc+ {plus} exceeds (l2/2)n + d = {}", entry.name, ub.half_lambda2_n_plus_d)
                });
            }
        }
    }
    c.finish("certificate-soundness")
}

fn check_xy_identity() -> CheckOutcome {
    let mut c = Checker::new();
    let mut rng = SeededRng::new(321);
    for (name, g) in [
        ("petersen", gen_named(&NamedFamily::Petersen).unwrap()),
        ("paley13", corpus::paley(13)),
    ] {
        let spectrum = eigendecompose::<Scalar>(&g).unwrap();
        for _ in 0..10 {
            let n = g.n();
            let alphas: Vec<f64> = (0..n).map(|_| rng.uniform_f64() * 2.0 - 1.0).collect();
            let betas: Vec<f64> = (0..n).map(|_| rng.uniform_f64() * 2.0 - 1.0).collect();
            let x = crate::certificates::expand_eigen_combination(&spectrum, &alphas);
            let y = crate::certificates::expand_eigen_combination(&spectrum, &betas);
            let expected: f64 = alphas.iter().zip(&betas).map(|(a, b)| a * b).sum();
            let ones_form = x.hadamard(&y).sum_entries();
            let inner_form = x.inner(&y);
            let scale = expected.abs().max(1.0);
            c.require((ones_form - expected).abs() / scale <= 1e-6, || {
                format!("{name}: 1^T(XoY)1 = {ones_form} vs sum ab = {expected}")
            });
            c.require((inner_form - expected).abs() / scale <= 1e-6, || {
                format!("{name}: <X,Y> = {inner_form} vs sum ab = {expected}")
            });
        }
    }
    c.finish("xy-identity")
}

fn check_hadamard_psd() -> CheckOutcome {
    let mut c = Checker::new();
    let mut rng = SeededRng::new(555);
    for trial in 0..50 {
        let n = 4 + trial % 57;
        let make_psd = |rng: &mut SeededRng| {
            let k = 2 + n / 2;
            let mut w = Matrix::<Scalar>::zeros(n, k);
            for i in 0..n {
                for j in 0..k {
                    w.set(i, j, rng.uniform_f64() * 2.0 - 1.0);
                }
            }
            Matrix::from_fn(n, n, |i, j| w.row(i).iter().zip(w.row(j)).map(|(&a, &b)| a * b).sum())
        };
        let x = make_psd(&mut rng);
        let y = make_psd(&mut rng);
        let (vals, _) = jacobi_eigen(x.hadamard(&y), &JacobiConfig::default()).unwrap();
        let min = vals.into_iter().fold(f64::INFINITY, f64::min);
        c.require(min >= -1e-8, || format!("trial {trial} (n = {n}): min eig {min}"));
    }
    c.finish("hadamard-psd")
}

fn check_rounding_ensemble() -> CheckOutcome {
    let mut c = Checker::new();
    let g = gen_random_regular(100, 8, 41).unwrap();
    let ens = build_sparse_vectors::<Scalar>(&g, 1e-4);
    let delta_max = g.max_degree() as f64;
    for u in 0..g.n() {
        c.require((ens.row_norm(u) - 1.0).abs() <= 1e-10, || format!("row {u} not unit"));
        for v in (u + 1)..g.n() {
            let inner = ens.inner(&g, u, v);
            if g.has_edge(u, v) {
                c.require(inner >= ens.z / 2.0, || format!("adjacent ({u},{v}) inner {inner} < z/2"));
            } else {
                c.require(inner <= delta_max * ens.z * ens.z + 1e-15, || {
                    format!("non-adjacent ({u},{v}) inner {inner} > Delta z^2")
                });
            }
        }
    }
    match arcsin_bounds_check(&ens, &g) {
        Ok(report) => c.require(report.passed, || "arcsin bracket failed".into()),
        Err(e) => c.require(false, || format!("arcsin check: {e}")),
    }
    // Aggregate common-neighbor count: sum over ordered pairs u != v of
    // |N(u) cap N(v)| is at most n Delta^2 (each vertex contributes at most
    // Delta^2 ordered co-neighbor pairs).
    let mut aggregate = 0u64;
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u != v {
                aggregate += g.common_neighbors(u, v) as u64;
            }
        }
    }
    let delta = g.max_degree() as u64;
    c.require(aggregate <= g.n() as u64 * delta * delta, || {
        format!("common-neighbor aggregate {aggregate} exceeds n Delta^2")
    });
    c.finish("rounding-ensemble")
}

fn check_rounding_montecarlo() -> CheckOutcome {
    let mut c = Checker::new();
    let g = gen_random_regular(300, 8, 77).unwrap();
    let ens = build_sparse_vectors::<Scalar>(&g, 1e-4);
    let expected = expected_disc(&ens, &g).unwrap();
    let trials = 1500;
    let (_, trace) = hyperplane_round_trace(&ens, &g, trials, 9).unwrap();
    let values: Vec<f64> = trace.iter().map(|r| rational_to_f64(*r)).collect();
    let mean = values.iter().sum::<f64>() / trials as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
    let se = (var / trials as f64).sqrt();
    c.note(format!("mean {mean:.4}, expected {expected:.4}, se {se:.4}"));
    c.require((mean - expected).abs() <= 3.0 * se, || {
        format!("Monte-Carlo mean {mean} outside 3 se of {expected}")
    });
    c.finish("rounding-montecarlo")
}

fn check_pm1_guarantee() -> CheckOutcome {
    let mut c = Checker::new();
    for entry in small_corpus() {
        let g = &entry.graph;
        if g.n() > 12 {
            continue;
        }
        for mask in 0u64..(1 << g.n()) {
            let signs: Vec<i8> = (0..g.n()).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            let disc_x = disc_signs_exact(g, &signs).unwrap();
            if disc_x > Rational::new(0, 1) {
                let result = pm1_to_subset(g, &signs).unwrap();
                c.require(result.value * Rational::new(4, 1) >= disc_x, || {
                    format!("{}: pm1 guarantee failed at mask {mask}", entry.name)
                });
            }
        }
    }
    c.finish("pm1-guarantee")
}

fn check_bisection_linkage() -> CheckOutcome {
    let mut c = Checker::new();
    // Exact half-size identity on small regular graphs.
    for seed in 0..5u64 {
        let g = gen_random_regular(12, 4, 50 + seed).unwrap();
        for mask in 0u64..(1 << 12) {
            if mask.count_ones() != 6 {
                continue;
            }
            let set = VertexSet::from_indices(12, &(0..12).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>());
            let disc = disc_set(&g, &set).unwrap();
            if disc <= Rational::new(0, 1) {
                continue;
            }
            let result = set_to_bisection(&g, &set, 3, seed).unwrap();
            let correction = Rational::new(4 * 12, 4 * 11);
            c.require(result.value == disc * Rational::new(2, 1) - correction, || {
                format!("half-size bisection identity failed (seed {seed}, mask {mask})")
            });
            break; // one subset per graph suffices here
        }
    }
    // Sampled guarantee on a medium instance.
    let g = gen_random_regular(50, 6, 99).unwrap();
    let ens = build_sparse_vectors::<Scalar>(&g, 1e-4);
    let cut = crate::rounding::hyperplane_round(&ens, &g, 100, 3).unwrap();
    let small_side = if cut.subset.len() <= g.n() / 2 { cut.subset.clone() } else { cut.subset.complement() };
    let disc_u = disc_set(&g, &small_side).unwrap();
    if disc_u > Rational::new(0, 1) {
        let result = set_to_bisection(&g, &small_side, 500, 5).unwrap();
        c.require(result.value * Rational::new(5, 1) >= disc_u, || {
            format!("sampled bisection below disc(U)/5: {} vs {disc_u}", result.value)
        });
    } else {
        c.note("rounded cut non-positive; bisection guarantee vacuous".into());
    }
    c.finish("bisection-linkage")
}

fn check_sdp_invariants() -> CheckOutcome {
    let mut c = Checker::new();
    let mut cert_hits = 0usize;
    let mut cert_total = 0usize;
    let mut relax_hits = 0usize;
    let mut relax_total = 0usize;
    for entry in corpus::regular_corpus(8) {
        let g = &entry.graph;
        let state = sdp_solve::<Scalar>(g, &SdpConfig { seed: 13, max_iters: 1500, ..SdpConfig::default() }).unwrap();
        c.require(state.max_row_norm_seen <= 1.0 + 1e-10, || {
            format!("{}: infeasible iterate (row norm {})", entry.name, state.max_row_norm_seen)
        });
        for w in state.objective_history.windows(2) {
            c.require(w[1] >= w[0] - 1e-12 * (1.0 + w[0].abs()), || {
                format!("{}: objective decreased", entry.name)
            });
        }
        let spectrum = eigendecompose::<Scalar>(g).unwrap();
        match sdp_gap_report(g, &state, &spectrum) {
            Ok(report) => {
                cert_total += 1;
                if report.objective >= report.cert_best - 1e-6 {
                    cert_hits += 1;
                }
            }
            Err(e) => c.require(false, || format!("{}: {e}", entry.name)),
        }
        // Relaxation direction 2d + pdisc >= disc+: logged, not asserted —
        // the solver underestimates pdisc and carries no optimality
        // certificate, so a miss only reflects solver slack.
        if g.n() <= 20 {
            relax_total += 1;
            let plus = rational_to_f64(disc_plus_exact(g, false).unwrap().value);
            if 2.0 * g.avg_degree() + state.objective >= plus - 1e-9 {
                relax_hits += 1;
            }
        }
    }
    c.note(format!("objective >= best certificate on {cert_hits}/{cert_total} instances"));
    c.note(format!("2d + objective >= exact disc+ on {relax_hits}/{relax_total} small instances"));
    c.require(cert_hits * 10 >= cert_total * 9, || {
        format!("solver trailed certificates too often ({cert_hits}/{cert_total})")
    });
    c.finish("sdp-invariants")
}

fn check_dense_cert() -> CheckOutcome {
    let mut c = Checker::new();
    let g = gen_blowup(&gen_named(&NamedFamily::Cycle { n: 5 }).unwrap(), 20).unwrap();
    let spectrum = eigendecompose::<Scalar>(&g).unwrap();
    match cert_dense(&g, &spectrum, 0.1) {
        Ok((cert, diag)) => {
            c.require(cert.check_feasible().is_ok(), || "dense certificate not PSD".into());
            c.require(cert.max_diag <= 2.0 + 1e-8, || format!("max diag {}", cert.max_diag));
            c.require(diag.e_max_diag <= 1.0 + 1e-8, || format!("E diag {}", diag.e_max_diag));
            c.require((diag.inner_ya - diag.inner_ya_expected).abs() <= 1e-6, || {
                format!("<Y,A> = {} vs -Lambda/Delta = {}", diag.inner_ya, diag.inner_ya_expected)
            });
            let scale = diag.disc_zy.abs().max(1.0);
            c.require((diag.disc_zy - diag.disc_zy_identity).abs() / scale <= 1e-6, || {
                "disc(ZoY) identity route disagrees".into()
            });
            c.require(cert.disc_value > 0.0, || format!("disc(X) = {} not positive", cert.disc_value));
        }
        Err(e) => c.require(false, || format!("dense certificate: {e}")),
    }
    c.finish("dense-cert")
}

fn check_sandwich_cert() -> CheckOutcome {
    let mut c = Checker::new();
    for (name, g) in [
        ("petersen", gen_named(&NamedFamily::Petersen).unwrap()),
        ("blowup_c5_20", gen_blowup(&gen_named(&NamedFamily::Cycle { n: 5 }).unwrap(), 20).unwrap()),
    ] {
        let spectrum = eigendecompose::<Scalar>(&g).unwrap();
        match cert_sandwich(&g, &spectrum, 0.1) {
            Ok((cert, report)) => {
                c.require(cert.check_feasible().is_ok(), || format!("{name}: sandwich not PSD"));
                c.require(report.relative_error <= 1e-6, || {
                    format!("{name}: identity relative error {}", report.relative_error)
                });
                let expected = report.inner_ya_expected;
                c.require((report.inner_ya - expected).abs() <= 1e-6 * expected.abs().max(1.0), || {
                    format!("{name}: <Y,A> mismatch")
                });
            }
            Err(e) => c.require(false, || format!("{name}: {e}")),
        }
    }
    c.finish("sandwich-cert")
}
