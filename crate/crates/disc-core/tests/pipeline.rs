//! Cross-module pipeline tests: generate, decompose, certify, solve, round,
//! and check every stage against the next.

use disc_core::certificates::{cert_cube, cert_energy_value, cert_projector, cert_square_value, upper_bounds};
use disc_core::exact::disc_set;
use disc_core::graph::gen_random_regular;
use disc_core::rounding::{build_sparse_vectors, hyperplane_round, set_to_bisection};
use disc_core::sdp::{sdp_gap_report, sdp_round, sdp_solve, SdpConfig};
use disc_core::spectral::{eigendecompose, spectral_summary};
use disc_core::{Rational, Scalar};

#[test]
fn regular_graph_full_pipeline() {
    let g = gen_random_regular(60, 6, 12345).unwrap();
    let spectrum = eigendecompose::<Scalar>(&g).unwrap();
    let summary = spectral_summary(&spectrum, &g);
    let ub = upper_bounds(&g, &spectrum);
    assert!(ub.applicable);
    let tol = 1e-6 * g.n() as f64;

    let projector = cert_projector(&g, &spectrum).unwrap();
    let cube = cert_cube(&g, &spectrum).unwrap();
    let square = cert_square_value(&summary, g.max_degree());
    let energy = cert_energy_value(&summary);
    for bound in [projector.bound, cube.bound, square, energy] {
        assert!(bound <= ub.lambda2_n + tol, "bound {bound} above lambda2 n {}", ub.lambda2_n);
    }

    let state = sdp_solve::<Scalar>(&g, &SdpConfig { seed: 4, ..SdpConfig::default() }).unwrap();
    let gap = sdp_gap_report(&g, &state, &spectrum).unwrap();
    assert!(gap.objective <= gap.upper_lambda2_n + tol);
    assert!(gap.objective >= projector.bound - 1e-6);

    let cut = sdp_round(&g, &state, 60, 7).unwrap();
    assert_eq!(cut.recompute(&g).unwrap(), cut.value);

    // Rounded positive-discrepancy sets convert into bisections.
    let ens = build_sparse_vectors::<Scalar>(&g, 1e-4);
    let rounded = hyperplane_round(&ens, &g, 200, 3).unwrap();
    let small = if rounded.subset.len() <= g.n() / 2 {
        rounded.subset.clone()
    } else {
        rounded.subset.complement()
    };
    if disc_set(&g, &small).unwrap() > Rational::new(0, 1) {
        let bisection = set_to_bisection(&g, &small, 300, 11).unwrap();
        assert_eq!(bisection.subset.len(), g.n() / 2);
        assert_eq!(bisection.recompute(&g).unwrap(), bisection.value);
    }
}

#[test]
fn verify_suite_is_green() {
    let report = disc_core::verify::run(None);
    for check in &report.checks {
        assert!(check.passed, "{} failed: {:?}", check.name, check.failures);
    }
    assert!(report.passed);
}

#[test]
fn verify_filter_runs_subset() {
    let report = disc_core::verify::run(Some("zero-sum"));
    assert_eq!(report.checks.len(), 1);
    assert!(report.passed);
}
