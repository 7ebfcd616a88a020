//! Toolkit for graph positive discrepancy: exact subset oracles, spectral
//! certificates for the semidefinite relaxation, low-rank SDP ascent, and
//! hyperplane rounding, plus a self-check suite over a built-in corpus.
//!
//! Numeric kernels are generic over the scalar type via [`real::Real`]
//! (any `num_traits::Float` qualifies); combinatorial oracles use exact
//! rational arithmetic. The aliases below fix the concrete types used by
//! the CLI and the test suites.

pub mod certificates;
pub mod corpus;
pub mod exact;
pub mod graph;
pub mod linalg;
pub mod real;
pub mod rng;
pub mod rounding;
pub mod sdp;
pub mod spectral;
pub mod verify;

/// Default floating-point scalar for spectral and optimization code.
pub type Scalar = f64;

/// Exact scalar for discrepancy oracles. `i128` components keep every
/// intermediate product exact at the supported graph sizes (n <= 4000).
pub type Rational = num_rational::Ratio<i128>;

pub type Matrix64 = linalg::Matrix<Scalar>;
pub type Spectrum64 = spectral::Spectrum<Scalar>;
pub type SpectralSummary64 = spectral::SpectralSummary<Scalar>;
pub type Certificate64 = certificates::Certificate<Scalar>;
pub type RoundingEnsemble64 = rounding::RoundingEnsemble<Scalar>;
pub type FactorState64 = sdp::FactorState<Scalar>;

pub use graph::{Graph, GraphBuilder, VertexSet};

/// Binomial coefficient C(n, 2) without overflow at the supported sizes.
pub fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Formats a float with 12 significant digits, '.' decimal separator and no
/// locale dependence (like C's `%.12g`). All CSV output goes through this,
/// keeping files byte-identical across runs and platforms.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let body = if exp >= 0 && exp < 12 {
        let point = exp as usize + 1;
        if digits.len() > point {
            format!("{}.{}", &digits[..point], &digits[point..])
        } else {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        }
    } else if (-4..0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if digits.len() > 1 {
        format!("{}.{}e{}", &digits[..1], &digits[1..], exp)
    } else {
        format!("{digits}e{exp}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Edge density m / C(n,2) as an exact rational; zero for n < 2.
pub fn density(graph: &Graph) -> Rational {
    let pairs = choose2(graph.n());
    if pairs == 0 {
        Rational::new(0, 1)
    } else {
        Rational::new(graph.m() as i128, pairs as i128)
    }
}
