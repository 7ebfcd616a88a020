//! Maps module errors onto the CLI exit-code contract: user-facing guard
//! violations exit 2, internal invariant failures exit 3.

use disc_core::certificates::CertError;
use disc_core::exact::OracleError;
use disc_core::graph::GraphError;
use disc_core::linalg::LinalgError;
use disc_core::rounding::RoundError;
use disc_core::sdp::SdpError;
use disc_core::spectral::SpectralError;

use crate::output::CliError;

pub fn graph_err(e: GraphError) -> CliError {
    CliError::guard(e.to_string())
}

pub fn oracle_err(e: OracleError) -> CliError {
    CliError::guard(e.to_string())
}

pub fn spectral_err(e: SpectralError) -> CliError {
    match e {
        SpectralError::InvariantViolation(_) | SpectralError::Linalg(LinalgError::NonConvergence { .. }) => {
            CliError::invariant(e.to_string())
        }
        _ => CliError::guard(e.to_string()),
    }
}

pub fn cert_err(e: CertError) -> CliError {
    match e {
        CertError::Precondition(_) | CertError::DimensionMismatch { .. } => CliError::guard(e.to_string()),
        CertError::Spectral(inner) => spectral_err(inner),
        _ => CliError::invariant(e.to_string()),
    }
}

pub fn round_err(e: RoundError) -> CliError {
    CliError::guard(e.to_string())
}

pub fn sdp_err(e: SdpError) -> CliError {
    match e {
        SdpError::UpperBoundViolation { .. } => CliError::invariant(e.to_string()),
        SdpError::RankTooSmall(_) => CliError::guard(e.to_string()),
        SdpError::Round(inner) => round_err(inner),
    }
}
