//! Output plumbing: atomic file writes and failure-coded errors.
//!
//! Files are written to a temp sibling and renamed into place, so a failed
//! run never leaves a partial artifact behind.

use std::fs;
use std::path::Path;
use std::process;

/// Exit code 2: guard or precondition violation (bad input, budget).
pub const EXIT_GUARD: i32 = 2;
/// Exit code 3: internal invariant failure (residuals, PSD, bound checks).
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn guard(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: EXIT_GUARD }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: EXIT_INVARIANT }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension(format!("tmp.{}", process::id()));
    fs::write(&tmp, contents)
        .map_err(|e| CliError::guard(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::guard(format!("cannot move output into place at {}: {e}", path.display()))
    })
}

/// Emits JSON to stdout and optionally to `--out` (pretty in both).
pub fn emit_json(value: &serde_json::Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = format!("{:#}\n", value);
    print!("{text}");
    if let Some(path) = out {
        write_atomic(path, text.as_bytes())?;
    }
    Ok(())
}
