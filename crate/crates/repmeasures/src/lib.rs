//! File formats, text loading and measure reports on top of
//! [`repmeasures_core`]. The `repmeasures` binary drives all of it.
//!
//! File formats and the command line use 1-based text positions; the core
//! API is 0-based.

pub mod error;
pub mod formats;
pub mod report;

use std::path::Path;

pub use error::{Error, Result};
pub use repmeasures_core as core;

use repmeasures_core::{Family, FamilySpec, Text, DEFAULT_BUDGET, FIB_A, FIB_B};

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

pub fn read_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_file(path: &Path, data: &[u8]) -> Result<()> {
    std::fs::write(path, data).map_err(|e| Error::io(path, e))
}

/// Loads a raw text file and appends the sentinel.
pub fn load_text(path: &Path) -> Result<Text> {
    let raw = read_file(path)?;
    Text::from_raw(&raw).map_err(|e| Error::core(path.display().to_string(), e))
}

/// The bytes written for a generated text: the symbols without the
/// sentinel, with the Fibonacci families spelled in `a` and `b`.
pub fn family_file_bytes(spec: &FamilySpec, t: &Text) -> Vec<u8> {
    match spec.family {
        Family::Fibonacci | Family::FibonacciAlt => t
            .raw()
            .iter()
            .map(|&c| match c {
                FIB_A => b'a',
                FIB_B => b'b',
                _ => unreachable!("Fibonacci words are binary"),
            })
            .collect(),
        Family::DeBruijn | Family::Lemma35 => t.raw().to_vec(),
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Text> {
    spec.generate(DEFAULT_BUDGET)
        .map_err(|e| Error::core(family_name(spec), e))
}

/// Short report name such as `fib-k9`, `debruijn-k14-s2` or `lemma35-s8`.
pub fn family_name(spec: &FamilySpec) -> String {
    match spec.family {
        Family::Fibonacci => format!("fib-k{}", spec.k),
        Family::FibonacciAlt => format!("fib-alt-k{}", spec.k),
        Family::DeBruijn => format!("debruijn-k{}-s{}", spec.k, spec.sigma),
        Family::Lemma35 => format!("lemma35-s{}", spec.sigma),
    }
}
