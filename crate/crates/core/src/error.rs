use thiserror::Error;

use crate::spaces::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position} in {input:?}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("inhomogeneous polynomial {input:?} (degrees {degrees:?})")]
    Inhomogeneous { input: String, degrees: Vec<u32> },
    #[error("degree mismatch in {what}: expected {expected}, found {found}")]
    DegreeMismatch { what: String, expected: u32, found: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("presentation failed validation:\n{}", format_violations(.0))]
    Validation(Vec<Violation>),
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("symmetry violation: {0}")]
    Symmetry(String),
    #[error("hypothesis violated on {cycle}: Chern number <c_{dim}(J(L)), [{cycle}]> = 0")]
    HypothesisViolated { cycle: String, dim: u32 },
    #[error("bundle {bundle} is not declared 1-jet spanned at {params}")]
    NotJetSpanned { bundle: String, params: String },
    #[error("class is not in the ideal generated by the group classes; remainder {remainder}")]
    NotInI1 { remainder: String },
    #[error("indeterminate verdict in degree {degree}: {diagnostic}")]
    Indeterminate { degree: u32, diagnostic: String },
    #[error("insufficient sample: {0}")]
    InsufficientSample(String),
    #[error("malformed transfer: {0}")]
    MalformedTransfer(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("config error: {0}")]
    Config(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  - {x}")).collect::<Vec<_>>().join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
