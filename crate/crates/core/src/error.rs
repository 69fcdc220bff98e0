use thiserror::Error;

/// Errors raised by evaluation, assembly and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("signature mismatch for {kind}: {detail}")]
    Signature { kind: String, detail: String },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("point ({x}, {y}) is outside the convergence region of {kind}")]
    Domain { kind: String, x: f64, y: f64 },
    #[error("series did not converge within {limit} {unit}")]
    NoConvergence { limit: usize, unit: &'static str },
    #[error("unsupported argument transform `{0}`")]
    UnsupportedTransform(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("unknown integral representation `{0}`")]
    UnknownIntegral(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("quadrature did not converge by level {level} (estimate {estimate:e})")]
    NonConvergence { level: u32, estimate: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
