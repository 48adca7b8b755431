use std::path::PathBuf;

use lband::{LbandError, ParseError, ToleranceError};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("unsupported operation {0:?}")]
    UnsupportedOp(String),
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
    #[error(transparent)]
    Domain(#[from] LbandError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) | Self::Tolerance(_) => "UsageError",
            Self::Io { .. } => "IoError",
            Self::Parse { .. } => "ParseError",
            Self::UnsupportedOp(_) => "UnsupportedOp",
            Self::Domain(e) => domain_kind(e),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Domain(LbandError::Parse(_)) => EXIT_USAGE,
            Self::Domain(_) => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut body = json!({ "kind": self.kind(), "message": self.to_string() });
        if let Self::Io { path, .. } | Self::Parse { path, .. } = self {
            body["path"] = Value::String(path.display().to_string());
        }
        json!({ "error": body })
    }
}

fn domain_kind(e: &LbandError) -> &'static str {
    match e {
        LbandError::EmptyBand | LbandError::Parse(_) => "ParseError",
        LbandError::IndexOutOfRange { .. } => "IndexOutOfRange",
        LbandError::DimensionMismatch { .. } => "DimensionMismatch",
        LbandError::Singular(_) => "SingularMatrix",
        LbandError::NoLdlDecomposition { .. } => "NoLdlDecomposition",
        LbandError::NotPositiveDefinite => "NotPositiveDefinite",
        LbandError::IrrationalSquareRoot(_) => "IrrationalSquareRoot",
        LbandError::ZeroNormalizer => "ZeroNormalizer",
        LbandError::DampingStep { source, .. } => domain_kind(source),
        LbandError::NoConvergence { .. } => "NoConvergence",
        LbandError::NotSymmetric { .. } => "NotSymmetric",
        LbandError::TooSmall { .. } => "TooSmall",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lband::SingularCause;

    #[test]
    fn kinds_and_codes() {
        let e = CliError::Domain(LbandError::Singular(SingularCause::ZeroLastEntry));
        assert_eq!(e.kind(), "SingularMatrix");
        assert_eq!(e.exit_code(), EXIT_DOMAIN);
        let e = CliError::Parse { path: "b.txt".into(), source: ParseError::Empty };
        assert_eq!(e.exit_code(), EXIT_USAGE);
        assert_eq!(e.to_json()["error"]["kind"], "ParseError");
        assert_eq!(e.to_json()["error"]["path"], "b.txt");
        let nested = LbandError::DampingStep { step: 2, source: Box::new(LbandError::ZeroNormalizer) };
        assert_eq!(CliError::Domain(nested).kind(), "ZeroNormalizer");
    }
}
