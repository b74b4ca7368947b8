//! Error type shared by all modules.
//!
//! The variants are deliberately coarse: they distinguish the caller-facing
//! failure classes (bad input, bad window tuple, unparseable word, path that
//! cannot be reduced, a certificate that failed to verify, and an internal
//! inconsistency that indicates a convention bug rather than bad input).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: out-of-range parameters, a bundle expression that
    /// does not parse, a weight that is not weakly decreasing, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A window tuple violating one of the defining inequalities.  The
    /// message names the violated constraint.
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    /// A loop/path word that does not lex.  The message names the offending
    /// token.
    #[error("word parse error: {0}")]
    WordParse(String),

    /// A syntactically valid path word that is not composable (tokens applied
    /// at the wrong basepoint) or does not return to its basepoint.
    #[error("path reduction error: {0}")]
    PathReduction(String),

    /// An exact certificate failed: a solve had no integral solution, a
    /// basis-change determinant was not a unit, a transform product did not
    /// reproduce its input.
    #[error("certificate failure: {0}")]
    CertificateFailure(String),

    /// An internal invariant was violated (e.g. an antisymmetric pairing with
    /// odd rank, or a Gram matrix that is not unit-triangular in an order the
    /// digraph certified).  This indicates a convention bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Process exit code mandated for this error class: `2` for malformed
    /// input, `3` for word/path errors, `1` for failed checks and internal
    /// inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::InvalidWindow(_) => 2,
            Error::WordParse(_) | Error::PathReduction(_) => 3,
            Error::CertificateFailure(_) | Error::Inconsistency(_) => 1,
        }
    }
}
