//! Error type shared across the crate.
//!
//! Every failed validation carries a concrete witness: the basis indices or
//! labels involved and the offending value, formatted exactly.

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, Serialize)]
#[serde(tag = "kind")]
pub enum Error {
    #[error("{context}: expected space ({expected}), found ({found})")]
    SpaceMismatch {
        context: String,
        expected: String,
        found: String,
    },

    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("requested order {requested} exceeds trusted order {valid}")]
    OrderExceeded { requested: i64, valid: i64 },

    #[error(
        "outer jet is a proper series (nonzero coefficients above its trusted order) \
         and the inner jet has a nonzero constant term; the substituted family \
         is not summable"
    )]
    NotSummable,

    #[error("duplicate basis label {label:?}")]
    DuplicateLabel { label: String },

    #[error("{context}: {message}")]
    Invalid { context: String, message: String },

    #[error("antisymmetry fails at basis pair ({i}, {j}): defect {defect}")]
    Antisymmetry { i: usize, j: usize, defect: String },

    #[error("Jacobi identity fails at basis triple ({i}, {j}, {k}): defect {defect}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        defect: String,
    },

    #[error("bracket compatibility fails for ({left}, {right}) at degree {degree}: defect {defect}")]
    NotAHomomorphism {
        left: String,
        right: String,
        degree: i64,
        defect: String,
    },

    #[error("p(s(.)) is not the identity: basis column {column} maps to {got}")]
    NotASection { column: usize, got: String },

    #[error("declared ideal basis does not span ker p: {detail}")]
    KernelMismatch { detail: String },

    #[error("[{label}, {ideal}] leaves the declared ideal: defect {witness}")]
    NotAnIdeal {
        label: String,
        ideal: String,
        witness: String,
    },

    #[error("coefficient leaves the ideal at degree {degree}, monomial {mono}: {witness}")]
    OutsideIdeal {
        degree: u32,
        mono: String,
        witness: String,
    },

    #[error("ad(s(y)) is not nilpotent: composites of length {bound} still act nonzero")]
    NotNilpotent { bound: u32 },

    #[error("projection slide identity fails at (n, k) = ({n}, {k}) on basis vector {label}: defect {witness}")]
    ProjectionSlide {
        n: u32,
        k: u32,
        label: String,
        witness: String,
    },
}

impl Error {
    pub fn invalid(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            context: context.into(),
            message: message.into(),
        }
    }

    /// Structured form for machine-readable reports: the variant name as
    /// `kind`, its fields, and the rendered message.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("error serializes");
        if let serde_json::Value::Object(ref mut m) = v {
            m.insert("message".into(), self.to_string().into());
        }
        v
    }

    /// True for defects found by a mathematical check (as opposed to
    /// malformed or inconsistent input data).
    pub fn is_math_defect(&self) -> bool {
        matches!(
            self,
            Error::Antisymmetry { .. }
                | Error::Jacobi { .. }
                | Error::NotAHomomorphism { .. }
                | Error::NotASection { .. }
                | Error::KernelMismatch { .. }
                | Error::NotAnIdeal { .. }
                | Error::OutsideIdeal { .. }
                | Error::NotNilpotent { .. }
                | Error::ProjectionSlide { .. }
                | Error::NotSummable
        )
    }
}

impl From<Error> for String {
    fn from(e: Error) -> String {
        e.to_string()
    }
}
