//! Exact formal calculus for Lie algebras of power-series vector fields.
//!
//! Everything here computes over the rationals with no rounding: truncated
//! power series (jets) of maps between finite-dimensional spaces, the
//! series bracket on vector fields, finite-dimensional Lie algebras given
//! by structure constants, the canonical action of such an algebra on the
//! series ring over its own coordinates, wreath products built from an
//! algebra of coefficients and an algebra acting on the variables, and the
//! embedding of a split extension into such a wreath product.
//!
//! Truncation is explicit: every jet carries both a storage order and a
//! `valid_order` marking the degrees its entries can be trusted to, and
//! every operation propagates the latter pessimistically. Checks compare
//! only trusted degrees, so a passing report never depends on coefficients
//! an operation could not have computed correctly.

pub mod action;
pub mod derive;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod fundamental;
pub mod jet;
pub mod lie;
pub mod linalg;
pub mod multilinear;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod space;
pub mod suite;
pub mod suites;
pub mod wreath;

pub use action::FormalAction;
pub use error::{Error, Result};
pub use extension::{EmbeddingReport, Extension};
pub use fundamental::TCoeffTable;
pub use jet::{CurriedJet, Jet};
pub use lie::LieAlgebra;
pub use linalg::LinearMap;
pub use poly::HomogeneousPoly;
pub use scalar::Rational;
pub use space::{MultiIndex, ProductSpace, Space, SpaceDesc, Vector};
pub use suite::SuiteReport;
pub use wreath::{WreathAlgebra, WreathElement};
