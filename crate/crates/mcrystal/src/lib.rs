//! Nakajima monomial crystals for the affine types A and B, with the full
//! affine weight: the classical part is read off a monomial directly, and
//! the delta coefficient D(M) is produced by per-type recursions with
//! independent closed forms where one exists. A generalized Young wall
//! model (type A) and brute-force graph sweeps cross-check every formula.
//!
//! Entry points: [`cartan::CartanDatum`] fixes the type, [`monomial`] holds
//! the crystal operators, [`delta`] computes exponent tables and weights,
//! [`youngwall`] the wall model, and [`oracle`] the verification sweeps.

pub mod cartan;
pub mod delta;
pub mod monomial;
pub mod oracle;
pub mod youngwall;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not in crystal: {0}")]
    NotInCrystal(String),
    #[error("inconsistent system: {0}")]
    InconsistentSystem(String),
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error("invalid operation: {0}")]
    InvalidOperation(String),
}
