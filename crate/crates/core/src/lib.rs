//! Exact-arithmetic verification of the local constants, pairings and zeta
//! integrals that enter Rankin-Selberg central-value formulas for definite
//! unitary groups U(3) x U(2): archimedean representation-theoretic
//! constants, p-adic Whittaker and zeta closed forms, GL(1) local factors,
//! depletion operators, non-split spherical identities, and truncated
//! Iwasawa-algebra combinatorics.
//!
//! Every check is exact (arbitrary-precision rationals, cyclotomic numbers,
//! formal symbols); floating point appears only as an independent quadrature
//! oracle for the archimedean integral.

pub mod algebra;
pub mod arith;
pub mod chars;
pub mod compactrep;
pub mod depletion;
pub mod hida;
pub mod padic;
pub mod spherical;
pub mod suite;
pub mod whittaker;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divergent sum: {0}")]
    Divergent(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("truncation unstable: {0}")]
    Truncation(String),
    #[error("stability threshold not reached; minimal stable level {0}")]
    Threshold(i64),
    #[error("enumeration exceeds configured bound of {0}")]
    Resource(usize),
    #[error("numeric oracle failed to converge: {0}")]
    Numeric(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
