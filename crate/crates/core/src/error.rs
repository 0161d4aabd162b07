//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by ring, ideal, factorization and curve operations.
///
/// `DecompositionObstruction` is a diagnostic, not a bug: it fires when the
/// supplied `(D, p)` pair is arithmetically incompatible with the factor
/// profile, i.e. the input was not a solution context in the first place.
#[derive(Debug, Error)]
pub enum Error {
    #[error("r must be a prime greater than 5, got {0}")]
    InvalidRingPrime(u64),

    #[error("alpha index {j} out of range 0..={max}")]
    AlphaIndexOutOfRange { j: usize, max: usize },

    #[error("automorphism index {i} is not coprime to r = {r}")]
    NotCoprimeToR { i: u64, r: u64 },

    #[error("the zero element has no valuation and generates no full-rank ideal")]
    ZeroElement,

    #[error("operands belong to different ring contexts")]
    ContextMismatch,

    #[error("{0} is not a rational prime")]
    NotPrime(u64),

    #[error("x and y must be coprime, gcd = {gcd}")]
    NotCoprime { gcd: String },

    #[error("x and y must not both be zero")]
    BothZero,

    #[error("exponent p must be a prime >= 5 and different from r, got p = {p}, r = {r}")]
    InvalidExponent { p: u64, r: u64 },

    #[error("invalid coefficient D: {reason}")]
    InvalidCoefficient { reason: String },

    #[error("x^r + y^r != D * z^p for the supplied values")]
    NotASolution,

    #[error("x + y = 0: x^r + y^r vanishes, so no (D, z) context exists")]
    ZeroValue,

    #[error("no valid (D, z) context exists for these inputs")]
    NoValidContext,

    #[error("factor {factor_index} at prime {q}: {message}")]
    DecompositionObstruction {
        factor_index: usize,
        q: u64,
        message: String,
    },

    #[error("the type-2 curve requires r | z")]
    RNotDividingZ,

    #[error("degenerate curve: A*B*C = 0")]
    DegenerateCurve,

    #[error("operation requires a {expected} curve")]
    WrongCurveKind { expected: &'static str },

    #[error("reduction type is classified only away from 2 and beta")]
    ReductionPrimeOutOfScope,

    #[error("computed {what} = {found}, expected {expected}")]
    ValuationMismatch {
        what: &'static str,
        expected: i64,
        found: i64,
    },

    #[error("desk-scale cap exceeded: {what}")]
    DeskScaleExceeded { what: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
