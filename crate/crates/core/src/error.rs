//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Dominance is only defined within one weight class.
    #[error("incomparable weights: {left} vs {right}")]
    IncomparableWeights { left: u64, right: u64 },

    #[error("not a valid box move: {reason}")]
    InvalidBoxMove { reason: String },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },

    #[error("part {part} exceeds modulus {modulus}")]
    PartExceedsModulus { part: u64, modulus: u64 },

    #[error("operation requires the modulus to be infinite")]
    InfiniteModulusRequired,

    #[error("operation requires a finite modulus")]
    FiniteModulusRequired,

    /// An extension step with a < b + 2 splits instead of degenerating.
    #[error("split move: parts {a} and {b} with {a} < {b} + 2")]
    SplitMove { a: u64, b: u64 },

    #[error("module has no part equal to {part}")]
    MissingPart { part: u64 },

    #[error("matrix size mismatch: {details}")]
    SizeMismatch { details: String },

    #[error("not a matrix factorization of the given polynomial: {details}")]
    NotFactorization { details: String },

    #[error("variable collision: {var} already occurs in the factorization")]
    VariableCollision { var: String },

    #[error("invalid ring: {reason}")]
    InvalidRing { reason: String },

    #[error("ring mismatch between modules")]
    RingMismatch,

    #[error("no almost split sequences exist for m = {m}")]
    NoArSequences { m: u64 },

    /// The G(R)-level identity has no non-negative integral solution.
    #[error("not realizable as a short exact sequence functor filtration: {details}")]
    NotRealizable { details: String },

    #[error("length mismatch: |mid| = {mid} but |sub| + |quot| = {ends}")]
    LengthMismatch { mid: u64, ends: u64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("index exceeds n: I{index} but n = {n}")]
    IndexExceedsN { index: u64, n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
