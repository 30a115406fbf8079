use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar literal {0:?}")]
    ScalarSyntax(String),

    #[error("pairing matrix must be {dim}x{dim}, got {rows} rows with {bad_row_len:?} columns")]
    PairingShape {
        dim: usize,
        rows: usize,
        bad_row_len: Option<usize>,
    },

    #[error("pairing declared symmetric but (e{i}|e{j}) != (e{j}|e{i})")]
    NotSymmetric { i: usize, j: usize },

    /// T-maps are only well defined for a commutative circle product.
    #[error(
        "{0} requires a symmetric pairing: the circle product is commutative iff (a|b) = (b|a), \
         and T is only well defined when it is"
    )]
    AsymmetricPairing(&'static str),

    #[error("renormalised map requested but no renormalisation scheme is configured")]
    MissingScheme,

    #[error("generator index {index} out of range 1..={dim}")]
    GeneratorOutOfRange { index: usize, dim: usize },

    #[error("invalid scheme entry {key:?}: {reason}")]
    InvalidScheme { key: String, reason: String },

    #[error("invalid Fock structure: {0}")]
    InvalidFock(String),

    #[error("square matrix expected, got {0} entries")]
    NotSquare(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
