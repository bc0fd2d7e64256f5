use thiserror::Error;

use crate::brackets::ParseError;
use crate::lattice::LatticeError;
use crate::perm::InversionVerdict;
use crate::tamari::BracketingVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..={max}", max = crate::MAX_N)]
    SizeOutOfRange(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..={n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("cannot parse comma-separated list: {0}")]
    BadList(String),

    #[error("pair ({a},{b}) is not of the form n >= a > b >= 1 with n = {n}")]
    PairOutOfRange { n: usize, a: usize, b: usize },

    #[error("not an inversion set: {0}")]
    NotInversionSet(InversionVerdict),

    #[error("not a bracketing function: {0}")]
    NotBracketing(BracketingVerdict),

    #[error("inversion set violates (I2)*: ({a},{b}) present and {b} < {c} < {a}, but ({c},{b}) missing")]
    NotInImage { a: usize, b: usize, c: usize },

    #[error("{what}: n = {n} is outside {min}..={max}")]
    EnumerationRange {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("a single leaf has no bracketing function; at least two letters are needed")]
    SingleLeaf,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
