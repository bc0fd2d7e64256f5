//! Permutation lattices, Tamari lattices, and the embedding of the latter
//! into the former.
//!
//! * [`perm`]: `S_n` as inversion sets under inclusion.
//! * [`tamari`]: `T_n` as bracketing functions under the pointwise order.
//! * [`embed`]: the map `E ↦ I_E` and exhaustive checks that it is a
//!   height-preserving lattice embedding.
//! * [`brackets`]: bracketed words, binary trees, and their bracketing
//!   functions.
//! * [`lattice`]: generic finite-lattice analyzers (Hasse diagrams,
//!   semidistributivity, boundedness, heights).

pub mod brackets;
pub mod embed;
pub mod error;
pub mod lattice;
pub mod perm;
pub mod tamari;

pub use brackets::{parse_word, BinaryTree, Lexeme, ParseError};
pub use embed::{phi, phi_inverse, satisfies_i2star, verify_embedding, verify_height};
pub use error::{Error, Result};
pub use lattice::{LatticeError, LatticeView};
pub use perm::{realize, validate_inversion_set, InversionSet, InversionVerdict, PairSet, Permutation};
pub use tamari::{enumerate_tamari, validate_bracketing, BracketingFn, BracketingVerdict};

/// Largest ground-set size: one `u64` row per element.
pub const MAX_N: usize = 64;
