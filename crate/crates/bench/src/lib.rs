//! Fixtures shared by the criterion benches.

use sublattice::{enumerate_tamari, BracketingFn, InversionSet, Permutation};

/// All of `T_n`.
pub fn tamari(n: usize) -> Vec<BracketingFn> {
    enumerate_tamari(n).expect("n in range").collect()
}

/// All of `S_n`, as inversion sets.
pub fn permutations(n: usize) -> Vec<InversionSet> {
    Permutation::all(n)
        .expect("n in range")
        .map(|p| p.inversions())
        .collect()
}

/// A fixed spread of index pairs over `len` elements.
pub fn spread_pairs(len: usize, count: usize) -> Vec<(usize, usize)> {
    (0..count)
        .map(|i| ((i * 7919) % len, (i * 104_729 + 13) % len))
        .collect()
}
