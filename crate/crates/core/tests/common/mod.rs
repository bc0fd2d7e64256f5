//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's join, meet, closure or height routines.

#![allow(dead_code)]

use sublattice::{BracketingFn, InversionSet, Permutation};

/// `C_0 = 1`, `C_{m+1} = Σ C_i C_{m-i}`.
pub fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c[n]
}

pub fn all_perm_sets(n: usize) -> Vec<InversionSet> {
    Permutation::all(n).unwrap().map(|p| p.inversions()).collect()
}

pub fn all_tamari(n: usize) -> Vec<BracketingFn> {
    sublattice::enumerate_tamari(n).unwrap().collect()
}

pub fn subset(a: &InversionSet, b: &InversionSet) -> bool {
    a.pairs().all(|(x, y)| b.contains(x, y))
}

pub fn pointwise_leq(e: &BracketingFn, f: &BracketingFn) -> bool {
    e.values().iter().zip(f.values()).all(|(x, y)| x <= y)
}

/// The least element of `{ z : x <= z, y <= z }`, by scanning everything.
pub fn brute_lub<T: Clone>(all: &[T], leq: impl Fn(&T, &T) -> bool, x: &T, y: &T) -> T {
    let ups: Vec<&T> = all.iter().filter(|z| leq(x, z) && leq(y, z)).collect();
    ups.iter()
        .find(|z| ups.iter().all(|w| leq(z, w)))
        .map(|z| (*z).clone())
        .expect("least upper bound exists")
}

pub fn brute_glb<T: Clone>(all: &[T], leq: impl Fn(&T, &T) -> bool, x: &T, y: &T) -> T {
    let downs: Vec<&T> = all.iter().filter(|z| leq(z, x) && leq(z, y)).collect();
    downs
        .iter()
        .find(|z| downs.iter().all(|w| leq(w, z)))
        .map(|z| (*z).clone())
        .expect("greatest lower bound exists")
}

/// Longest chain from the minimum to every element, by relaxing over
/// covers found directly from `leq` (Bellman-Ford style).
pub fn brute_heights<T>(all: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let m = all.len();
    let lt = |i: usize, j: usize| i != j && leq(&all[i], &all[j]);
    let covers: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| lt(i, j) && !(0..m).any(|k| lt(i, k) && lt(k, j)))
        .collect();
    let mut h = vec![0usize; m];
    loop {
        let mut changed = false;
        for &(i, j) in &covers {
            if h[j] < h[i] + 1 {
                h[j] = h[i] + 1;
                changed = true;
            }
        }
        if !changed {
            return h;
        }
    }
}

/// All full binary trees on leaves `lo..=hi`, written as bracketed words,
/// built by choosing every top-level split.
pub fn all_words(leaves: usize) -> Vec<String> {
    fn go(lo: usize, hi: usize) -> Vec<String> {
        if lo == hi {
            return vec![((b'a' + lo as u8) as char).to_string()];
        }
        let mut out = Vec::new();
        for split in lo..hi {
            for l in go(lo, split) {
                for r in go(split + 1, hi) {
                    out.push(format!("({l}{r})"));
                }
            }
        }
        out
    }
    go(0, leaves - 1)
}

/// Reads `E` off a right-bracketed string: each `(` is owned by the letter
/// right after it, and closes after the letter most recently read.
pub fn fn_from_right_bracketing(text: &str, n: usize) -> Vec<usize> {
    let mut values = vec![0; n];
    let mut open: Vec<usize> = Vec::new();
    let mut pending = false;
    let mut last = 0;
    for ch in text.chars() {
        match ch {
            '(' => pending = true,
            ')' => {
                let owner = open.pop().unwrap();
                values[owner - 1] = last;
            }
            c => {
                last = c as usize - 'a' as usize;
                if pending {
                    open.push(last);
                    pending = false;
                }
            }
        }
    }
    values
}
