//! The permutation lattice `S_n` in the position (weak) order.
//!
//! Elements are represented by their inversion sets: the pairs `(a, b)` with
//! `a > b` such that `a` appears to the left of `b`. The order is inclusion.
//!
//! Pair sets are stored row-wise: row `a` is a `u64` whose bit `b - 1` is set
//! when `(a, b)` is present. Since `b < a` only the strictly lower triangle is
//! ever populated, so `n <= 64` fits in one word per row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_N;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::SizeOutOfRange(n));
    }
    Ok(())
}

/// Mask of the bits `0..a` for the zero-based row `a`.
#[inline]
fn lower_mask(a: usize) -> u64 {
    if a >= 64 {
        u64::MAX
    } else {
        (1u64 << a) - 1
    }
}

/// An arrangement of `1..=n`, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        check_size(n)?;
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Permutation {
            entries: (1..=n).collect(),
        })
    }

    /// `⟨n, n-1, ..., 1⟩`, the top of `S_n`.
    pub fn reversal(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Permutation {
            entries: (1..=n).rev().collect(),
        })
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Result<Permutations> {
        Ok(Permutations {
            next: Some(Self::identity(n)?.entries),
        })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The pairs `(s_i, s_j)` with `i < j` and `s_i > s_j`.
    pub fn inversions(&self) -> InversionSet {
        let n = self.n();
        let mut pairs = PairSet::empty_unchecked(n);
        for (i, &hi) in self.entries.iter().enumerate() {
            for &lo in &self.entries[i + 1..] {
                if hi > lo {
                    pairs.insert_unchecked(hi, lo);
                }
            }
        }
        InversionSet(pairs)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.entries)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_comma_list(s).map_err(Error::BadList)?;
        Permutation::new(entries)
    }
}

pub(crate) fn write_comma_list(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn parse_comma_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.trim()
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad integer {:?}", t.trim()))
        })
        .collect()
}

/// Lexicographic stream of permutations, see [`Permutation::all`].
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { entries: current })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A set of pairs `(a, b)` with `n >= a > b >= 1` and no further structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairList", into = "PairList")]
pub struct PairSet {
    n: usize,
    rows: Vec<u64>,
}

impl PairSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::empty_unchecked(n))
    }

    pub(crate) fn empty_unchecked(n: usize) -> Self {
        PairSet {
            n,
            rows: vec![0; n],
        }
    }

    /// All `n(n-1)/2` pairs.
    pub fn full(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(PairSet {
            n,
            rows: (0..n).map(lower_mask).collect(),
        })
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = Self::empty(n)?;
        for (a, b) in pairs {
            set.insert(a, b)?;
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<bool> {
        if !(1 <= b && b < a && a <= self.n) {
            return Err(Error::PairOutOfRange { n: self.n, a, b });
        }
        Ok(self.insert_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, a: usize, b: usize) -> bool {
        let bit = 1u64 << (b - 1);
        let row = &mut self.rows[a - 1];
        let fresh = *row & bit == 0;
        *row |= bit;
        fresh
    }

    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        if !(1 <= b && b < a && a <= self.n) {
            return false;
        }
        let bit = 1u64 << (b - 1);
        let row = &mut self.rows[a - 1];
        let present = *row & bit != 0;
        *row &= !bit;
        present
    }

    /// Out-of-range pairs are simply absent.
    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        1 <= b && b < a && a <= self.n && self.rows[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Pairs in descending lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).rev().flat_map(move |a| {
            let row = self.rows[a - 1];
            (1..a).rev().filter(move |b| row >> (b - 1) & 1 == 1).map(move |b| (a, b))
        })
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(x, y)| x & !y == 0)
    }

    fn check_same_size(&self, other: &PairSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &PairSet, f: impl Fn(u64, u64) -> u64) -> Result<PairSet> {
        self.check_same_size(other)?;
        Ok(PairSet {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(&x, &y)| f(x, y)).collect(),
        })
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |x, y| x | y)
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |x, y| x & y)
    }

    pub fn difference(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |x, y| x & !y)
    }

    /// Pairs of the full set that are not in `self`.
    pub fn complement(&self) -> PairSet {
        PairSet {
            n: self.n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(a, &r)| !r & lower_mask(a))
                .collect(),
        }
    }

    /// Smallest transitive superset.
    ///
    /// Warshall's pass on row bitmasks: pivoting on `k` in increasing order,
    /// every row containing `k` absorbs row `k`.
    pub fn transitive_closure(&self) -> PairSet {
        let mut rows = self.rows.clone();
        for k in 0..self.n {
            let pivot = rows[k];
            if pivot == 0 {
                continue;
            }
            let bit = 1u64 << k;
            for row in rows.iter_mut().skip(k + 1) {
                if *row & bit != 0 {
                    *row |= pivot;
                }
            }
        }
        PairSet { n: self.n, rows }
    }

    pub(crate) fn row(&self, a: usize) -> u64 {
        self.rows[a - 1]
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

/// JSON shape shared by [`PairSet`] and [`InversionSet`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairList {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl TryFrom<PairList> for PairSet {
    type Error = Error;

    fn try_from(list: PairList) -> Result<Self> {
        PairSet::from_pairs(list.n, list.pairs.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<PairSet> for PairList {
    fn from(set: PairSet) -> Self {
        PairList {
            n: set.n,
            pairs: set.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Outcome of checking a pair set against (I1) and (I2).
///
/// Witnesses are the lexicographically smallest `(a, b, c)` violating the
/// first failing property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InversionVerdict {
    Valid,
    /// `(a, b)` and `(b, c)` present but `(a, c)` missing.
    Intransitive { a: usize, b: usize, c: usize },
    /// `(a, b)` present with `b < c < a`, yet neither `(a, c)` nor `(c, b)`.
    Unsplit { a: usize, b: usize, c: usize },
}

impl InversionVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, InversionVerdict::Valid)
    }
}

impl fmt::Display for InversionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InversionVerdict::Valid => f.write_str("valid"),
            InversionVerdict::Intransitive { a, b, c } => write!(
                f,
                "(I1) fails: ({a},{b}) and ({b},{c}) present but ({a},{c}) missing"
            ),
            InversionVerdict::Unsplit { a, b, c } => write!(
                f,
                "(I2) fails: ({a},{b}) present with {b} < {c} < {a} but neither ({a},{c}) nor ({c},{b})"
            ),
        }
    }
}

pub fn validate_inversion_set(pairs: &PairSet) -> InversionVerdict {
    let n = pairs.n();
    for a in 1..=n {
        let row_a = pairs.row(a);
        for b in 1..a {
            if row_a >> (b - 1) & 1 == 0 {
                continue;
            }
            let missing = pairs.row(b) & !row_a;
            if missing != 0 {
                let c = missing.trailing_zeros() as usize + 1;
                return InversionVerdict::Intransitive { a, b, c };
            }
        }
    }
    for a in 1..=n {
        for b in 1..a {
            if !pairs.contains(a, b) {
                continue;
            }
            if let Some(c) = (b + 1..a).find(|&c| !pairs.contains(a, c) && !pairs.contains(c, b)) {
                return InversionVerdict::Unsplit { a, b, c };
            }
        }
    }
    InversionVerdict::Valid
}

/// Builds the permutation whose inversion set is `pairs`.
///
/// Values are inserted in increasing order: `k` goes immediately left of the
/// leftmost `j` already placed with `(k, j)` in the set, or at the end if
/// there is none.
pub fn realize(pairs: &PairSet) -> Result<Permutation> {
    match validate_inversion_set(pairs) {
        InversionVerdict::Valid => Ok(realize_unchecked(pairs)),
        v => Err(Error::NotInversionSet(v)),
    }
}

fn realize_unchecked(pairs: &PairSet) -> Permutation {
    let n = pairs.n();
    let mut entries = Vec::with_capacity(n);
    entries.push(1);
    for k in 2..=n {
        match entries.iter().position(|&j| pairs.contains(k, j)) {
            Some(at) => entries.insert(at, k),
            None => entries.push(k),
        }
    }
    Permutation { entries }
}

/// An element of `S_n`: a pair set satisfying (I1) and (I2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairList", into = "PairList")]
pub struct InversionSet(PairSet);

impl InversionSet {
    /// The bottom of `S_n`.
    pub fn empty(n: usize) -> Result<Self> {
        PairSet::empty(n).map(InversionSet)
    }

    /// The top of `S_n`.
    pub fn full(n: usize) -> Result<Self> {
        PairSet::full(n).map(InversionSet)
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        PairSet::from_pairs(n, pairs)?.try_into()
    }

    pub(crate) fn from_pair_set_unchecked(pairs: PairSet) -> Self {
        InversionSet(pairs)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn as_pair_set(&self) -> &PairSet {
        &self.0
    }

    pub fn into_pair_set(self) -> PairSet {
        self.0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0.contains(a, b)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.pairs()
    }

    /// Number of inversions; the length of every maximal chain from the bottom.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn leq(&self, other: &InversionSet) -> Result<bool> {
        self.0.check_same_size(&other.0)?;
        Ok(self.0.is_subset(&other.0))
    }

    /// Least upper bound: the transitive closure of the union.
    pub fn join(&self, other: &InversionSet) -> Result<InversionSet> {
        Ok(InversionSet(self.0.union(&other.0)?.transitive_closure()))
    }

    /// Greatest lower bound.
    ///
    /// Complementing inside the full pair set reverses the order (it is the
    /// image of reversing the permutation), so the meet is the complement of
    /// the join of complements.
    pub fn meet(&self, other: &InversionSet) -> Result<InversionSet> {
        let joined = self.0.complement().union(&other.0.complement())?;
        Ok(InversionSet(joined.transitive_closure().complement()))
    }

    pub fn realize(&self) -> Permutation {
        realize_unchecked(&self.0)
    }

    /// Upper covers, one per ascent of the realized permutation, in order of
    /// ascent position.
    pub fn covers_up(&self) -> Vec<InversionSet> {
        let perm = self.realize();
        perm.entries
            .windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| {
                let mut next = self.0.clone();
                next.insert_unchecked(w[1], w[0]);
                InversionSet(next)
            })
            .collect()
    }

    /// Lower covers, one per descent of the realized permutation.
    pub fn covers_down(&self) -> Vec<InversionSet> {
        let perm = self.realize();
        perm.entries
            .windows(2)
            .filter(|w| w[0] > w[1])
            .map(|w| {
                let mut next = self.0.clone();
                next.remove(w[0], w[1]);
                InversionSet(next)
            })
            .collect()
    }
}

impl TryFrom<PairSet> for InversionSet {
    type Error = Error;

    fn try_from(pairs: PairSet) -> Result<Self> {
        match validate_inversion_set(&pairs) {
            InversionVerdict::Valid => Ok(InversionSet(pairs)),
            v => Err(Error::NotInversionSet(v)),
        }
    }
}

impl TryFrom<PairList> for InversionSet {
    type Error = Error;

    fn try_from(list: PairList) -> Result<Self> {
        PairSet::try_from(list)?.try_into()
    }
}

impl From<InversionSet> for PairList {
    fn from(set: InversionSet) -> Self {
        set.0.into()
    }
}

impl fmt::Display for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All of `S_n` as inversion sets, in lexicographic order of permutations.
pub fn enumerate_permutation_lattice(n: usize) -> Result<Vec<InversionSet>> {
    Ok(Permutation::all(n)?.map(|p| p.inversions()).collect())
}
