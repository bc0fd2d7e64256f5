//! The Tamari lattice `T_n` as bracketing functions under the pointwise order.
//!
//! A bracketing function `E` on `1..=n` satisfies
//!
//! * (E1) `k <= E(k)`, and
//! * (E2) `k <= j <= E(k)` implies `E(j) <= E(k)`.
//!
//! `E(k)` is the last letter enclosed by the bracket opened at letter `k` in
//! the right-bracketed form of a word, see [`crate::brackets`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::embed;
use crate::error::{Error, Result};
use crate::perm::{check_size, parse_comma_list, write_comma_list};

/// Largest `n` accepted by [`enumerate_tamari`].
pub const MAX_ENUMERATE: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BracketingJson", into = "BracketingJson")]
pub struct BracketingFn {
    values: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BracketingJson {
    n: usize,
    #[serde(rename = "E")]
    values: Vec<usize>,
}

/// Outcome of checking a sequence against (E1) and (E2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BracketingVerdict {
    Valid,
    /// `E(k)` is not in `1..=n`.
    OutOfRange { k: usize, value: usize },
    /// `E(k) < k`.
    BelowDiagonal { k: usize },
    /// `k < j <= E(k)` but `E(j) > E(k)`.
    Crossing { k: usize, j: usize },
}

impl BracketingVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, BracketingVerdict::Valid)
    }
}

impl fmt::Display for BracketingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BracketingVerdict::Valid => f.write_str("valid"),
            BracketingVerdict::OutOfRange { k, value } => {
                write!(f, "E({k}) = {value} is out of range")
            }
            BracketingVerdict::BelowDiagonal { k } => write!(f, "(E1) fails at k = {k}"),
            BracketingVerdict::Crossing { k, j } => write!(
                f,
                "(E2) fails at k = {k}, j = {j}: {k} <= {j} <= E({k}) but E({j}) > E({k})"
            ),
        }
    }
}

/// Checks (E1) then (E2), reporting the smallest `k` (then `j`) that fails.
pub fn validate_bracketing(values: &[usize]) -> BracketingVerdict {
    let n = values.len();
    let e = |k: usize| values[k - 1];
    for k in 1..=n {
        if e(k) == 0 || e(k) > n {
            return BracketingVerdict::OutOfRange { k, value: e(k) };
        }
    }
    if let Some(k) = (1..=n).find(|&k| e(k) < k) {
        return BracketingVerdict::BelowDiagonal { k };
    }
    for k in 1..=n {
        if let Some(j) = (k + 1..=e(k)).find(|&j| e(j) > e(k)) {
            return BracketingVerdict::Crossing { k, j };
        }
    }
    BracketingVerdict::Valid
}

impl BracketingFn {
    /// `values[k - 1]` is `E(k)`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        check_size(values.len())?;
        match validate_bracketing(&values) {
            BracketingVerdict::Valid => Ok(BracketingFn { values }),
            v => Err(Error::NotBracketing(v)),
        }
    }

    pub(crate) fn new_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(validate_bracketing(&values).is_valid());
        BracketingFn { values }
    }

    /// `E(k) = k`, the bottom of `T_n`.
    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(BracketingFn {
            values: (1..=n).collect(),
        })
    }

    /// `E(k) = n`, the top of `T_n`.
    pub fn top(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(BracketingFn { values: vec![n; n] })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `E(k)` for `1 <= k <= n`.
    #[inline]
    pub fn get(&self, k: usize) -> usize {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_bottom(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    fn check_same_size(&self, other: &BracketingFn) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Pointwise comparison.
    pub fn leq(&self, other: &BracketingFn) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(x, y)| x <= y))
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &BracketingFn) -> Result<BracketingFn> {
        self.check_same_size(other)?;
        Ok(BracketingFn::new_unchecked(
            self.values.iter().zip(&other.values).map(|(&x, &y)| x.min(y)).collect(),
        ))
    }

    /// Least upper bound, computed in the permutation lattice and read back.
    ///
    /// The pointwise maximum is not used: `(2,2,3)` and `(1,3,3)` have
    /// maximum `(2,3,3)`, which is not a bracketing function.
    pub fn join(&self, other: &BracketingFn) -> Result<BracketingFn> {
        let joined = embed::phi(self).join(&embed::phi(other))?;
        Ok(embed::phi_inverse_unchecked(&joined))
    }

    /// `Σ (E(k) - k)`, the number of inversions of the image.
    pub fn height(&self) -> usize {
        self.values.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum()
    }

    /// One lower cover, or `None` at the bottom.
    ///
    /// Picks `j` with `E(j) > j` minimizing `E(j) - j` (smallest such `j` on
    /// ties) and lowers `E(j)` by one. The image loses exactly the pair
    /// `(E(j), j)`.
    pub fn cover_down(&self) -> Option<BracketingFn> {
        let j = (1..=self.n())
            .filter(|&j| self.get(j) > j)
            .min_by_key(|&j| (self.get(j) - j, j))?;
        let mut values = self.values.clone();
        values[j - 1] -= 1;
        Some(BracketingFn::new_unchecked(values))
    }

    /// The chain `E, cover_down(E), ...` ending at the bottom.
    pub fn cover_down_chain(&self) -> Vec<BracketingFn> {
        std::iter::successors(Some(self.clone()), |e| e.cover_down()).collect()
    }
}

impl TryFrom<BracketingJson> for BracketingFn {
    type Error = Error;

    fn try_from(json: BracketingJson) -> Result<Self> {
        if json.n != json.values.len() {
            return Err(Error::SizeMismatch {
                left: json.n,
                right: json.values.len(),
            });
        }
        BracketingFn::new(json.values)
    }
}

impl From<BracketingFn> for BracketingJson {
    fn from(e: BracketingFn) -> Self {
        BracketingJson {
            n: e.n(),
            values: e.values,
        }
    }
}

impl fmt::Display for BracketingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.values)
    }
}

impl FromStr for BracketingFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_comma_list(s).map_err(Error::BadList)?;
        BracketingFn::new(values)
    }
}

/// Every bracketing function on `1..=n`, lexicographically.
pub fn enumerate_tamari(n: usize) -> Result<TamariIter> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(Error::EnumerationRange {
            what: "Tamari enumeration",
            n,
            min: 1,
            max: MAX_ENUMERATE,
        });
    }
    Ok(TamariIter {
        n,
        values: (1..=n).collect(),
        done: false,
    })
}

/// Backtracking stream behind [`enumerate_tamari`].
///
/// Position `j` may take any value in `j..=cap(j)`, where `cap(j)` is the
/// smallest `E(k)` over `k < j` with `E(k) >= j` (or `n`). Every prefix that
/// respects the caps extends to a full function, so no branch is wasted.
#[derive(Debug, Clone)]
pub struct TamariIter {
    n: usize,
    values: Vec<usize>,
    done: bool,
}

impl TamariIter {
    fn cap(&self, j: usize) -> usize {
        (1..j)
            .map(|k| self.values[k - 1])
            .filter(|&e| e >= j)
            .min()
            .unwrap_or(self.n)
    }
}

impl Iterator for TamariIter {
    type Item = BracketingFn;

    fn next(&mut self) -> Option<BracketingFn> {
        if self.done {
            return None;
        }
        let current = BracketingFn::new_unchecked(self.values.clone());
        // Advance: bump the rightmost position below its cap, then reset the
        // suffix to the identity (always feasible).
        let bump = (1..=self.n).rev().find(|&j| self.values[j - 1] < self.cap(j));
        match bump {
            Some(j) => {
                self.values[j - 1] += 1;
                for i in j + 1..=self.n {
                    self.values[i - 1] = i;
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}
