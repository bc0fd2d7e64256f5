//! The embedding of `T_n` into `S_n`.
//!
//! A bracketing function `E` maps to `I_E = { (s, k) : k < s <= E(k) }`. The
//! image is exactly the set of inversion sets with the (I2)* property:
//! whenever `(a, b)` is present and `b < c < a`, so is `(c, b)`. The map is a
//! lattice embedding and preserves height.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{permutation_lattice, tamari_lattice};
use crate::perm::{enumerate_permutation_lattice, InversionSet, PairSet};
use crate::tamari::{enumerate_tamari, BracketingFn};

pub const MAX_VERIFY_EMBEDDING: usize = 7;
pub const MAX_VERIFY_HEIGHT: usize = 5;

/// `I_E`: for each `k`, the pairs `(k+1, k), ..., (E(k), k)`.
pub fn phi(e: &BracketingFn) -> InversionSet {
    let n = e.n();
    let mut pairs = PairSet::empty_unchecked(n);
    for k in 1..=n {
        for s in k + 1..=e.get(k) {
            pairs.insert_unchecked(s, k);
        }
    }
    InversionSet::from_pair_set_unchecked(pairs)
}

/// Smallest `(a, b, c)` with `(a, b)` present, `b < c < a` and `(c, b)` absent.
pub fn i2star_violation(a_set: &InversionSet) -> Option<(usize, usize, usize)> {
    let n = a_set.n();
    for a in 1..=n {
        for b in 1..a {
            if !a_set.contains(a, b) {
                continue;
            }
            if let Some(c) = (b + 1..a).find(|&c| !a_set.contains(c, b)) {
                return Some((a, b, c));
            }
        }
    }
    None
}

pub fn satisfies_i2star(a_set: &InversionSet) -> bool {
    i2star_violation(a_set).is_none()
}

/// Reads `E(k)` back as the largest `s` with `(s, k)` present, or `k`.
pub fn phi_inverse(a_set: &InversionSet) -> Result<BracketingFn> {
    match i2star_violation(a_set) {
        None => Ok(phi_inverse_unchecked(a_set)),
        Some((a, b, c)) => Err(Error::NotInImage { a, b, c }),
    }
}

pub(crate) fn phi_inverse_unchecked(a_set: &InversionSet) -> BracketingFn {
    let n = a_set.n();
    let values = (1..=n)
        .map(|k| (k + 1..=n).rev().find(|&s| a_set.contains(s, k)).unwrap_or(k))
        .collect();
    BracketingFn::new_unchecked(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EmbeddingChecks {
    pub injective: bool,
    pub order_embedding: bool,
    pub join_preserved: bool,
    pub meet_preserved: bool,
    pub meet_is_intersection: bool,
    pub image_is_i2star: bool,
}

impl EmbeddingChecks {
    pub fn all(&self) -> bool {
        self.injective
            && self.order_embedding
            && self.join_preserved
            && self.meet_preserved
            && self.meet_is_intersection
            && self.image_is_i2star
    }
}

/// The first failed check and the elements that fail it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: &'static str,
    pub elements: Vec<BracketingFn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inversion_set: Option<InversionSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub mode: Mode,
    pub elements: usize,
    pub pairs_checked: usize,
    pub checks: EmbeddingChecks,
    pub witness: Option<Witness>,
    pub millis: u128,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.checks.all() && self.witness.is_none()
    }
}

fn check_range(what: &'static str, n: usize, max: usize) -> Result<()> {
    if !(1..=max).contains(&n) {
        return Err(Error::EnumerationRange { what, n, min: 1, max });
    }
    Ok(())
}

/// Every check over all ordered pairs of `T_n`.
pub fn verify_embedding(n: usize) -> Result<EmbeddingReport> {
    check_range("embedding verification", n, MAX_VERIFY_EMBEDDING)?;
    let elements: Vec<BracketingFn> = enumerate_tamari(n)?.collect();
    let m = elements.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    Ok(run_embedding(n, Mode::Exhaustive, elements, &pairs))
}

/// Pairwise checks on `samples` pairs drawn uniformly with a seeded RNG;
/// the element-wise checks still cover all of `T_n`.
pub fn verify_embedding_sampled(n: usize, seed: u64, samples: usize) -> Result<EmbeddingReport> {
    check_range("embedding verification", n, MAX_VERIFY_EMBEDDING)?;
    let elements: Vec<BracketingFn> = enumerate_tamari(n)?.collect();
    let m = elements.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = (0..samples)
        .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m)))
        .collect();
    Ok(run_embedding(n, Mode::Sampled { seed, samples }, elements, &pairs))
}

fn run_embedding(
    n: usize,
    mode: Mode,
    elements: Vec<BracketingFn>,
    pairs: &[(usize, usize)],
) -> EmbeddingReport {
    let start = Instant::now();
    let images: Vec<InversionSet> = elements.iter().map(phi).collect();
    let mut checks = EmbeddingChecks::default();
    let mut witness: Option<Witness> = None;
    let mut record = |w: Option<Witness>| {
        let ok = w.is_none();
        if witness.is_none() {
            witness = w;
        }
        ok
    };

    let injective = {
        let mut seen = HashSet::with_capacity(images.len());
        images
            .iter()
            .enumerate()
            .find(|(_, img)| !seen.insert(*img))
            .map(|(i, img)| {
                let j = images.iter().position(|other| other == img).unwrap();
                Witness {
                    check: "injective",
                    elements: vec![elements[j].clone(), elements[i].clone()],
                    inversion_set: Some(img.clone()),
                }
            })
    };
    checks.injective = record(injective);

    let pair_witness = |check: &'static str, fails: &(dyn Fn(usize, usize) -> bool + Sync)| {
        pairs
            .par_iter()
            .find_first(|&&(i, j)| fails(i, j))
            .map(|&(i, j)| Witness {
                check,
                elements: vec![elements[i].clone(), elements[j].clone()],
                inversion_set: None,
            })
    };

    checks.order_embedding = record(pair_witness("order_embedding", &|i, j| {
        elements[i].leq(&elements[j]).unwrap()
            != images[i].as_pair_set().is_subset(images[j].as_pair_set())
    }));
    checks.join_preserved = record(pair_witness("join_preserved", &|i, j| {
        phi(&elements[i].join(&elements[j]).unwrap()) != images[i].join(&images[j]).unwrap()
    }));
    checks.meet_preserved = record(pair_witness("meet_preserved", &|i, j| {
        phi(&elements[i].meet(&elements[j]).unwrap()) != images[i].meet(&images[j]).unwrap()
    }));
    checks.meet_is_intersection = record(pair_witness("meet_is_intersection", &|i, j| {
        images[i].meet(&images[j]).unwrap().as_pair_set()
            != &images[i].as_pair_set().intersection(images[j].as_pair_set()).unwrap()
    }));

    // Image membership is decided by (I2)*, never by looking up T_n.
    let image_set: HashSet<&InversionSet> = images.iter().collect();
    let all_images_i2star = images
        .iter()
        .zip(&elements)
        .find(|(img, _)| !satisfies_i2star(img))
        .map(|(img, e)| Witness {
            check: "image_is_i2star",
            elements: vec![e.clone()],
            inversion_set: Some(img.clone()),
        });
    let stray = || {
        enumerate_permutation_lattice(n)
            .expect("n in range")
            .into_iter()
            .find(|a| satisfies_i2star(a) && !image_set.contains(a))
            .map(|a| Witness {
                check: "image_is_i2star",
                elements: vec![],
                inversion_set: Some(a),
            })
    };
    checks.image_is_i2star = record(all_images_i2star.or_else(stray));

    EmbeddingReport {
        n,
        mode,
        elements: elements.len(),
        pairs_checked: pairs.len(),
        checks,
        witness,
        millis: start.elapsed().as_millis(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct HeightChecks {
    /// The `cover_down` chain has `|φ(E)|` steps, each an `S_n` cover.
    pub cover_chain: bool,
    /// Longest chain in `T_n` equals the rank of the image in `S_n`.
    pub longest_chain: bool,
    pub atoms_to_atoms: bool,
    pub bounds_preserved: bool,
}

impl HeightChecks {
    pub fn all(&self) -> bool {
        self.cover_chain && self.longest_chain && self.atoms_to_atoms && self.bounds_preserved
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightReport {
    pub n: usize,
    pub elements: usize,
    /// Height of every element of `T_n`, in enumeration order.
    pub heights: Vec<usize>,
    pub checks: HeightChecks,
    pub witness: Option<Witness>,
    pub millis: u128,
}

impl HeightReport {
    pub fn passed(&self) -> bool {
        self.checks.all() && self.witness.is_none()
    }
}

pub fn verify_height(n: usize) -> Result<HeightReport> {
    check_range("height verification", n, MAX_VERIFY_HEIGHT)?;
    let start = Instant::now();
    let tamari = tamari_lattice(n)?;
    let perms = permutation_lattice(n)?;
    let t_heights = tamari.heights();
    let s_heights = perms.heights();
    let mut checks = HeightChecks::default();
    let mut witness: Option<Witness> = None;
    let mut record = |w: Option<Witness>| {
        let ok = w.is_none();
        if witness.is_none() {
            witness = w;
        }
        ok
    };
    let fail = |check: &'static str, e: &BracketingFn| Witness {
        check,
        elements: vec![e.clone()],
        inversion_set: Some(phi(e)),
    };

    checks.cover_chain = record(tamari.elements().iter().find_map(|e| {
        let chain = e.cover_down_chain();
        let steps_ok = chain.windows(2).all(|w| {
            let (upper, lower) = (phi(&w[0]), phi(&w[1]));
            let removed = upper.as_pair_set().difference(lower.as_pair_set()).unwrap();
            lower.as_pair_set().is_subset(upper.as_pair_set())
                && removed.len() == 1
                && upper.covers_down().contains(&lower)
        });
        let ends_at_bottom = chain.last().is_some_and(BracketingFn::is_bottom);
        (!(steps_ok && ends_at_bottom && chain.len() - 1 == phi(e).rank()))
            .then(|| fail("cover_chain", e))
    }));

    checks.longest_chain = record(tamari.elements().iter().enumerate().find_map(|(i, e)| {
        let image = phi(e);
        let s_height = perms.index_of(&image).map(|j| s_heights[j]);
        (t_heights[i] != image.rank() || s_height != Some(image.rank()) || e.height() != t_heights[i])
            .then(|| fail("longest_chain", e))
    }));

    let s_atoms: HashSet<usize> = perms.atoms().into_iter().collect();
    checks.atoms_to_atoms = record(tamari.atoms().into_iter().find_map(|i| {
        let e = tamari.element(i);
        let lands = perms.index_of(&phi(e)).is_some_and(|j| s_atoms.contains(&j));
        (!lands).then(|| fail("atoms_to_atoms", e))
    }));

    let bottom = tamari.element(tamari.bottom());
    let top = tamari.element(tamari.top());
    checks.bounds_preserved = record(if phi(bottom) != InversionSet::empty(n)? {
        Some(fail("bounds_preserved", bottom))
    } else if phi(top) != InversionSet::full(n)? {
        Some(fail("bounds_preserved", top))
    } else {
        None
    });

    Ok(HeightReport {
        n,
        elements: tamari.len(),
        heights: t_heights,
        checks,
        witness,
        millis: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: &[usize]) -> BracketingFn {
        BracketingFn::new(v.to_vec()).unwrap()
    }

    fn inv(n: usize, pairs: &[(usize, usize)]) -> InversionSet {
        InversionSet::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&BracketingFn::identity(4).unwrap()), InversionSet::empty(4).unwrap());
        assert_eq!(phi(&bf(&[3, 2, 3, 4])), inv(4, &[(2, 1), (3, 1)]));
        assert_eq!(phi(&bf(&[4, 2, 4, 4])), inv(4, &[(2, 1), (3, 1), (4, 1), (4, 3)]));
    }

    #[test]
    fn i2star_examples() {
        assert!(satisfies_i2star(&InversionSet::empty(3).unwrap()));
        assert!(satisfies_i2star(&inv(3, &[(2, 1), (3, 2), (3, 1)])));
        let outside = inv(3, &[(3, 2), (3, 1)]);
        assert!(!satisfies_i2star(&outside));
        assert_eq!(i2star_violation(&outside), Some((3, 1, 2)));
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(
            phi_inverse(&InversionSet::empty(3).unwrap()).unwrap(),
            BracketingFn::identity(3).unwrap()
        );
        assert_eq!(phi_inverse(&inv(4, &[(2, 1), (3, 1)])).unwrap(), bf(&[3, 2, 3, 4]));
        assert_eq!(phi_inverse(&InversionSet::full(3).unwrap()).unwrap(), bf(&[3, 3, 3]));
        assert_eq!(
            phi_inverse(&inv(3, &[(3, 2), (3, 1)])),
            Err(Error::NotInImage { a: 3, b: 1, c: 2 })
        );
    }

    #[test]
    fn verify_embedding_small() {
        let r1 = verify_embedding(1).unwrap();
        assert!(r1.passed());
        assert_eq!((r1.elements, r1.pairs_checked), (1, 1));
        let r3 = verify_embedding(3).unwrap();
        assert!(r3.passed());
        assert_eq!((r3.elements, r3.pairs_checked), (5, 25));
        let r5 = verify_embedding(5).unwrap();
        assert!(r5.passed(), "{r5:?}");
        assert_eq!((r5.elements, r5.pairs_checked), (42, 1764));
        assert!(verify_embedding(0).is_err());
        assert!(verify_embedding(8).is_err());
    }

    #[test]
    fn sampled_embedding_is_deterministic() {
        let a = verify_embedding_sampled(6, 7, 500).unwrap();
        let b = verify_embedding_sampled(6, 7, 500).unwrap();
        assert!(a.passed());
        assert_eq!(a.pairs_checked, 500);
        assert_eq!((a.checks, a.witness), (b.checks, b.witness));
    }

    #[test]
    fn verify_height_examples() {
        let r2 = verify_height(2).unwrap();
        assert!(r2.passed());
        assert_eq!(r2.heights, vec![0, 1]);
        let r4 = verify_height(4).unwrap();
        assert!(r4.passed(), "{r4:?}");
        let elements: Vec<_> = enumerate_tamari(4).unwrap().collect();
        let at = |e: &BracketingFn| r4.heights[elements.iter().position(|x| x == e).unwrap()];
        assert_eq!(at(&bf(&[3, 2, 3, 4])), 2);
        assert_eq!(at(&BracketingFn::top(4).unwrap()), 6);
        assert!(verify_height(6).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_embedding(2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["elements"], 2);
        assert_eq!(v["pairs_checked"], 4);
        assert_eq!(v["checks"]["injective"], true);
        assert!(v["witness"].is_null());
        assert!(v["millis"].is_u64());
    }
}
