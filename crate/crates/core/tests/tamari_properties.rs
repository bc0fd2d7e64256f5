mod common;

use proptest::prelude::*;
use sublattice::{enumerate_tamari, validate_bracketing, BracketingFn};

use common::{all_tamari, brute_glb, brute_heights, brute_lub, catalan, pointwise_leq};

#[test]
fn catalan_counts_up_to_10() {
    for n in 1..=10 {
        assert_eq!(enumerate_tamari(n).unwrap().count() as u64, catalan(n), "n = {n}");
    }
}

#[test]
fn enumeration_is_strictly_lexicographic() {
    for n in 1..=8 {
        let all = all_tamari(n);
        assert!(all.windows(2).all(|w| w[0].values() < w[1].values()));
    }
}

#[test]
fn pointwise_min_stays_valid_up_to_6() {
    for n in 1..=6 {
        let all = all_tamari(n);
        for e in &all {
            for f in &all {
                let min: Vec<usize> =
                    e.values().iter().zip(f.values()).map(|(x, y)| *x.min(y)).collect();
                assert!(validate_bracketing(&min).is_valid(), "{e} ^ {f}");
            }
        }
    }
}

#[test]
fn join_and_meet_are_bounds_up_to_5() {
    for n in 1..=5 {
        let all = all_tamari(n);
        for e in &all {
            for f in &all {
                assert_eq!(e.join(f).unwrap(), brute_lub(&all, pointwise_leq, e, f), "{e} v {f}");
                assert_eq!(e.meet(f).unwrap(), brute_glb(&all, pointwise_leq, e, f), "{e} ^ {f}");
            }
        }
    }
}

#[test]
fn lattice_axioms_on_t4() {
    let all = all_tamari(4);
    for x in &all {
        assert_eq!(&x.join(x).unwrap(), x);
        assert_eq!(&x.meet(x).unwrap(), x);
        for y in &all {
            assert_eq!(x.join(y).unwrap(), y.join(x).unwrap());
            assert_eq!(x.meet(y).unwrap(), y.meet(x).unwrap());
            assert_eq!(&x.join(&x.meet(y).unwrap()).unwrap(), x);
            assert_eq!(&x.meet(&x.join(y).unwrap()).unwrap(), x);
            for z in &all {
                assert_eq!(
                    x.join(&y.join(z).unwrap()).unwrap(),
                    x.join(y).unwrap().join(z).unwrap()
                );
                assert_eq!(
                    x.meet(&y.meet(z).unwrap()).unwrap(),
                    x.meet(y).unwrap().meet(z).unwrap()
                );
            }
        }
    }
}

#[test]
fn cover_down_walks_to_bottom_in_height_steps() {
    for n in 1..=7 {
        for e in all_tamari(n) {
            let chain = e.cover_down_chain();
            assert_eq!(chain.len() - 1, e.height());
            assert!(chain.last().unwrap().is_bottom());
            for w in chain.windows(2) {
                assert_eq!(w[1].height() + 1, w[0].height());
                assert!(w[1].leq(&w[0]).unwrap());
            }
        }
    }
}

#[test]
fn height_is_longest_chain_up_to_5() {
    for n in 1..=5 {
        let all = all_tamari(n);
        let oracle = brute_heights(&all, pointwise_leq);
        for (e, h) in all.iter().zip(oracle) {
            assert_eq!(e.height(), h, "{e}");
        }
    }
}

/// Uniform choice at each position within the range (E1)/(E2) leave open.
fn bracketing_of(n: usize) -> impl Strategy<Value = BracketingFn> {
    proptest::collection::vec(0.0f64..1.0, n).prop_map(move |u| {
        let mut values: Vec<usize> = Vec::with_capacity(n);
        for j in 1..=n {
            let cap = (1..j)
                .map(|k| values[k - 1])
                .filter(|&e| e >= j)
                .min()
                .unwrap_or(n);
            let choices = cap - j + 1;
            values.push(j + ((choices as f64 * u[j - 1]) as usize).min(choices - 1));
        }
        BracketingFn::new(values).unwrap()
    })
}

fn bracketing(max_n: usize) -> impl Strategy<Value = BracketingFn> {
    (1..=max_n).prop_flat_map(bracketing_of)
}

proptest! {
    #[test]
    fn join_and_meet_bound_random_pairs(
        (e, f) in (2usize..=30).prop_flat_map(|n| (bracketing_of(n), bracketing_of(n)))
    ) {
        let j = e.join(&f).unwrap();
        let m = e.meet(&f).unwrap();
        prop_assert!(e.leq(&j).unwrap() && f.leq(&j).unwrap());
        prop_assert!(m.leq(&e).unwrap() && m.leq(&f).unwrap());
        prop_assert!(m.leq(&j).unwrap());
    }

    #[test]
    fn cover_down_drops_height_by_one(e in bracketing(40)) {
        if let Some(f) = e.cover_down() {
            prop_assert_eq!(f.height() + 1, e.height());
        } else {
            prop_assert!(e.is_bottom());
        }
    }
}
