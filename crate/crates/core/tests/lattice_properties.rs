mod common;

use sublattice::lattice::{permutation_lattice, small, tamari_lattice, LatticeView};

use common::{all_perm_sets, all_tamari, brute_glb, brute_heights, brute_lub, pointwise_leq, subset};

/// SD∨ and SD∧ from scratch: joins and meets found by scanning the order.
fn naive_semidistributive<T: Clone + PartialEq>(
    all: &[T],
    leq: impl Fn(&T, &T) -> bool + Copy,
) -> (bool, bool) {
    let join = |x: &T, y: &T| brute_lub(all, leq, x, y);
    let meet = |x: &T, y: &T| brute_glb(all, leq, x, y);
    let mut sd_join = true;
    let mut sd_meet = true;
    for x in all {
        for y in all {
            for z in all {
                let xy = join(x, y);
                if xy == join(x, z) && xy != join(x, &meet(y, z)) {
                    sd_join = false;
                }
                let xy = meet(x, y);
                if xy == meet(x, z) && xy != meet(x, &join(y, z)) {
                    sd_meet = false;
                }
            }
        }
    }
    (sd_join, sd_meet)
}

fn verdict_pair<T: Sync>(view: &LatticeView<T>) -> (bool, bool) {
    let v = view.check_semidistributive();
    (v.join_law.is_none(), v.meet_law.is_none())
}

#[test]
fn semidistributivity_agrees_with_naive_check() {
    let usize_leq_chain = |a: &usize, b: &usize| a <= b;
    assert_eq!(verdict_pair(&small::chain(4)), naive_semidistributive(&[0, 1, 2, 3], usize_leq_chain));

    let cube: Vec<usize> = (0..8).collect();
    assert_eq!(verdict_pair(&small::boolean(3)), naive_semidistributive(&cube, |a, b| a & !b == 0));

    let five: Vec<usize> = (0..5).collect();
    let m3 = |a: &usize, b: &usize| a == b || *a == 0 || *b == 4;
    assert_eq!(verdict_pair(&small::diamond()), naive_semidistributive(&five, m3));
    assert_eq!(naive_semidistributive(&five, m3), (false, false));
    let n5 = |a: &usize, b: &usize| a == b || *a == 0 || *b == 4 || (*a == 1 && *b == 2);
    assert_eq!(verdict_pair(&small::pentagon()), naive_semidistributive(&five, n5));

    for n in 1..=3 {
        assert_eq!(
            verdict_pair(&permutation_lattice(n).unwrap()),
            naive_semidistributive(&all_perm_sets(n), subset)
        );
    }
    for n in 1..=4 {
        assert_eq!(
            verdict_pair(&tamari_lattice(n).unwrap()),
            naive_semidistributive(&all_tamari(n), pointwise_leq)
        );
    }
}

#[test]
fn derived_operations_match_library_operations() {
    for n in 1..=4 {
        let with_ops = permutation_lattice(n).unwrap();
        let derived = LatticeView::from_order(all_perm_sets(n), subset).unwrap();
        for x in 0..with_ops.len() {
            for y in 0..with_ops.len() {
                assert_eq!(with_ops.join(x, y), derived.join(x, y));
                assert_eq!(with_ops.meet(x, y), derived.meet(x, y));
            }
        }
        let with_ops = tamari_lattice(n).unwrap();
        let derived = LatticeView::from_order(all_tamari(n), pointwise_leq).unwrap();
        for x in 0..with_ops.len() {
            for y in 0..with_ops.len() {
                assert_eq!(with_ops.join(x, y), derived.join(x, y));
                assert_eq!(with_ops.meet(x, y), derived.meet(x, y));
            }
        }
    }
}

#[test]
fn hasse_closure_reproduces_order() {
    let views = [permutation_lattice(4).unwrap()];
    for view in &views {
        let m = view.len();
        let mut reach = vec![vec![false; m]; m];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (x, y) in view.hasse() {
            assert!(x != y && view.leq(x, y));
            reach[x][y] = true;
        }
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for (x, row) in reach.iter().enumerate() {
            for (y, &r) in row.iter().enumerate() {
                assert_eq!(r, view.leq(x, y));
                // Acyclic: nothing reaches back down.
                assert!(x == y || !(r && reach[y][x]));
            }
        }
    }
}

#[test]
fn hasse_edge_counts() {
    for (n, edges) in [(1, 0), (2, 1), (3, 6), (4, 36)] {
        assert_eq!(permutation_lattice(n).unwrap().hasse().len(), edges, "S_{n}");
    }
    for (n, edges) in [(1, 0), (2, 1), (3, 5), (4, 21)] {
        assert_eq!(tamari_lattice(n).unwrap().hasse().len(), edges, "T_{n}");
    }
}

#[test]
fn permutation_lattice_is_graded_by_rank() {
    for n in 1..=5 {
        let view = permutation_lattice(n).unwrap();
        let heights = view.heights();
        let oracle = brute_heights(view.elements(), subset);
        for (i, a) in view.elements().iter().enumerate() {
            assert_eq!(heights[i], a.rank());
            assert_eq!(oracle[i], a.rank());
        }
    }
}

#[test]
fn boundedness_of_reference_lattices() {
    assert!(!small::diamond().check_bounded().is_bounded());
    assert!(small::chain(2).check_bounded().is_bounded());
    assert!(small::chain(5).check_bounded().is_bounded());
    assert!(small::boolean(3).check_bounded().is_bounded());
    assert!(small::pentagon().check_bounded().is_bounded());
}
