use ckmoves::bands::BandDescription;
use ckmoves::diagram::samples;
use ckmoves::experiments::make_singular;
use ckmoves::invariants::{v2, v3};
use ckmoves::moves::{enumerate_trees, move_from_tree, UniTrivalentTree};

#[test]
fn tree_moves_are_one_branched_with_k_plus_one_arcs() {
    for k in 1..=4 {
        for tree in enumerate_trees(k).unwrap() {
            let m = move_from_tree(&tree).unwrap();
            assert_eq!(m.n_components(), k + 1);
            assert!(m.is_one_branched().unwrap(), "{}", tree.serialize());
            assert_eq!(UniTrivalentTree::parse(&tree.serialize()).unwrap().serialize(), tree.serialize());
        }
    }
}

#[test]
fn description_round_trip_realizes_the_same_knots() {
    let base = samples::by_name("3_1#4_1").unwrap();
    let bd = make_singular(&base, &[1, 2, 3], 19).unwrap();
    let back = BandDescription::parse(&bd.serialize()).unwrap();
    assert_eq!(back.serialize(), bd.serialize());
    for subset in [vec![], vec![0], vec![1, 2], vec![0, 1, 2]] {
        let (a, b) = (bd.realize(&subset).unwrap(), back.realize(&subset).unwrap());
        assert_eq!(a, b);
    }
    assert_eq!(bd.realize(&[]).unwrap(), base.canonical());
}

#[test]
fn higher_chords_keep_low_orders() {
    let base = samples::by_name("5_2").unwrap();
    for seed in 0..10 {
        let bd = make_singular(&base, &[3], seed).unwrap();
        let (a, b) = (bd.realize(&[]).unwrap(), bd.realize(&[0]).unwrap());
        assert_eq!(v2(&a), v2(&b), "seed {seed}");
        let bd = make_singular(&base, &[4], seed).unwrap();
        let (a, b) = (bd.realize(&[]).unwrap(), bd.realize(&[0]).unwrap());
        assert_eq!((v2(&a), v3(&a)), (v2(&b), v3(&b)), "seed {seed}");
    }
}
