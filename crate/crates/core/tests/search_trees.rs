mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use stt_core::opt::{static_cost, FrequencyMap};
use stt_core::{is_valid_search_tree, path, NodeId, PointerMachine, SearchTree, UnrootedTree};

fn check_tree(t: &SearchTree<'_>) {
    assert!(t.validate_stt());
    assert!(t.boundary(t.root()).is_empty());
    for x in t.space().nodes() {
        assert_eq!(
            t.boundary(x),
            brute_boundary(t.space(), &t.subtree_nodes(x)).as_slice()
        );
        if let Some(p) = t.parent(x) {
            assert!(t
                .boundary(x)
                .iter()
                .all(|&u| u == p || t.boundary(p).contains(&u)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn random_rotations_keep_the_tree_valid(seed in any::<u64>(), size in 1usize..25) {
        let mut r = rng(seed);
        let s = random_tree(&mut r, size);
        let mut t = random_stt(&mut r, &s);
        check_tree(&t);
        for _ in 0..40 {
            let x = NodeId::new(r.random_range(0..size));
            if t.parent(x).is_none() {
                prop_assert!(t.rotate(x).is_err());
                continue;
            }
            let before = t.clone();
            let rot = t.rotate(x).unwrap();
            check_tree(&t);
            // only the rotated pair changes subtree contents
            for y in s.nodes().filter(|&y| y != rot.node && y != rot.parent) {
                prop_assert_eq!(before.subtree_nodes(y), t.subtree_nodes(y));
            }
            let mut undo = t.clone();
            undo.rotate(rot.parent).unwrap();
            prop_assert_eq!(&undo, &before);
        }
    }

    #[test]
    fn steiner_closed_agrees_with_definition(seed in any::<u64>(), size in 1usize..13) {
        let mut r = rng(seed);
        let s = random_tree(&mut r, size);
        let t = random_stt(&mut r, &s);
        prop_assert_eq!(t.is_steiner_closed(), t.steiner_closed_direct());
        prop_assert_eq!(t.is_k_cut(2).unwrap(), t.is_steiner_closed());
    }

    #[test]
    fn every_tree_on_a_path_is_steiner_closed(seed in any::<u64>(), size in 1usize..40) {
        let mut r = rng(seed);
        let p = path(size);
        let t = random_stt(&mut r, &p);
        prop_assert!(t.is_steiner_closed());
    }

    #[test]
    fn fast_and_recursive_validity_agree(seed in any::<u64>(), size in 1usize..9) {
        let mut r = rng(seed);
        let s = random_tree(&mut r, size);
        // perturb a valid tree by re-hanging one node
        let mut parents = random_stt(&mut r, &s).parents().to_vec();
        let v = r.random_range(0..size);
        let target = r.random_range(0..size);
        parents[v] = if r.random_bool(0.2) { None } else { Some(NodeId::new(target)) };
        let fast = SearchTree::from_parents(&s, parents.clone()).is_ok();
        prop_assert_eq!(fast, is_valid_search_tree(&s, &parents));
    }

    #[test]
    fn rooted_copies_are_one_cut(seed in any::<u64>(), size in 1usize..30) {
        let mut r = rng(seed);
        let s = random_tree(&mut r, size);
        let root = NodeId::new(r.random_range(0..size));
        let t = SearchTree::rooted_at(&s, root).unwrap();
        prop_assert!(t.is_k_cut(1).unwrap());
        prop_assert!(t.steiner_closed_direct());
        for x in s.nodes() {
            if let Some(p) = t.parent(x) {
                prop_assert!(s.are_adjacent(x, p));
            }
        }
    }
}

#[test]
fn exhaustive_validity_on_small_trees() {
    let mut r = rng(3);
    for size in 1..=6 {
        let s = random_tree(&mut r, size);
        let all = all_search_trees(&s);
        for parents in &all {
            assert!(is_valid_search_tree(&s, parents));
            assert!(SearchTree::from_parents(&s, parents.clone()).is_ok());
        }
        // every parent array not in the list is rejected by both checks
        let total = (size + 1).pow(size as u32);
        let mut accepted = 0;
        for code in 0..total.min(200_000) {
            let mut c = code;
            let parents: Vec<Option<NodeId>> = (0..size)
                .map(|_| {
                    let d = c % (size + 1);
                    c /= size + 1;
                    (d < size).then(|| NodeId::new(d))
                })
                .collect();
            let ok = is_valid_search_tree(&s, &parents);
            assert_eq!(ok, SearchTree::from_parents(&s, parents).is_ok());
            accepted += usize::from(ok);
        }
        assert_eq!(accepted, all.len());
    }
}

#[test]
fn static_tree_replay_costs_depth() {
    let mut r = rng(11);
    let s = random_tree(&mut r, 20);
    let t = random_stt(&mut r, &s);
    let seq: Vec<NodeId> = (0..200)
        .map(|_| NodeId::new(r.random_range(0..20)))
        .collect();
    let mut m = PointerMachine::new(t.clone());
    for &x in &seq {
        m.begin_search();
        m.walk_to(x).unwrap();
    }
    let depth = t.depths();
    let moves: u64 = seq.iter().map(|x| depth[x.index()] as u64 - 1).sum();
    assert_eq!(m.ledger().pointer_moves, moves);
    assert_eq!(m.ledger().searches, 200);
    let p = FrequencyMap::from_sequence(20, &seq).unwrap();
    assert_eq!(m.ledger().model_cost(), static_cost(&t, &p));
}

#[test]
fn spider_chain_verdicts() {
    let s = UnrootedTree::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
    let chain = vec![
        None,
        Some(NodeId::new(0)),
        Some(NodeId::new(1)),
        Some(NodeId::new(2)),
    ];
    let t = SearchTree::from_parents(&s, chain).unwrap();
    assert!(!t.is_steiner_closed());
    assert!(!t.steiner_closed_direct());
}
