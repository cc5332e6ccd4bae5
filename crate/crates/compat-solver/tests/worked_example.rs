//! A ten-node compatibility tree on labels {0, 1, 2} where every edge allows
//! the pairs 01 and 12 (child label first), inner nodes and the root need
//! pairwise distinct labels. Leaves accept any label, except that leaf 9
//! only accepts 0 in the documented run, which makes the instance unsolvable.
//!
//! ```text
//!            3 (root)
//!           / \
//!     z =  0   7
//!         / \
//!        1   2
//!       / \   \
//!      4   5   6
//!      |       |
//!      8       9
//! ```

mod common;

use std::collections::BTreeMap;

use compat_solver::{check_partition, phase1, phase2, CompatTree, MemoEntry, PairSet, TupleSet};

const EDGES: [(usize, usize); 9] = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (6, 9)];
const ROOT: usize = 3;
const Z: usize = 0;

fn distinct(len: usize) -> TupleSet {
    let mut out = TupleSet::new();
    for t in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        out.insert(t[..len].to_vec());
    }
    out
}

fn example(restrict_leaf: bool) -> CompatTree {
    let pairs: PairSet = [(0, 1), (1, 2)].into();
    let mut slots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, b) in EDGES {
        slots.entry(a).or_default().push(b);
        slots.entry(b).or_default().push(a);
    }
    let nodes = slots
        .into_iter()
        .map(|(v, s)| {
            let tuples = if v == 9 && restrict_leaf {
                [vec![0]].into()
            } else if s.len() == 1 && v != ROOT {
                [vec![0], vec![1], vec![2]].into()
            } else {
                distinct(s.len())
            };
            (v, (s, tuples, pairs.clone()))
        })
        .collect();
    CompatTree::new(3, ROOT, nodes).unwrap()
}

fn decided(labels: &[u16]) -> MemoEntry {
    MemoEntry::Decided(labels.iter().copied().collect())
}

#[test]
fn first_phase_follows_the_documented_run() {
    let tree = example(true);
    let state = phase1(&tree, false).unwrap();
    let merges: Vec<usize> = state.history().iter().skip(1).map(|r| r.merges).collect();
    assert_eq!(merges, [3, 3, 0, 3, 0]);
    assert_eq!(state.iterations(), 5);
    assert!(state.active().is_empty());

    let first_merges: Vec<&PairSet> = state.links().iter().filter(|l| l.pred.is_some()).take(3).map(|l| &l.pairs).collect();
    let composed: PairSet = [(0, 1), (1, 1), (1, 2)].into();
    assert!(first_merges.iter().all(|p| **p == composed));

    let root_slot = tree.slot_of(ROOT, 7).unwrap();
    assert_eq!(state.memo().get(ROOT, root_slot), Some(&decided(&[1, 2])));
    // z gets "yes" on both in-edges, turns the smaller child's edge into "no"
    // and decides the other one.
    let z_memo = state.memo().of(Z).unwrap();
    assert_eq!(z_memo[tree.slot_of(Z, 1).unwrap()], MemoEntry::Undecided);
    assert_eq!(z_memo[tree.slot_of(Z, 2).unwrap()], decided(&[1]));
}

#[test]
fn second_phase_agrees_with_completability() {
    for restrict_leaf in [true, false] {
        let tree = example(restrict_leaf);
        let state = phase1(&tree, false).unwrap();
        let (inst, _) = common::to_instance(&tree);
        let solvable = oracle::completability_dp(&inst).solvable();
        assert_eq!(solvable, !restrict_leaf);
        assert_eq!(state.is_unsatisfiable(), restrict_leaf);
        if restrict_leaf {
            continue;
        }
        let labels = phase2(&tree, &state).unwrap().expect("solvable");
        assert!(tree.is_solution(&labels.labels));
        assert!(check_partition(&tree, &state, &labels.time_sets));
        assert!(labels.iterations() <= state.iterations() + 2);
    }
}
