use std::collections::BTreeMap;

use lcl_core::Label;

use crate::tree::{CompatTree, PairSet, SlotLabels, TupleSet};

/// A degree-2 node replaced by an edge between its child and its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bypass {
    pub node: usize,
    pub child: usize,
    pub parent: usize,
    /// Slot of `node` facing `child` and facing `parent`.
    pub child_slot: usize,
    pub parent_slot: usize,
    /// Slot of `child` and of `parent` that faced `node`.
    pub child_side_slot: usize,
    pub parent_side_slot: usize,
    pub tuples: TupleSet,
    /// Pairs of the edges below and above `node`, child label first.
    pub lower: PairSet,
    pub upper: PairSet,
}

/// A removed leaf, with everything needed to label it again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovedLeaf {
    pub node: usize,
    /// Slot of the parent that faced the leaf before removal.
    pub slot: usize,
    pub tuples: TupleSet,
    pub up: PairSet,
}

/// A node that lost leaf children, with its slots and tuples from before.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub node: usize,
    pub slots: Vec<usize>,
    pub tuples: TupleSet,
    pub leaves: Vec<RemovedLeaf>,
}

/// Everything needed to lift a solution of the reduced tree back.
///
/// Lifting relabels the pruned parents and their leaves first and then the
/// bypassed nodes, undoing the two halves of the step in reverse order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayRecord {
    pub bypassed: Vec<Bypass>,
    pub pruned: Vec<Pruned>,
    /// Synchronous stages spent on the independent set.
    pub stages: usize,
}

impl ReplayRecord {
    pub fn is_empty(&self) -> bool {
        self.bypassed.is_empty() && self.pruned.is_empty()
    }
}

/// One reduction: bypass an independent set of non-root degree-2 nodes, then
/// remove every non-root leaf.
///
/// The independent set is a maximal independent set of each path formed by
/// the non-root degree-2 nodes.
pub fn reduce_step(tree: &CompatTree) -> (CompatTree, ReplayRecord) {
    let mut next = tree.clone();
    let mut record = ReplayRecord::default();
    let root = tree.root();
    let two = |v: usize| v != root && tree.degree(v) == 2;

    for path in degree_two_paths(tree, &two) {
        let mut stages = 0;
        let picks = rake_compress::path_mis(&path, &mut stages);
        record.stages = record.stages.max(stages);
        for p in picks {
            record.bypassed.push(bypass(&mut next, path[p]));
        }
    }
    record.bypassed.sort_by_key(|b| b.node);

    let leaves: Vec<usize> = next.nodes().filter(|&v| next.is_leaf(v)).collect();
    let mut by_parent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in &leaves {
        by_parent.entry(next.parent(x).expect("leaf has a parent")).or_default().push(x);
    }
    for (y, xs) in by_parent {
        record.pruned.push(prune(&mut next, y, &xs));
    }
    (next, record)
}

/// The maximal paths of nodes satisfying `two`, each listed end to end.
fn degree_two_paths(tree: &CompatTree, two: &impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut paths = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for v in tree.nodes() {
        if !two(v) || seen.contains(&v) {
            continue;
        }
        let mut end = v;
        let mut prev = usize::MAX;
        while let Some(&u) = tree.slots(end).iter().find(|&&u| u != prev && two(u)) {
            prev = end;
            end = u;
        }
        let mut path = vec![end];
        seen.insert(end);
        let mut prev = usize::MAX;
        let mut cur = end;
        while let Some(&u) = tree.slots(cur).iter().find(|&&u| u != prev && two(u)) {
            path.push(u);
            seen.insert(u);
            prev = cur;
            cur = u;
        }
        paths.push(path);
    }
    paths
}

fn bypass(tree: &mut CompatTree, v: usize) -> Bypass {
    let parent = tree.parent(v).expect("bypassed nodes are not the root");
    let child = tree.children(v).next().expect("degree-2 non-root node has a child");
    let child_slot = tree.slot_of(v, child).unwrap();
    let parent_slot = tree.slot_of(v, parent).unwrap();
    let node = tree.remove(v);
    let lower = tree.node(child).up.clone();
    let upper = node.up.clone();

    let through: PairSet = node.tuples.iter().map(|t| (t[child_slot], t[parent_slot])).collect();
    let mut composed = PairSet::new();
    for &(a, b) in &lower {
        for &(_, c) in through.range((b, 0)..=(b, Label::MAX)) {
            for &(_, d) in upper.range((c, 0)..=(c, Label::MAX)) {
                composed.insert((a, d));
            }
        }
    }

    let c = tree.node_mut(child);
    let i = c.slots.iter().position(|&u| u == v).unwrap();
    c.slots[i] = parent;
    c.parent = Some(parent);
    c.up = composed;
    let p = tree.node_mut(parent);
    let j = p.slots.iter().position(|&u| u == v).unwrap();
    p.slots[j] = child;

    Bypass {
        node: v,
        child,
        parent,
        child_slot,
        parent_slot,
        child_side_slot: i,
        parent_side_slot: j,
        tuples: node.tuples,
        lower,
        upper,
    }
}

fn prune(tree: &mut CompatTree, y: usize, leaves: &[usize]) -> Pruned {
    let before = tree.node(y).clone();
    let mut removed = Vec::with_capacity(leaves.len());
    for &x in leaves {
        let leaf = tree.remove(x);
        removed.push(RemovedLeaf {
            node: x,
            slot: before.slots.iter().position(|&u| u == x).unwrap(),
            tuples: leaf.tuples,
            up: leaf.up,
        });
    }
    let allowed: Vec<(usize, Vec<bool>)> = removed
        .iter()
        .map(|leaf| (leaf.slot, completable_below(tree.label_count(), leaf)))
        .collect();
    let keep: Vec<usize> = (0..before.slots.len()).filter(|i| removed.iter().all(|l| l.slot != *i)).collect();
    let node = tree.node_mut(y);
    node.slots = keep.iter().map(|&i| before.slots[i]).collect();
    node.tuples = before
        .tuples
        .iter()
        .filter(|t| allowed.iter().all(|(slot, ok)| ok[t[*slot] as usize]))
        .map(|t| keep.iter().map(|&i| t[i]).collect())
        .collect();
    Pruned {
        node: y,
        slots: before.slots,
        tuples: before.tuples,
        leaves: removed,
    }
}

/// Which labels on the parent's side of a leaf's edge extend to the leaf.
fn completable_below(labels: usize, leaf: &RemovedLeaf) -> Vec<bool> {
    let mut ok = vec![false; labels];
    for &(a, b) in &leaf.up {
        if leaf.tuples.contains(&[a][..]) {
            ok[b as usize] = true;
        }
    }
    ok
}

/// Lifts a solution of the reduced tree to the tree the step started from,
/// choosing the lexicographically smallest option everywhere.
///
/// Returns `None` when some node has no consistent choice, which only happens
/// if `labels` was not a solution.
pub fn lift(record: &ReplayRecord, labels: &mut SlotLabels) -> Option<()> {
    for pruned in &record.pruned {
        let current = labels.get(&pruned.node)?.clone();
        let mut kept = current.iter();
        let fixed: Vec<Option<Label>> = (0..pruned.slots.len())
            .map(|i| {
                if pruned.leaves.iter().any(|l| l.slot == i) {
                    None
                } else {
                    kept.next().copied()
                }
            })
            .collect();
        let tuple = pruned.tuples.iter().find(|t| {
            t.iter().zip(&fixed).all(|(a, f)| f.is_none_or(|b| *a == b))
                && pruned.leaves.iter().all(|l| leaf_label(l, t[l.slot]).is_some())
        })?;
        for leaf in &pruned.leaves {
            labels.insert(leaf.node, vec![leaf_label(leaf, tuple[leaf.slot])?]);
        }
        labels.insert(pruned.node, tuple.clone());
    }
    for b in &record.bypassed {
        let below = labels.get(&b.child)?[b.child_side_slot];
        let above = labels.get(&b.parent)?[b.parent_side_slot];
        let tuple = b.tuples.iter().find(|t| {
            b.lower.contains(&(below, t[b.child_slot])) && b.upper.contains(&(t[b.parent_slot], above))
        })?;
        labels.insert(b.node, tuple.clone());
    }
    Some(())
}

fn leaf_label(leaf: &RemovedLeaf, parent_side: Label) -> Option<Label> {
    leaf.up
        .iter()
        .filter(|&&(_, b)| b == parent_side)
        .map(|&(a, _)| a)
        .find(|&a| leaf.tuples.contains(&[a][..]))
}

/// Number of reduction steps for an `n`-node input: `⌊2·log₂log₂ n⌋`, at least 1.
pub fn shrink_steps(n: usize) -> usize {
    if n < 4 {
        return 1;
    }
    ((2.0 * (n as f64).log2().log2()).floor() as usize).max(1)
}

/// The result of repeated reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shrunk {
    pub tree: CompatTree,
    /// One record per step, in the order the steps ran.
    pub records: Vec<ReplayRecord>,
    /// Node counts before the first step and after each step.
    pub sizes: Vec<usize>,
}

impl Shrunk {
    /// Lifts a solution of the final tree back to the initial one.
    pub fn lift(&self, labels: &mut SlotLabels) -> Option<()> {
        self.records.iter().rev().try_for_each(|r| lift(r, labels))
    }
}

/// Runs `steps` reductions.
pub fn shrink(tree: &CompatTree, steps: usize) -> Shrunk {
    let mut current = tree.clone();
    let mut records = Vec::with_capacity(steps);
    let mut sizes = vec![current.node_count()];
    for _ in 0..steps {
        let (next, record) = reduce_step(&current);
        current = next;
        records.push(record);
        sizes.push(current.node_count());
    }
    Shrunk {
        tree: current,
        records,
        sizes,
    }
}
