use std::collections::BTreeSet;

use lcl_core::Label;

use crate::{PairSet, RootedInstance};

/// Completability information of a rooted instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completability {
    downward: Vec<BTreeSet<Label>>,
    solvable: bool,
}

/// Computes, for every edge, the labels on the parent's side that extend to a
/// correct solution of the subtree below that edge, with the parent itself
/// unconstrained.
pub fn completability_dp(inst: &RootedInstance) -> Completability {
    let n = inst.node_count();
    let mut order = Vec::with_capacity(n);
    let roots: Vec<usize> = (0..n).filter(|&v| inst.parent(v).is_none()).collect();
    let mut stack = roots.clone();
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(inst.children(v));
    }
    let mut downward = vec![BTreeSet::new(); n];
    for &c in order.iter().rev() {
        let Some(p) = inst.parent(c) else { continue };
        let up = inst.slot_of(c, p).unwrap();
        let own: BTreeSet<Label> = inst
            .node_set(c)
            .iter()
            .filter(|t| children_fit(inst, &downward, c, t, &[up]))
            .map(|t| t[up])
            .collect();
        downward[c] = inst
            .up_pairs(c)
            .iter()
            .filter(|(a, _)| own.contains(a))
            .map(|&(_, b)| b)
            .collect();
    }
    let solvable = roots
        .iter()
        .all(|&r| inst.node_set(r).iter().any(|t| children_fit(inst, &downward, r, t, &[])));
    Completability { downward, solvable }
}

/// Whether every slot of `v` outside `skip` that leads to a child carries a
/// downward-completable label in `tuple`.
fn children_fit(inst: &RootedInstance, downward: &[BTreeSet<Label>], v: usize, tuple: &[Label], skip: &[usize]) -> bool {
    inst.slots(v).iter().enumerate().all(|(i, &u)| {
        skip.contains(&i) || inst.parent(u) != Some(v) || downward[u].contains(&tuple[i])
    })
}

impl Completability {
    /// Labels at the parent's half-edge of the edge above `child` that extend
    /// to the subtree of `child`.
    pub fn downward(&self, child: usize) -> &BTreeSet<Label> {
        &self.downward[child]
    }

    /// Whether every component has a correct solution.
    pub fn solvable(&self) -> bool {
        self.solvable
    }

    /// Label pairs (at `lower` on its first path edge, at `upper` on its last
    /// path edge) that extend to the edges and inner nodes between them: the
    /// path plus everything hanging off its inner nodes. `None` unless
    /// `upper` is a strict ancestor of `lower`.
    pub fn pair_set(&self, inst: &RootedInstance, lower: usize, upper: usize) -> Option<PairSet> {
        let mut path = vec![lower];
        let mut v = lower;
        while v != upper {
            v = inst.parent(v)?;
            path.push(v);
        }
        if path.len() < 2 {
            return None;
        }
        // Relation between the label at `lower` and the label at the upper end
        // of the edge just processed.
        let mut rel: PairSet = inst.up_pairs(lower).clone();
        for w in path.windows(3) {
            let (below, mid, above) = (w[0], w[1], w[2]);
            let from = inst.slot_of(mid, below).unwrap();
            let to = inst.slot_of(mid, above).unwrap();
            let through: BTreeSet<(Label, Label)> = inst
                .node_set(mid)
                .iter()
                .filter(|t| children_fit(inst, &self.downward, mid, t, &[from, to]))
                .map(|t| (t[from], t[to]))
                .collect();
            let edge = inst.up_pairs(mid);
            let mut next = PairSet::new();
            for &(a, b) in &rel {
                for &(x, y) in through.range((b, 0)..=(b, Label::MAX)) {
                    debug_assert_eq!(x, b);
                    for &(_, c) in edge.range((y, 0)..=(y, Label::MAX)) {
                        next.insert((a, c));
                    }
                }
            }
            rel = next;
        }
        Some(rel)
    }
}
