use graph_core::Forest;

/// The rule that removed a node from the residual graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TagKind {
    Rake,
    Compress,
}

/// `i_R` or `i_C`: the iteration in which a node left the residual graph and
/// the rule that removed it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tag {
    pub iteration: usize,
    pub kind: TagKind,
}

/// One round of the rake and compress rules on the alive part of a graph.
///
/// `nbrs` lists neighbors by local index; local index order must agree with ID
/// order, since the rake tie-break compares IDs.
pub(crate) fn tag_round<'a>(
    nbrs: impl Fn(usize) -> &'a [usize],
    alive: &[bool],
    l: usize,
) -> Vec<Option<TagKind>> {
    let n = alive.len();
    let alive_nbrs = |v: usize| nbrs(v).iter().copied().filter(|&u| alive[u]);
    let deg: Vec<usize> = (0..n)
        .map(|v| if alive[v] { alive_nbrs(v).count() } else { 0 })
        .collect();
    (0..n)
        .map(|v| {
            if !alive[v] {
                return None;
            }
            match deg[v] {
                0 => Some(TagKind::Rake),
                1 => {
                    let u = alive_nbrs(v).next().expect("degree one");
                    (deg[u] > 1 || v > u).then_some(TagKind::Rake)
                }
                2 => {
                    let mut count = 1;
                    for start in alive_nbrs(v) {
                        let (mut prev, mut cur) = (v, start);
                        while count < l && deg[cur] == 2 {
                            count += 1;
                            let next = alive_nbrs(cur).find(|&w| w != prev).expect("degree two");
                            (prev, cur) = (cur, next);
                        }
                    }
                    (count >= l).then_some(TagKind::Compress)
                }
                _ => None,
            }
        })
        .collect()
}

/// Applies the rake and compress rules once to the residual nodes of `f`.
pub fn tag_iteration(f: &Forest, residual: &[bool], iteration: usize, l: usize) -> Vec<Option<Tag>> {
    assert_eq!(residual.len(), f.node_count(), "one residual flag per node");
    tag_round(|v| f.neighbors(v), residual, l)
        .into_iter()
        .map(|kind| kind.map(|kind| Tag { iteration, kind }))
        .collect()
}

/// Tags from iterating [`tag_iteration`] until the residual graph is empty,
/// with the residual size before every iteration.
pub fn sequential_tags(f: &Forest, l: usize) -> (Vec<Tag>, Vec<usize>) {
    let n = f.node_count();
    let mut residual = vec![true; n];
    let mut tags = vec![None; n];
    let mut sizes = Vec::new();
    let mut iteration = 1;
    loop {
        let remaining = residual.iter().filter(|&&a| a).count();
        if remaining == 0 {
            break;
        }
        sizes.push(remaining);
        for (v, tag) in tag_iteration(f, &residual, iteration, l).into_iter().enumerate() {
            if let Some(tag) = tag {
                tags[v] = Some(tag);
                residual[v] = false;
            }
        }
        iteration += 1;
    }
    (tags.into_iter().map(|t| t.expect("every node is tagged")).collect(), sizes)
}
