use mpc_sim::Outbox;

use crate::state::{Internal, Kind, Link, Msg, NodeState, Status};

/// Applies the messages that update virtual edges: the initial degree
/// exchange and the results of the previous exponentiation step.
pub(crate) fn apply_links(st: &mut NodeState, inbox: &[Msg]) {
    for msg in inbox {
        match *msg {
            Msg::Hello { from, degree } => hello(st, from, degree),
            Msg::Replace { from, link } => {
                if let Some(int) = st.internal.as_mut() {
                    if let Some(k) = int.position(from) {
                        int.links[k] = link;
                    }
                }
            }
            Msg::Track { from, link } => {
                if let Some(j) = st.side_tracking(from) {
                    st.sides[j].tracked = link;
                }
            }
            _ => {}
        }
    }
}

fn hello(st: &mut NodeState, from: usize, degree: usize) {
    let j = st.nbrs.iter().position(|&u| u == from).expect("hello from a neighbor");
    let endpoint = degree != 2;
    st.sides[j].tracked.endpoint = endpoint;
    if st.kind == Kind::Internal {
        let int = st.internal.get_or_insert(Internal {
            links: [Link::internal(st.nbrs[0]), Link::internal(st.nbrs[1])],
            via: [0, 1],
        });
        int.links[j] = Link {
            endpoint,
            furthest: endpoint,
            ..Link::internal(from)
        };
    }
}

/// One exponentiation step of an active internal node.
///
/// Links to internal nodes are replaced by their far links (pointer jumping);
/// links to endpoints are kept. While finding the root, the node furthest from
/// an endpoint also keeps that endpoint's tracked neighbor current, so an
/// endpoint never stores more than one virtual edge per path. When orienting,
/// endpoints take no part and the links carry the orientation tags instead.
pub(crate) fn exponentiate(st: &mut NodeState, out: &mut Outbox<Msg>, orienting: bool) {
    let me = st.me;
    let int = st.internal.as_mut().expect("internal node");
    let [a, b] = int.links;
    match (a.endpoint, b.endpoint) {
        (false, false) => {
            out.send(a.node, Msg::Replace { from: me, link: b });
            out.send(b.node, Msg::Replace { from: me, link: a });
        }
        (true, true) => {
            if !orienting {
                for (near, far) in [(a, b), (b, a)] {
                    if near.furthest {
                        out.send(near.node, Msg::Track { from: me, link: Link::endpoint(far.node) });
                    }
                }
            }
            st.status = Status::Passive;
        }
        (true, false) | (false, true) => {
            let (e, i) = if a.endpoint { (0, 1) } else { (1, 0) };
            let end = int.links[e];
            let inner = int.links[i];
            out.send(inner.node, Msg::Replace { from: me, link: end });
            if !orienting && end.furthest {
                out.send(end.node, Msg::Track { from: me, link: Link::internal(inner.node) });
                int.links[e].furthest = false;
            }
        }
    }
}

/// States with the given pending messages applied, for observation only.
pub(crate) fn snapshot<'a>(states: &[NodeState], pending: impl Fn(usize) -> &'a [Msg]) -> Vec<NodeState> {
    let mut out = states.to_vec();
    for (v, st) in out.iter_mut().enumerate() {
        apply_links(st, pending(v));
    }
    out
}
