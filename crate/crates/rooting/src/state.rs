use mpc_sim::Words;

/// Orientation knowledge carried by a link to a path endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tag {
    Unknown,
    Source,
    Sink,
}

/// A virtual edge as held by one of its endpoints. Packs into one word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Link {
    pub node: usize,
    /// The far node is a path endpoint rather than an internal node.
    pub endpoint: bool,
    /// The holder is the node furthest from that endpoint among those linked to it.
    pub furthest: bool,
    pub tag: Tag,
}

impl Link {
    pub fn internal(node: usize) -> Self {
        Link {
            node,
            endpoint: false,
            furthest: false,
            tag: Tag::Unknown,
        }
    }

    pub fn endpoint(node: usize) -> Self {
        Link {
            endpoint: true,
            ..Link::internal(node)
        }
    }
}

/// What a non-internal node announces to the endpoints it is linked to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Announce {
    Leaf,
    Branch,
    Midpoint,
    Converting,
}

/// Per input edge bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Side {
    /// The edge still belongs to the residual graph.
    pub residual: bool,
    /// A path ending here was set aside through this edge.
    pub set_aside_in: bool,
    /// For non-internal nodes: the latest virtual neighbor along this edge's path.
    pub tracked: Link,
    /// Announcement received from `tracked` in the current phase.
    pub heard: Option<Announce>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    /// Residual degree other than two.
    Endpoint,
    /// A former endpoint now of residual degree two that still acts as an endpoint.
    Midpoint,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Status {
    Active,
    /// An internal node linked to both endpoints of its path; it takes no further part.
    Passive,
    /// A leaf that set its path aside through input neighbor `toward`.
    Source { toward: usize, sink: usize },
    Root,
}

/// The two virtual edges of an internal node, with the input edge (as an
/// index into the neighbor list) each one extends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Internal {
    pub links: [Link; 2],
    pub via: [usize; 2],
}

impl Internal {
    pub fn position(&self, node: usize) -> Option<usize> {
        self.links.iter().position(|l| l.node == node)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NodeState {
    pub me: usize,
    pub nbrs: Vec<usize>,
    pub sides: Vec<Side>,
    pub rdeg: usize,
    pub kind: Kind,
    pub status: Status,
    pub internal: Option<Internal>,
    pub converted_now: bool,
    pub parent: Option<usize>,
}

impl NodeState {
    pub fn new(me: usize, nbrs: Vec<usize>) -> Self {
        let sides = nbrs
            .iter()
            .map(|&u| Side {
                residual: true,
                set_aside_in: false,
                tracked: Link::endpoint(u),
                heard: None,
            })
            .collect();
        NodeState {
            me,
            rdeg: nbrs.len(),
            kind: if nbrs.len() == 2 { Kind::Internal } else { Kind::Endpoint },
            status: if nbrs.is_empty() { Status::Root } else { Status::Active },
            nbrs,
            sides,
            internal: None,
            converted_now: false,
            parent: None,
        }
    }

    pub fn residual_sides(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.sides.len()).filter(|&j| self.sides[j].residual)
    }

    /// Residual side whose tracked virtual neighbor is `node`.
    pub fn side_tracking(&self, node: usize) -> Option<usize> {
        self.residual_sides().find(|&j| self.sides[j].tracked.node == node)
    }

    pub fn is_active_endpoint(&self) -> bool {
        self.status == Status::Active && self.kind != Kind::Internal
    }

    /// Whether this node no longer holds up termination of root finding.
    pub fn settled(&self) -> bool {
        !self.is_active_endpoint()
    }

    /// Virtual edges currently stored.
    pub fn virtual_edges(&self) -> usize {
        match (&self.internal, self.kind) {
            (Some(_), Kind::Internal) => 2,
            _ => self.residual_sides().count(),
        }
    }
}

impl Words for Link {
    fn words(&self) -> usize {
        1
    }
}

impl Words for NodeState {
    fn words(&self) -> usize {
        // Own ID with flags, neighbors, one packed word per side, the two
        // internal links and the parent.
        1 + self.nbrs.len() + self.sides.len() + 2 * usize::from(self.internal.is_some()) + 1
    }
}

/// Messages of root finding and path orientation. The sender is named
/// explicitly; a node ID and a few flag bits share one word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Msg {
    Hello { from: usize, degree: usize },
    Announce { from: usize, what: Announce },
    SetAside { from: usize },
    /// Replace the receiver's link to `from` with `link`.
    Replace { from: usize, link: Link },
    /// An endpoint replaces its tracked neighbor `from` with `link`.
    Track { from: usize, link: Link },
    EdgeRole { from: usize, tag: Option<Tag> },
}

impl Words for Msg {
    fn words(&self) -> usize {
        match self {
            Msg::Hello { .. } | Msg::Announce { .. } | Msg::SetAside { .. } | Msg::EdgeRole { .. } => 1,
            Msg::Replace { .. } | Msg::Track { .. } => 2,
        }
    }
}
