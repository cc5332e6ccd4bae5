use crate::Forest;

/// A (possibly partial) map from half-edges to labels, keyed by dense half-edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfEdgeLabeling<L> {
    labels: Vec<Option<L>>,
}

impl<L> HalfEdgeLabeling<L> {
    /// An empty labeling sized for `f`.
    pub fn empty(f: &Forest) -> Self {
        HalfEdgeLabeling {
            labels: std::iter::repeat_with(|| None)
                .take(f.half_edge_count())
                .collect(),
        }
    }

    /// A total labeling from one label per half-edge, in half-edge order.
    pub fn from_vec(labels: Vec<L>) -> Self {
        HalfEdgeLabeling {
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    pub fn get(&self, half_edge: usize) -> Option<&L> {
        self.labels.get(half_edge).and_then(Option::as_ref)
    }

    pub fn set(&mut self, half_edge: usize, label: L) -> Option<L> {
        self.labels[half_edge].replace(label)
    }

    /// Label of the half-edge `(v, {v,u})`.
    pub fn at(&self, f: &Forest, v: usize, u: usize) -> Option<&L> {
        f.half_edge_index(v, u).and_then(|h| self.get(h))
    }

    pub fn set_at(&mut self, f: &Forest, v: usize, u: usize, label: L) -> Option<L> {
        let h = f
            .half_edge_index(v, u)
            .expect("set_at on a pair that is not an edge");
        self.set(h, label)
    }

    /// `(half-edge index, label)` for every labeled half-edge.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &L)> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(h, l)| l.as_ref().map(|l| (h, l)))
    }

    pub fn map<M>(&self, mut f: impl FnMut(&L) -> M) -> HalfEdgeLabeling<M> {
        HalfEdgeLabeling {
            labels: self.labels.iter().map(|l| l.as_ref().map(&mut f)).collect(),
        }
    }
}
