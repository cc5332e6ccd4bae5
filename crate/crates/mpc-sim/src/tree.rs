/// The broadcast tree over machines sorted by address.
///
/// Machine `i > 0` hangs below machine `i / fanout`, so machine 0 is the root,
/// every machine has at most `fanout` children, and the depth is the number of
/// base-`fanout` digits of the largest address: `⌈log_fanout M⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BroadcastTree {
    machines: usize,
    fanout: usize,
}

impl BroadcastTree {
    pub fn new(machines: usize, fanout: usize) -> Self {
        assert!(fanout >= 2 || machines <= 1, "fanout must be at least 2");
        BroadcastTree { machines, fanout }
    }

    pub fn parent(&self, machine: usize) -> Option<usize> {
        (machine > 0).then(|| machine / self.fanout)
    }

    pub fn children(&self, machine: usize) -> impl Iterator<Item = usize> {
        let lo = (machine * self.fanout).max(1);
        let hi = ((machine + 1) * self.fanout).min(self.machines);
        lo..hi.max(lo)
    }

    pub fn depth_of(&self, machine: usize) -> usize {
        let mut depth = 0;
        let mut m = machine;
        while m > 0 {
            m /= self.fanout;
            depth += 1;
        }
        depth
    }

    /// Supersteps for one broadcast or one convergecast.
    pub fn depth(&self) -> usize {
        if self.machines <= 1 {
            0
        } else {
            self.depth_of(self.machines - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depths_match_the_logarithm() {
        assert_eq!(BroadcastTree::new(16, 4).depth(), 2);
        assert_eq!(BroadcastTree::new(1, 4).depth(), 0);
        assert_eq!(BroadcastTree::new(1000, 10).depth(), 3);
        assert_eq!(BroadcastTree::new(5, 4).depth(), 2);
        assert_eq!(BroadcastTree::new(4, 4).depth(), 1);
    }

    #[test]
    fn parent_child_relation_is_consistent() {
        let t = BroadcastTree::new(100, 3);
        let mut seen = vec![0; 100];
        for p in 0..100 {
            let kids: Vec<_> = t.children(p).collect();
            assert!(kids.len() <= 3);
            for c in kids {
                assert_eq!(t.parent(c), Some(p));
                assert_eq!(t.depth_of(c), t.depth_of(p) + 1);
                seen[c] += 1;
            }
        }
        assert_eq!(seen[0], 0);
        assert!(seen[1..].iter().all(|&s| s == 1));
    }
}
