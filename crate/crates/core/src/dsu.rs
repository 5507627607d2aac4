//! Disjoint-set forest, optionally tracking a parity bit along each element's path to its root.

#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    // parity of the element relative to its parent
    parity: Vec<bool>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
            parity: vec![false; n],
        }
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress, accumulating parity from the top of the path down
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn root(&mut self, x: usize) -> usize {
        self.find(x).0
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.union_with_parity(a, b, false).is_ok()
    }

    /// Joins `a` and `b`, recording that their parities differ by `odd`.
    /// Returns `Err(())` when they are already joined with the opposite relation.
    pub fn union_with_parity(&mut self, a: usize, b: usize, odd: bool) -> Result<bool, ()> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if (pa ^ pb) == odd { Ok(false) } else { Err(()) };
        }
        let rel = pa ^ pb ^ odd;
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        self.parity[lo] = rel;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        Ok(true)
    }

    /// Dense class labels numbered in order of first appearance by element index.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for (x, label) in labels.iter_mut().enumerate() {
            let r = self.root(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            *label = root_label[r];
        }
        (labels, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_conflict_detected() {
        let mut d = Dsu::new(4);
        assert!(d.union_with_parity(0, 1, true).unwrap());
        assert!(d.union_with_parity(1, 2, true).unwrap());
        assert_eq!(d.union_with_parity(0, 2, false), Ok(false));
        assert!(d.union_with_parity(0, 2, true).is_err());
        let (labels, n) = d.labels();
        assert_eq!(n, 2);
        assert_eq!(labels, vec![0, 0, 0, 1]);
    }
}
