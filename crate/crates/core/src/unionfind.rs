/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], sets: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Dense labels `0..set_count()` numbered by first appearance.
    #[allow(clippy::needless_range_loop)]
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        out
    }
}

/// Disjoint sets that also track a parity (0 or 1) of each element relative
/// to its root. Used for orientation and edge-direction bookkeeping.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    /// Set on a root when some union contradicted the recorded parities.
    odd_cycle: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n], odd_cycle: vec![false; n] }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // Compress from the top down so each parity is relative to `r`.
        let mut acc = false;
        for &y in path.iter().rev() {
            acc ^= self.parity[y];
            self.parity[y] = acc;
            self.parent[y] = r;
        }
        (r, if x == r { false } else { self.parity[x] })
    }

    /// Record that `a` and `b` differ by `odd`. Returns false on a
    /// contradiction, which marks the merged set.
    pub fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            let ok = (pa ^ pb) == odd;
            if !ok {
                self.odd_cycle[ra] = true;
            }
            return ok;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ odd;
        self.odd_cycle[ra] |= self.odd_cycle[rb];
        true
    }

    /// Whether the set containing `x` has met a contradiction.
    pub fn inconsistent(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.odd_cycle[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_labels() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(3, 1));
        assert!(uf.union(1, 4));
        assert!(!uf.union(4, 3));
        assert_eq!(uf.set_count(), 3);
        assert_eq!(uf.labels(), vec![0, 1, 2, 1, 1]);
    }

    #[test]
    fn parity_tracks_contradictions() {
        let mut p = ParityUnionFind::new(4);
        assert!(p.union(0, 1, true));
        assert!(p.union(1, 2, true));
        assert!(!(p.find(2).1 ^ p.find(0).1));
        assert!(p.union(0, 2, false));
        assert!(!p.inconsistent(0));
        assert!(!p.union(2, 0, true));
        assert!(p.inconsistent(1));
        assert!(!p.inconsistent(3));
    }
}
