//! Left-Right planarity test (de Fraysseix–Rosenstiehl criterion in the
//! formulation of Brandes). Loops and parallel edges never affect planarity
//! and are dropped first.

use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }

    fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

const UNSEEN: usize = usize::MAX;

struct LrState {
    adj: Vec<Vec<(usize, usize)>>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    used: Vec<bool>,
    // Per oriented edge.
    ends: Vec<(usize, usize)>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    eref: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
}

impl LrState {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for k in 0..self.adj[v].len() {
            let (w, uid) = self.adj[v][k];
            if self.used[uid] {
                continue;
            }
            self.used[uid] = true;
            let ei = self.ends.len();
            self.ends.push((v, w));
            self.out[v].push(ei);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            if self.height[w] == UNSEEN {
                self.parent_edge[w] = Some(ei);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[ei] = self.height[w];
            }
            self.nesting[ei] = 2 * self.lowpt[ei] + (self.lowpt2[ei] < self.height[v]) as usize;
            if let Some(e) = e {
                if self.lowpt[ei] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[ei]);
                    self.lowpt[e] = self.lowpt[ei];
                } else if self.lowpt[ei] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[ei]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[ei]);
                }
            }
        }
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        i.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => UNSEEN,
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        // Return edges of ei all go to the right of p.
        loop {
            let mut q = self.stack.pop().expect("return edge pushed");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    self.eref[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.eref[qlow] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Earlier siblings' edges conflicting with ei go to the left.
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.eref[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                self.eref[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !p.is_empty() {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        let hu = self.height[u];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.left.high = self.eref[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.eref[p.left.low.unwrap()] = p.right.low;
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.right.high = self.eref[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.eref[p.right.low.unwrap()] = p.left.low;
                p.right.low = None;
            }
            self.stack.push(p);
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let outs = self.out[v].clone();
        for (k, &ei) in outs.iter().enumerate() {
            let w = self.ends[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("only non-root vertices have return edges below them");
                if k == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            let u = self.ends[e].0;
            self.trim_back_edges(u);
            if self.lowpt[e] < self.height[u] {
                let top = *self.stack.last().expect("pending return edge");
                let (hl, hr) = (top.left.high, top.right.high);
                self.eref[e] = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => hl,
                    (Some(_), None) => hl,
                    _ => hr,
                };
            }
        }
        true
    }
}

/// Planarity of the multigraph on `n` vertices with the given edges.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let simple: BTreeSet<(usize, usize)> =
        edges.iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if n >= 3 && simple.len() > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for (uid, &(u, v)) in simple.iter().enumerate() {
        adj[u].push((v, uid));
        adj[v].push((u, uid));
    }
    let m = simple.len();
    let mut st = LrState {
        adj,
        height: vec![UNSEEN; n],
        parent_edge: vec![None; n],
        used: vec![false; m],
        ends: Vec::with_capacity(m),
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        lowpt_edge: vec![0; m],
        stack_bottom: vec![0; m],
        eref: vec![None; m],
        out: vec![Vec::new(); n],
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == UNSEEN {
            st.height[v] = 0;
            roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut st.out[v]);
        out.sort_by_key(|&e| st.nesting[e]);
        st.out[v] = out;
    }
    roots.into_iter().all(|r| {
        st.stack.clear();
        st.test(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    #[test]
    fn small_complete_graphs() {
        assert!(is_planar(4, &complete(4)));
        assert!(!is_planar(5, &complete(5)));
        let mut k5_minus = complete(5);
        k5_minus.pop();
        assert!(is_planar(5, &k5_minus));
    }

    #[test]
    fn utility_graph_and_petersen() {
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert!(!is_planar(6, &k33));
        let mut k33_minus = k33.clone();
        k33_minus.remove(4);
        assert!(is_planar(6, &k33_minus));
        let petersen = vec![
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        assert!(!is_planar(10, &petersen));
    }

    #[test]
    fn multigraph_features_are_ignored() {
        assert!(is_planar(2, &[(0, 1), (0, 1), (1, 1), (0, 0)]));
        assert!(is_planar(1, &[(0, 0), (0, 0)]));
        assert!(is_planar(0, &[]));
    }

    #[test]
    fn grid_and_disjoint_union() {
        let mut grid = Vec::new();
        for r in 0..5 {
            for c in 0..5 {
                let v = r * 5 + c;
                if c < 4 {
                    grid.push((v, v + 1));
                }
                if r < 4 {
                    grid.push((v, v + 5));
                }
            }
        }
        assert!(is_planar(25, &grid));
        let mut both = grid.clone();
        both.extend(complete(5).into_iter().map(|(u, v)| (u + 25, v + 25)));
        assert!(!is_planar(30, &both));
    }
}
