use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("line {line}: expected three vertex labels")]
    Syntax { line: usize },
    #[error("triangle {0} repeats a vertex")]
    Degenerate(usize),
    #[error("need an even, non-zero number of triangles, got {0}")]
    TriangleCount(usize),
    #[error("edge {0}-{1} lies on {2} triangles, expected 2")]
    NotClosed(usize, usize, usize),
    #[error("triangles cannot be oriented consistently")]
    NonOrientable,
    #[error("triangulation is not connected")]
    Disconnected,
    #[error("link of vertex {0} is not a single circle")]
    SingularVertex(usize),
    #[error("Euler characteristic is {0}, a sphere has 2")]
    NotASphere(i64),
}

/// An oriented triangulated 2-sphere. Triangles are vertex triples whose
/// cyclic order gives the orientation; every edge is traversed once in each
/// direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulatedSphere {
    labels: Vec<usize>,
    triangles: Vec<[usize; 3]>,
}

impl TriangulatedSphere {
    /// Validate (and, if needed, reorient) triangles given by vertex labels.
    pub fn new(triangles: &[[usize; 3]]) -> Result<Self, SphereError> {
        let labels: Vec<usize> =
            triangles.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut tris: Vec<[usize; 3]> =
            triangles.iter().map(|t| [index[&t[0]], index[&t[1]], index[&t[2]]]).collect();
        for (i, t) in tris.iter().enumerate() {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(SphereError::Degenerate(i));
            }
        }
        if tris.is_empty() || !tris.len().is_multiple_of(2) {
            return Err(SphereError::TriangleCount(tris.len()));
        }
        let mut on_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in tris.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                on_edge.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        for (&(a, b), ts) in &on_edge {
            if ts.len() != 2 {
                return Err(SphereError::NotClosed(labels[a], labels[b], ts.len()));
            }
        }
        orient(&mut tris, &on_edge)?;
        let s = TriangulatedSphere { labels, triangles: tris };
        let chi = s.vertex_count() as i64 - on_edge.len() as i64 + s.triangles.len() as i64;
        for v in 0..s.vertex_count() {
            if !s.vertex_link_is_circle(v) {
                return Err(SphereError::SingularVertex(s.labels[v]));
            }
        }
        if chi != 2 {
            return Err(SphereError::NotASphere(chi));
        }
        Ok(s)
    }

    /// Whitespace- or comma-separated vertex triples, one per line; `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Self, SphereError> {
        let mut tris = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let nums: Result<Vec<usize>, _> =
                body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::parse).collect();
            match nums {
                Ok(v) if v.len() == 3 => tris.push([v[0], v[1], v[2]]),
                _ => return Err(SphereError::Syntax { line: n + 1 }),
            }
        }
        TriangulatedSphere::new(&tris)
    }

    /// Two triangles glued along their boundary.
    pub fn pillow() -> Self {
        TriangulatedSphere::new(&[[0, 1, 2], [0, 2, 1]]).expect("valid sphere")
    }

    /// Boundary of a tetrahedron.
    pub fn tetrahedron() -> Self {
        TriangulatedSphere::new(&[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]).expect("valid sphere")
    }

    /// Suspension of a `k`-gon: poles 0 and `k+1`, `2k` triangles.
    pub fn bipyramid(k: usize) -> Result<Self, SphereError> {
        let top = k + 1;
        let mut tris = Vec::with_capacity(2 * k);
        for i in 0..k {
            let (a, b) = (1 + i, 1 + (i + 1) % k);
            tris.push([0, a, b]);
            tris.push([top, b, a]);
        }
        TriangulatedSphere::new(&tris)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Half the number of triangles.
    pub fn pair_count(&self) -> usize {
        self.triangles.len() / 2
    }

    /// Undirected edges, each with the two triangles containing it.
    pub fn edges(&self) -> BTreeMap<(usize, usize), [usize; 2]> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                out.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        out.into_iter().map(|(e, ts)| (e, [ts[0], ts[1]])).collect()
    }

    fn vertex_link_is_circle(&self, v: usize) -> bool {
        // The far edges of triangles at v must form one cycle.
        let arcs: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .filter_map(|t| {
                let k = t.iter().position(|&x| x == v)?;
                Some((t[(k + 1) % 3], t[(k + 2) % 3]))
            })
            .collect();
        let succ: HashMap<usize, usize> = arcs.iter().copied().collect();
        if succ.len() != arcs.len() || arcs.is_empty() {
            return false;
        }
        let start = arcs[0].0;
        let mut x = start;
        for _ in 0..arcs.len() {
            x = match succ.get(&x) {
                Some(&y) => y,
                None => return false,
            };
        }
        x == start && {
            let mut len = 1;
            let mut y = succ[&start];
            while y != start {
                y = succ[&y];
                len += 1;
            }
            len == arcs.len()
        }
    }
}

/// Flip triangles so that each edge is traversed in both directions.
fn orient(tris: &mut [[usize; 3]], on_edge: &BTreeMap<(usize, usize), Vec<usize>>) -> Result<(), SphereError> {
    let n = tris.len();
    let mut uf = UnionFind::new(n);
    for ts in on_edge.values() {
        uf.union(ts[0], ts[1]);
    }
    if uf.set_count() != 1 {
        return Err(SphereError::Disconnected);
    }
    let directed = |t: &[usize; 3], a: usize, b: usize| (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b);
    let mut flip: Vec<Option<bool>> = vec![None; n];
    flip[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let fi = flip[i].unwrap();
        for (&(a, b), ts) in on_edge {
            if !ts.contains(&i) {
                continue;
            }
            let j = if ts[0] == i { ts[1] } else { ts[0] };
            // Same direction in both (after flips) is inconsistent.
            let same = directed(&tris[i], a, b) == directed(&tris[j], a, b);
            let want = fi ^ same;
            match flip[j] {
                None => {
                    flip[j] = Some(want);
                    queue.push_back(j);
                }
                Some(f) if f != want => return Err(SphereError::NonOrientable),
                _ => {}
            }
        }
    }
    for (t, f) in tris.iter_mut().zip(flip) {
        if f == Some(true) {
            t.swap(1, 2);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_spheres() {
        assert_eq!(TriangulatedSphere::pillow().pair_count(), 1);
        assert_eq!(TriangulatedSphere::tetrahedron().pair_count(), 2);
        let b = TriangulatedSphere::bipyramid(3).unwrap();
        assert_eq!((b.vertex_count(), b.pair_count(), b.edges().len()), (5, 3, 9));
        assert_eq!(TriangulatedSphere::bipyramid(4).unwrap().pair_count(), 4);
    }

    #[test]
    fn parse_reorients() {
        let s = TriangulatedSphere::parse("# tetrahedron\n1 2 3\n0 2 3\n0,1,3\n0 1 2\n").unwrap();
        assert_eq!(s.pair_count(), 2);
        for ((a, b), [t, u]) in s.edges() {
            let d = |t: [usize; 3]| (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b);
            assert_ne!(d(s.triangles()[t]), d(s.triangles()[u]));
        }
    }

    #[test]
    fn rejects_non_spheres() {
        assert!(matches!(TriangulatedSphere::parse("0 1 2\n"), Err(SphereError::TriangleCount(1))));
        assert!(matches!(TriangulatedSphere::parse("0 1\n"), Err(SphereError::Syntax { line: 1 })));
        assert!(matches!(
            TriangulatedSphere::new(&[[0, 1, 2], [0, 2, 3]]),
            Err(SphereError::NotClosed(..))
        ));
        // Two disjoint pillows.
        assert!(matches!(
            TriangulatedSphere::new(&[[0, 1, 2], [0, 2, 1], [3, 4, 5], [3, 5, 4]]),
            Err(SphereError::Disconnected)
        ));
        // A 7-vertex torus.
        let torus: Vec<[usize; 3]> = (0..7)
            .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 3) % 7, (i + 2) % 7]])
            .collect();
        assert!(matches!(TriangulatedSphere::new(&torus), Err(SphereError::NotASphere(0))));
    }
}
