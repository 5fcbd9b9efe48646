use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use super::pairing::{FacePairing, FacePairingError};
use super::sphere::TriangulatedSphere;
use crate::unionfind::{ParityUnionFind, UnionFind};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Pairing(#[from] FacePairingError),
    #[error("link of vertex {vertex} is not a closed surface")]
    LinkNotClosed { vertex: usize },
    #[error("link of vertex {vertex} is not orientable")]
    NonOrientableLink { vertex: usize },
    #[error("Euler characteristic {euler} disagrees with vertex-link genera {genera:?}")]
    CrossCheck { euler: i64, genera: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub tetrahedra: usize,
}

impl CellCounts {
    pub fn euler(self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.tetrahedra as i64
    }
}

/// The closed surface linking one quotient vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    /// Quotient vertex; 0 is the cone apex.
    pub vertex: usize,
    /// Sphere vertex labels merged into this vertex (empty for the apex).
    pub sphere_vertices: Vec<usize>,
    pub triangles: usize,
    pub euler: i64,
    pub orientable: bool,
    pub components: usize,
    pub connected: bool,
    /// Sum of the genera of the components.
    pub genus: usize,
}

/// The cone on a triangulated sphere with boundary triangles identified in
/// pairs. Tetrahedron `i` is the cone on sphere triangle `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub pairing: FacePairing,
    /// Quotient vertex of each sphere vertex (the apex is vertex 0).
    pub vertex_class: Vec<usize>,
    pub counts: CellCounts,
    pub euler: i64,
    /// Edge classes glued to themselves with reversed direction.
    pub self_reversed_edges: usize,
    pub links: Vec<VertexLink>,
}

/// Corner `k` of a cone tetrahedron `[apex, a0, a1, a2]`, as the oriented
/// triangle its link inherits. Positions 0..4 index the tetrahedron.
const CORNER_CYCLE: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [3, 0, 1], [2, 1, 0]];

fn runs_forward(cycle: [usize; 3], a: usize, b: usize) -> bool {
    (0..3).any(|i| cycle[i] == a && cycle[(i + 1) % 3] == b)
}

struct LinkBuilder {
    /// Link vertices `(tet, corner, other)` at index `16 tet + 4 corner + other`.
    points: UnionFind,
    /// Corner triangles `(tet, corner)` at `4 tet + corner`, with orientation.
    corners: ParityUnionFind,
    sides_glued: Vec<u8>,
}

impl LinkBuilder {
    fn new(tets: usize) -> Self {
        LinkBuilder {
            points: UnionFind::new(16 * tets),
            corners: ParityUnionFind::new(4 * tets),
            sides_glued: vec![0; 4 * tets],
        }
    }

    /// Glue corner `k1` of `t1` to corner `k2` of `t2` along the side whose
    /// ends `m1[i]` (positions in `t1`) match `m2[i]` (positions in `t2`).
    fn glue(&mut self, (t1, k1): (usize, usize), (t2, k2): (usize, usize), m1: [usize; 2], m2: [usize; 2]) {
        for i in 0..2 {
            self.points.union(16 * t1 + 4 * k1 + m1[i], 16 * t2 + 4 * k2 + m2[i]);
        }
        let same = runs_forward(CORNER_CYCLE[k1], m1[0], m1[1]) == runs_forward(CORNER_CYCLE[k2], m2[0], m2[1]);
        self.corners.union(4 * t1 + k1, 4 * t2 + k2, same);
        self.sides_glued[4 * t1 + k1] += 1;
        self.sides_glued[4 * t2 + k2] += 1;
    }
}

pub fn build_quotient(sphere: &TriangulatedSphere, fp: &FacePairing) -> Result<QuotientComplex, QuotientError> {
    let want = sphere.pair_count();
    if fp.pairs().len() != want {
        return Err(FacePairingError::PairCount { got: fp.pairs().len(), want }.into());
    }
    FacePairing::check_orientation(fp.gluings())?;
    let tris = sphere.triangles();
    let tets = tris.len();

    // Boundary vertices and edges. Edge direction parity detects edges
    // folded onto themselves.
    let edges = sphere.edges();
    let edge_index: BTreeMap<(usize, usize), usize> = edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut verts = UnionFind::new(sphere.vertex_count());
    let mut edge_uf = ParityUnionFind::new(edges.len());
    for (&(a, b), g) in fp.pairs().iter().zip(fp.gluings()) {
        let (ta, tb) = (tris[a], tris[b]);
        for s in 0..3 {
            verts.union(ta[s], tb[g.apply(s)]);
            let (x, y) = (ta[s], ta[(s + 1) % 3]);
            let (u, v) = (tb[g.apply(s)], tb[g.apply((s + 1) % 3)]);
            let e1 = edge_index[&(x.min(y), x.max(y))];
            let e2 = edge_index[&(u.min(v), u.max(v))];
            edge_uf.union(e1, e2, (x > y) != (u > v));
        }
    }
    let vlabels = verts.labels();
    let vertex_class: Vec<usize> = vlabels.iter().map(|&c| c + 1).collect();
    let vq = verts.set_count();
    let mut edge_roots = HashSet::new();
    let mut reversed = HashSet::new();
    for e in 0..edges.len() {
        let (r, _) = edge_uf.find(e);
        edge_roots.insert(r);
        if edge_uf.inconsistent(e) {
            reversed.insert(r);
        }
    }
    let eq = edge_roots.len();
    let counts = CellCounts {
        vertices: 1 + vq,
        edges: sphere.vertex_count() + eq,
        faces: edges.len() + want,
        tetrahedra: tets,
    };

    // Corner triangles glued across interior cone faces, then across the
    // boundary pairing.
    let mut lb = LinkBuilder::new(tets);
    let pos = |t: usize, v: usize| 1 + tris[t].iter().position(|&x| x == v).expect("vertex on triangle");
    for (&(u, v), &[t1, t2]) in &edges {
        let (u1, v1, u2, v2) = (pos(t1, u), pos(t1, v), pos(t2, u), pos(t2, v));
        lb.glue((t1, 0), (t2, 0), [u1, v1], [u2, v2]);
        lb.glue((t1, u1), (t2, u2), [0, v1], [0, v2]);
        lb.glue((t1, v1), (t2, v2), [0, u1], [0, u2]);
    }
    for (&(a, b), g) in fp.pairs().iter().zip(fp.gluings()) {
        for s in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&x| x != s).collect();
            lb.glue(
                (a, 1 + s),
                (b, 1 + g.apply(s)),
                [1 + others[0], 1 + others[1]],
                [1 + g.apply(others[0]), 1 + g.apply(others[1])],
            );
        }
    }

    let corner_vertex = |t: usize, k: usize| if k == 0 { 0 } else { vertex_class[tris[t][k - 1]] };
    let mut links = Vec::with_capacity(1 + vq);
    for q in 0..=vq {
        let corners: Vec<(usize, usize)> =
            (0..tets).flat_map(|t| (0..4).map(move |k| (t, k))).filter(|&(t, k)| corner_vertex(t, k) == q).collect();
        links.push(classify_link(&mut lb, q, &corners, sphere, &vertex_class)?);
    }

    Ok(QuotientComplex {
        pairing: fp.clone(),
        vertex_class,
        euler: counts.euler(),
        counts,
        self_reversed_edges: reversed.len(),
        links,
    })
}

fn classify_link(
    lb: &mut LinkBuilder,
    q: usize,
    corners: &[(usize, usize)],
    sphere: &TriangulatedSphere,
    vertex_class: &[usize],
) -> Result<VertexLink, QuotientError> {
    if corners.iter().any(|&(t, k)| lb.sides_glued[4 * t + k] != 3) {
        return Err(QuotientError::LinkNotClosed { vertex: q });
    }
    // Per component: triangles and distinct link vertices.
    let mut comp: BTreeMap<usize, (usize, HashSet<usize>)> = BTreeMap::new();
    let mut orientable = true;
    for &(t, k) in corners {
        let (root, _) = lb.corners.find(4 * t + k);
        orientable &= !lb.corners.inconsistent(4 * t + k);
        let entry = comp.entry(root).or_default();
        entry.0 += 1;
        for m in (0..4).filter(|&m| m != k) {
            entry.1.insert(lb.points.find(16 * t + 4 * k + m));
        }
    }
    if !orientable {
        return Err(QuotientError::NonOrientableLink { vertex: q });
    }
    let mut euler = 0i64;
    let mut genus = 0usize;
    for (tri, pts) in comp.values() {
        let chi = pts.len() as i64 - (3 * tri / 2) as i64 + *tri as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(QuotientError::LinkNotClosed { vertex: q });
        }
        euler += chi;
        genus += ((2 - chi) / 2) as usize;
    }
    let sphere_vertices = (0..sphere.vertex_count())
        .filter(|&v| vertex_class[v] == q)
        .map(|v| sphere.labels()[v])
        .collect();
    Ok(VertexLink {
        vertex: q,
        sphere_vertices,
        triangles: corners.len(),
        euler,
        orientable,
        components: comp.len(),
        connected: comp.len() == 1,
        genus,
    })
}

/// Evidence for the manifold decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldCertificate {
    pub is_manifold: bool,
    pub euler: i64,
    /// Genus of each vertex link, apex first.
    pub link_genera: Vec<usize>,
    /// Vertices whose link is not a sphere.
    pub singular_vertices: Vec<usize>,
    /// When exactly one vertex is singular, removing neighbourhoods of all
    /// the others leaves it as the only singular point.
    pub sole_singular_vertex: Option<usize>,
    pub links_connected: bool,
    pub self_reversed_edges: usize,
}

/// `χ = 0` decides; the vertex links are checked to agree.
pub fn is_manifold(q: &QuotientComplex) -> Result<ManifoldCertificate, QuotientError> {
    let link_genera: Vec<usize> = q.links.iter().map(|l| l.genus).collect();
    let singular_vertices: Vec<usize> =
        q.links.iter().filter(|l| l.genus > 0 || !l.connected).map(|l| l.vertex).collect();
    let by_euler = q.euler == 0;
    let by_links = singular_vertices.is_empty();
    if by_euler != by_links {
        return Err(QuotientError::CrossCheck { euler: q.euler, genera: link_genera });
    }
    Ok(ManifoldCertificate {
        is_manifold: by_euler,
        euler: q.euler,
        sole_singular_vertex: if singular_vertices.len() == 1 { Some(singular_vertices[0]) } else { None },
        singular_vertices,
        link_genera,
        links_connected: q.links.iter().all(|l| l.connected),
        self_reversed_edges: q.self_reversed_edges,
    })
}

/// Convenience: the per-vertex link summaries.
pub fn vertex_links(q: &QuotientComplex) -> &[VertexLink] {
    &q.links
}
