//! The link graph: discs as vertices, ribbons as edges, rotations forgotten.
//!
//! Edge `e` has darts `2e` (at `edges[e].0`) and `2e+1` (at `edges[e].1`).

use serde::Serialize;
use thiserror::Error;

use super::{Disc, RibbonGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RotationSystemError {
    #[error("rotation system has {got} vertices, graph has {expected}")]
    Arity { expected: usize, got: usize },
    #[error("rotation at vertex {0} is not a permutation of its darts")]
    BadRotation(usize),
}

impl LinkGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        assert!(edges.iter().all(|&(u, v)| u < labels.len() && v < labels.len()));
        LinkGraph { labels, edges }
    }

    /// Unlabelled graph on `n` vertices.
    pub fn unlabelled(n: usize, edges: Vec<(usize, usize)>) -> Self {
        LinkGraph::new((0..n).map(|v| v.to_string()).collect(), edges)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn dart_vertex(&self, dart: usize) -> usize {
        let (u, v) = self.edges[dart / 2];
        if dart.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    /// Darts at each vertex in edge order.
    pub fn darts_by_vertex(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for d in 0..2 * self.edges.len() {
            out[self.dart_vertex(d)].push(d);
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertex_count());
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        (uf.set_count(), uf.labels())
    }
}

/// Cyclic order of darts at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(graph: &LinkGraph, rotations: Vec<Vec<usize>>) -> Result<Self, RotationSystemError> {
        let darts = graph.darts_by_vertex();
        if rotations.len() != darts.len() {
            return Err(RotationSystemError::Arity { expected: darts.len(), got: rotations.len() });
        }
        for (v, (rot, own)) in rotations.iter().zip(&darts).enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if &sorted != own {
                return Err(RotationSystemError::BadRotation(v));
            }
        }
        Ok(RotationSystem { rotations })
    }

    /// Darts in edge order at every vertex.
    pub fn default_for(graph: &LinkGraph) -> Self {
        RotationSystem { rotations: graph.darts_by_vertex() }
    }

    pub(crate) fn from_raw(rotations: Vec<Vec<usize>>) -> Self {
        RotationSystem { rotations }
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// Successor of every dart in its vertex rotation.
    pub fn successor_table(&self, dart_count: usize) -> Vec<usize> {
        let mut next = vec![0; dart_count];
        for rot in &self.rotations {
            for k in 0..rot.len() {
                next[rot[k]] = rot[(k + 1) % rot.len()];
            }
        }
        next
    }

    pub fn face_count(&self, graph: &LinkGraph) -> usize {
        let darts = 2 * graph.edges().len();
        let next = self.successor_table(darts);
        let mut seen = vec![false; darts];
        let mut faces = 0;
        for s in 0..darts {
            if !seen[s] {
                faces += 1;
                let mut d = s;
                while !seen[d] {
                    seen[d] = true;
                    d = next[d ^ 1];
                }
            }
        }
        faces
    }

    /// Genus of the embedding: sum over components of `(2 - chi_c) / 2`.
    pub fn genus(&self, graph: &LinkGraph) -> usize {
        let (c, _) = graph.component_labels();
        let isolated = (0..graph.vertex_count()).filter(|&v| self.rotations[v].is_empty()).count();
        let chi = graph.vertex_count() as i64 - graph.edges().len() as i64
            + (self.face_count(graph) + isolated) as i64;
        let g2 = 2 * c as i64 - chi;
        debug_assert!(g2 >= 0 && g2 % 2 == 0);
        (g2 / 2) as usize
    }
}

impl RibbonGraph {
    pub fn link_graph(&self) -> LinkGraph {
        let labels = self
            .discs()
            .map(|d| format!("{}{}", self.generators()[d.generator], d.side.symbol()))
            .collect();
        let edges = self.ribbons().iter().map(|r| (r.ends[0].disc.index(), r.ends[1].disc.index())).collect();
        LinkGraph { labels, edges }
    }

    /// The rotation system this surface induces on its link graph.
    pub fn rotation_system(&self) -> RotationSystem {
        let mut dart_of = std::collections::HashMap::new();
        for (e, r) in self.ribbons().iter().enumerate() {
            dart_of.insert(r.ends[0], 2 * e);
            dart_of.insert(r.ends[1], 2 * e + 1);
        }
        let rotations = (0..self.disc_count())
            .map(|i| {
                let disc = Disc::from_index(i);
                self.rotation(disc)
                    .into_iter()
                    .map(|slot| dart_of[&super::Leg { disc, slot }])
                    .collect()
            })
            .collect();
        RotationSystem { rotations }
    }
}
