//! Quotients of a 3-ball by pairwise identification of its boundary
//! triangles.
//!
//! The ball is the cone on a triangulated sphere: one tetrahedron per
//! boundary triangle, all sharing an interior apex. A face pairing matches
//! the triangles in pairs and glues each pair by one of the three
//! orientation-reversing corner bijections. The quotient is a closed
//! 3-manifold exactly when its Euler characteristic vanishes; otherwise
//! some vertex links are surfaces of positive genus.

mod pairing;
mod quotient;
mod sphere;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

pub use pairing::{enumerate_pairings, pairing_count, FacePairing, FacePairingError, Gluing, PairingStream};
pub use quotient::{
    build_quotient, is_manifold, vertex_links, CellCounts, ManifoldCertificate, QuotientComplex, QuotientError,
    VertexLink,
};
pub use sphere::{SphereError, TriangulatedSphere};

use crate::genus::SearchBudget;

/// One census line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub id: u64,
    pub pairs: Vec<(usize, usize)>,
    /// Gluing code per pair, see [`Gluing::from_code`].
    pub codes: String,
    pub counts: CellCounts,
    pub euler: i64,
    pub link_genera: Vec<usize>,
    pub links_connected: bool,
    pub self_reversed_edges: usize,
    pub singular_vertices: Vec<usize>,
    pub is_manifold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    #[serde(serialize_with = "as_decimal")]
    pub pairing_count: BigUint,
    pub rows: Vec<CensusRow>,
    /// True when the budget stopped the enumeration early.
    pub truncated: bool,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

impl Census {
    pub fn manifold_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_manifold).count()
    }
}

pub fn census_row(sphere: &TriangulatedSphere, id: u64, fp: &FacePairing) -> Result<CensusRow, QuotientError> {
    let q = build_quotient(sphere, fp)?;
    let cert = is_manifold(&q)?;
    Ok(CensusRow {
        id,
        pairs: fp.pairs().to_vec(),
        codes: fp.codes(),
        counts: q.counts,
        euler: q.euler,
        link_genera: cert.link_genera,
        links_connected: cert.links_connected,
        self_reversed_edges: cert.self_reversed_edges,
        singular_vertices: cert.singular_vertices,
        is_manifold: cert.is_manifold,
    })
}

/// Classify up to `budget.max_nodes` pairings in enumeration order. Rows
/// are computed in parallel on the current rayon pool and returned in
/// order.
pub fn census(sphere: &TriangulatedSphere, budget: &SearchBudget) -> Result<Census, QuotientError> {
    let mut stream = enumerate_pairings(sphere, budget);
    let pairings: Vec<FacePairing> = stream.by_ref().collect();
    let rows = pairings
        .par_iter()
        .enumerate()
        .map(|(i, fp)| census_row(sphere, i as u64, fp))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Census { pairing_count: pairing_count(sphere.pair_count()), rows, truncated: stream.truncated() })
}
