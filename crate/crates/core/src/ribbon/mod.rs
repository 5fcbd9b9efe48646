//! Ribbon surfaces of presentations.
//!
//! Each generator `x_i` contributes two discs `(i,+)` and `(i,-)` with one
//! slot per occurrence of `x_i` in the relators. Reading a relator cyclically,
//! consecutive letters `x_i^e` (occurrence p) and `x_j^f` (occurrence q) are
//! joined by a ribbon from slot p of disc `(i,e)` to slot q of disc `(j,-f)`.
//!
//! Slots sit at positions `0..d_i` shared by both discs of a generator. The
//! `+` disc lists them by increasing position; the `-` disc by decreasing
//! position ([`Convention::Mirrored`]) or increasing ([`Convention::Aligned`]).
//! Shuffles permute the positions.

mod dot;
mod link;
mod shuffle;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Presentation, Sign};
use crate::unionfind::UnionFind;

pub use link::{LinkGraph, RotationSystem, RotationSystemError};
pub use shuffle::{Shuffle, ShuffleError};

/// Orientation of the `-` disc relative to the `+` disc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Convention {
    /// Both discs list slots in increasing position (`A`).
    #[serde(rename = "A")]
    Aligned,
    /// The `-` disc is the mirror image of the `+` disc (`B`).
    #[default]
    #[serde(rename = "B")]
    Mirrored,
}

impl Convention {
    pub fn letter(self) -> char {
        match self {
            Convention::Aligned => 'A',
            Convention::Mirrored => 'B',
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown convention {0:?}, expected A or B")]
pub struct ConventionParseError(pub String);

impl FromStr for Convention {
    type Err = ConventionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" | "aligned" => Ok(Convention::Aligned),
            "B" | "b" | "mirrored" => Ok(Convention::Mirrored),
            other => Err(ConventionParseError(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Disc {
    pub generator: usize,
    pub side: Sign,
}

impl Disc {
    pub fn new(generator: usize, side: Sign) -> Self {
        Disc { generator, side }
    }

    /// `2i` for `(i,+)`, `2i+1` for `(i,-)`.
    pub fn index(self) -> usize {
        2 * self.generator + (self.side == Sign::Minus) as usize
    }

    pub fn from_index(index: usize) -> Self {
        let side = if index.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        Disc { generator: index / 2, side }
    }
}

/// A ribbon end: slot `slot` (the occurrence number) on `disc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Leg {
    pub disc: Disc,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ribbon {
    pub ends: [Leg; 2],
    /// Relator index and the letter position the ribbon leaves from.
    pub relator: usize,
    pub position: usize,
}

impl Ribbon {
    fn key(&self) -> (Leg, Leg) {
        let [a, b] = self.ends;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// A boundary circuit of the surface, or the boundary of a disc with no legs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Face {
    /// Legs from which the circuit leaves along a ribbon, in order.
    Boundary(Vec<Leg>),
    IsolatedDisc(Disc),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("component {component} has odd Euler characteristic {euler}")]
    OddEuler { component: usize, euler: i64 },
    #[error("component {component} has Euler characteristic {euler} > 2")]
    EulerTooLarge { component: usize, euler: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub discs: usize,
    pub ribbons: usize,
    pub faces: usize,
    pub components: usize,
    pub euler: i64,
    pub genus: usize,
    pub component_genera: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PlumbError {
    #[error("plumbing needs graphs on the same generators")]
    GeneratorMismatch,
    #[error("plumbing needs graphs built with the same convention")]
    ConventionMismatch,
    #[error("operand {0} is not a single-relator ribbon graph")]
    NotSingleRelator(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    generators: Vec<String>,
    degrees: Vec<usize>,
    convention: Convention,
    relator_count: usize,
    ribbons: Vec<Ribbon>,
    /// `positions[i][p]`: position of slot p on both discs of generator i.
    positions: Vec<Vec<usize>>,
}

impl RibbonGraph {
    /// The surface of `p` with every slot at its own occurrence number.
    pub fn canonical(p: &Presentation, convention: Convention) -> Self {
        let n = p.generator_count();
        let mut counter = vec![0usize; n];
        let mut ribbons = Vec::with_capacity(p.length());
        for (j, r) in p.relators().iter().enumerate() {
            let occ: Vec<(usize, Sign, usize)> = r
                .letters()
                .iter()
                .map(|l| {
                    let slot = counter[l.generator];
                    counter[l.generator] += 1;
                    (l.generator, l.sign, slot)
                })
                .collect();
            for t in 0..occ.len() {
                let (gi, e, p_) = occ[t];
                let (gj, f, q) = occ[(t + 1) % occ.len()];
                ribbons.push(Ribbon {
                    ends: [
                        Leg { disc: Disc::new(gi, e), slot: p_ },
                        Leg { disc: Disc::new(gj, -f), slot: q },
                    ],
                    relator: j,
                    position: t,
                });
            }
        }
        let positions = counter.iter().map(|&d| (0..d).collect()).collect();
        RibbonGraph {
            generators: p.generators().to_vec(),
            degrees: counter,
            convention,
            relator_count: p.relator_count(),
            ribbons,
            positions,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn relator_count(&self) -> usize {
        self.relator_count
    }

    pub fn ribbons(&self) -> &[Ribbon] {
        &self.ribbons
    }

    pub fn positions(&self) -> &[Vec<usize>] {
        &self.positions
    }

    pub fn disc_count(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn discs(&self) -> impl Iterator<Item = Disc> {
        (0..self.disc_count()).map(Disc::from_index)
    }

    /// Slots of `disc` in counter-clockwise order.
    pub fn rotation(&self, disc: Disc) -> Vec<usize> {
        let pos = &self.positions[disc.generator];
        let mut by_pos = vec![0; pos.len()];
        for (slot, &q) in pos.iter().enumerate() {
            by_pos[q] = slot;
        }
        if disc.side == Sign::Minus && self.convention == Convention::Mirrored {
            by_pos.reverse();
        }
        by_pos
    }

    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.disc_count() + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in self.discs() {
            acc += self.degrees[d.generator];
            offsets.push(acc);
        }
        offsets
    }

    /// Dart tables: leg of each dart, partner dart across its ribbon, and the
    /// next dart counter-clockwise on the same disc.
    pub(crate) fn darts(&self) -> (Vec<Leg>, Vec<usize>, Vec<usize>) {
        let offsets = self.offsets();
        let total = *offsets.last().unwrap();
        let id = |l: Leg| offsets[l.disc.index()] + l.slot;
        let mut legs = vec![Leg { disc: Disc::new(0, Sign::Plus), slot: 0 }; total];
        for d in self.discs() {
            for s in 0..self.degrees[d.generator] {
                legs[offsets[d.index()] + s] = Leg { disc: d, slot: s };
            }
        }
        let mut partner = vec![usize::MAX; total];
        for r in &self.ribbons {
            let (a, b) = (id(r.ends[0]), id(r.ends[1]));
            partner[a] = b;
            partner[b] = a;
        }
        let mut next = vec![0; total];
        for d in self.discs() {
            let rot = self.rotation(d);
            for k in 0..rot.len() {
                next[offsets[d.index()] + rot[k]] = offsets[d.index()] + rot[(k + 1) % rot.len()];
            }
        }
        (legs, partner, next)
    }

    /// Boundary circuits, one per face, followed by the isolated discs.
    pub fn faces(&self) -> Vec<Face> {
        let (legs, partner, next) = self.darts();
        let mut seen = vec![false; legs.len()];
        let mut faces = Vec::new();
        for start in 0..legs.len() {
            if seen[start] {
                continue;
            }
            let mut circuit = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                circuit.push(legs[d]);
                d = next[partner[d]];
            }
            faces.push(Face::Boundary(circuit));
        }
        faces.extend(self.discs().filter(|d| self.degrees[d.generator] == 0).map(Face::IsolatedDisc));
        faces
    }

    /// Connected components as a label per disc index.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.disc_count());
        for r in &self.ribbons {
            uf.union(r.ends[0].disc.index(), r.ends[1].disc.index());
        }
        (uf.set_count(), uf.labels())
    }

    pub fn summary(&self) -> Result<SurfaceSummary, SurfaceError> {
        let faces = self.faces();
        let (c, label) = self.component_labels();
        let mut euler = vec![0i64; c];
        for d in self.discs() {
            euler[label[d.index()]] += 1;
        }
        for r in &self.ribbons {
            euler[label[r.ends[0].disc.index()]] -= 1;
        }
        for f in &faces {
            let disc = match f {
                Face::Boundary(legs) => legs[0].disc,
                Face::IsolatedDisc(d) => *d,
            };
            euler[label[disc.index()]] += 1;
        }
        let mut component_genera = Vec::with_capacity(c);
        for (component, &x) in euler.iter().enumerate() {
            if x % 2 != 0 {
                return Err(SurfaceError::OddEuler { component, euler: x });
            }
            if x > 2 {
                return Err(SurfaceError::EulerTooLarge { component, euler: x });
            }
            component_genera.push(((2 - x) / 2) as usize);
        }
        Ok(SurfaceSummary {
            discs: self.disc_count(),
            ribbons: self.ribbons.len(),
            faces: faces.len(),
            components: c,
            euler: euler.iter().sum(),
            genus: component_genera.iter().sum(),
            component_genera,
        })
    }

    /// Genus of the closed surface. Panics only on a corrupted graph.
    pub fn genus(&self) -> usize {
        self.summary().expect("ribbon graph invariant").genus
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().0 == 1
    }

    /// Join two single-relator graphs on the same generators: on every disc
    /// the slots of `other` follow those of `self`.
    pub fn plumb(&self, other: &RibbonGraph) -> Result<RibbonGraph, PlumbError> {
        if self.generators != other.generators {
            return Err(PlumbError::GeneratorMismatch);
        }
        if self.convention != other.convention {
            return Err(PlumbError::ConventionMismatch);
        }
        for (k, g) in [self, other].into_iter().enumerate() {
            if g.relator_count != 1 {
                return Err(PlumbError::NotSingleRelator(k));
            }
        }
        let shift = |l: Leg| Leg { disc: l.disc, slot: l.slot + self.degrees[l.disc.generator] };
        let mut ribbons = self.ribbons.clone();
        ribbons.extend(other.ribbons.iter().map(|r| Ribbon {
            ends: [shift(r.ends[0]), shift(r.ends[1])],
            relator: 1,
            position: r.position,
        }));
        let positions = (0..self.generators.len())
            .map(|i| {
                let d = self.degrees[i];
                let mut p = self.positions[i].clone();
                p.extend(other.positions[i].iter().map(|q| q + d));
                p
            })
            .collect();
        Ok(RibbonGraph {
            generators: self.generators.clone(),
            degrees: self.degrees.iter().zip(&other.degrees).map(|(a, b)| a + b).collect(),
            convention: self.convention,
            relator_count: 2,
            ribbons,
            positions,
        })
    }

    /// Same generators, ribbons (as unordered leg pairs) and cyclic
    /// rotations at every disc.
    pub fn structurally_equal(&self, other: &RibbonGraph) -> bool {
        if self.generators != other.generators || self.degrees != other.degrees {
            return false;
        }
        let keys = |g: &RibbonGraph| {
            let mut k: Vec<(Leg, Leg)> = g.ribbons.iter().map(Ribbon::key).collect();
            k.sort();
            k
        };
        let cyclic = |mut v: Vec<usize>| {
            if let Some(m) = v.iter().enumerate().min_by_key(|(_, s)| **s).map(|(i, _)| i) {
                v.rotate_left(m);
            }
            v
        };
        keys(self) == keys(other)
            && self.discs().all(|d| cyclic(self.rotation(d)) == cyclic(other.rotation(d)))
    }

    pub(crate) fn with_positions(&self, positions: Vec<Vec<usize>>) -> RibbonGraph {
        RibbonGraph { positions, ..self.clone() }
    }
}

/// The canonical surface under the default convention.
pub fn build_canonical_surface(p: &Presentation) -> RibbonGraph {
    RibbonGraph::canonical(p, Convention::default())
}
