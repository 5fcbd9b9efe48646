use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::sphere::TriangulatedSphere;
use crate::genus::SearchBudget;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FacePairingError {
    #[error("pairing has {got} pairs, the sphere needs {want}")]
    PairCount { got: usize, want: usize },
    #[error("triangle {0} is not matched exactly once")]
    NotPerfect(usize),
    #[error("gluing {0:?} is not a bijection of triangle corners")]
    NotABijection([u8; 3]),
    #[error("gluing of pair {0} preserves orientation")]
    NotOrientationReversing(usize),
}

/// How the corners of the first triangle of a pair map to corners of the
/// second: corner `t` goes to corner `map[t]` (positions in the triangle's
/// vertex triple).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    map: [u8; 3],
}

impl Gluing {
    pub fn new(map: [u8; 3]) -> Result<Self, FacePairingError> {
        let mut seen = [false; 3];
        for &m in &map {
            if m > 2 || seen[m as usize] {
                return Err(FacePairingError::NotABijection(map));
            }
            seen[m as usize] = true;
        }
        Ok(Gluing { map })
    }

    /// The three orientation-reversing gluings. Code `k` sends corner `t`
    /// to corner `[0, 2, 1][(t + k) % 3]`.
    pub fn from_code(code: u8) -> Gluing {
        const REV: [u8; 3] = [0, 2, 1];
        let k = code as usize % 3;
        Gluing { map: [REV[k], REV[(1 + k) % 3], REV[(2 + k) % 3]] }
    }

    /// Inverse of `from_code`; `None` for orientation-preserving maps.
    pub fn code(self) -> Option<u8> {
        (0..3).find(|&k| Gluing::from_code(k) == self)
    }

    pub fn map(self) -> [u8; 3] {
        self.map
    }

    pub fn apply(self, corner: usize) -> usize {
        self.map[corner] as usize
    }

    /// Both triangles are oriented from the sphere, so a gluing reverses
    /// the quotient's orientation exactly when it is an odd permutation.
    pub fn reverses_orientation(self) -> bool {
        let m = self.map;
        let inversions = (m[0] > m[1]) as u8 + (m[0] > m[2]) as u8 + (m[1] > m[2]) as u8;
        inversions % 2 == 1
    }
}

impl Serialize for Gluing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.map.serialize(s)
    }
}

/// A perfect matching of the sphere's triangles with a gluing per pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FacePairing {
    pairs: Vec<(usize, usize)>,
    gluings: Vec<Gluing>,
}

impl FacePairing {
    pub fn new(
        sphere: &TriangulatedSphere,
        pairs: Vec<(usize, usize)>,
        gluings: Vec<Gluing>,
    ) -> Result<Self, FacePairingError> {
        let want = sphere.pair_count();
        if pairs.len() != want || gluings.len() != want {
            return Err(FacePairingError::PairCount { got: pairs.len().max(gluings.len()), want });
        }
        let mut hit = vec![0u8; 2 * want];
        for &(a, b) in &pairs {
            for t in [a, b] {
                match hit.get_mut(t) {
                    Some(h) => *h += 1,
                    None => return Err(FacePairingError::NotPerfect(t)),
                }
            }
        }
        if let Some(t) = hit.iter().position(|&h| h != 1) {
            return Err(FacePairingError::NotPerfect(t));
        }
        FacePairing::check_orientation(&gluings)?;
        Ok(FacePairing { pairs, gluings })
    }

    pub(crate) fn check_orientation(gluings: &[Gluing]) -> Result<(), FacePairingError> {
        match gluings.iter().position(|g| !g.reverses_orientation()) {
            Some(i) => Err(FacePairingError::NotOrientationReversing(i)),
            None => Ok(()),
        }
    }

    /// Skip validation; used by the quotient tests to feed bad gluings in.
    #[cfg(test)]
    pub(crate) fn new_unchecked(pairs: Vec<(usize, usize)>, gluings: Vec<Gluing>) -> Self {
        FacePairing { pairs, gluings }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    /// One digit per pair, e.g. `"021"`.
    pub fn codes(&self) -> String {
        self.gluings.iter().map(|g| g.code().map_or('?', |c| (b'0' + c) as char)).collect()
    }
}

/// `3^n (2n)! / (2^n n!)`, the number of pairings of `2n` triangles.
pub fn pairing_count(n: usize) -> BigUint {
    // (2n)! / (2^n n!) is the double factorial (2n - 1)!!.
    let mut out = BigUint::from(1u32);
    for k in 1..=n {
        out *= 3 * (2 * k as u64 - 1);
    }
    out
}

/// Pairings in a fixed order: matchings pair the lowest unmatched triangle
/// with each later one in turn; for each matching the gluing codes count up
/// with the last pair fastest.
#[derive(Clone, Debug)]
pub struct PairingStream {
    n: usize,
    choice: Vec<usize>,
    codes: Vec<u8>,
    limit: u64,
    emitted: u64,
    done: bool,
    truncated: bool,
}

pub fn enumerate_pairings(sphere: &TriangulatedSphere, budget: &SearchBudget) -> PairingStream {
    let n = sphere.pair_count();
    PairingStream {
        n,
        choice: vec![0; n],
        codes: vec![0; n],
        limit: budget.max_nodes,
        emitted: 0,
        done: false,
        truncated: false,
    }
}

impl PairingStream {
    /// True once the stream stopped at the budget with pairings left over.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn current(&self) -> FacePairing {
        let mut free: Vec<usize> = (0..2 * self.n).collect();
        let mut pairs = Vec::with_capacity(self.n);
        for &c in &self.choice {
            let a = free.remove(0);
            let b = free.remove(c);
            pairs.push((a, b));
        }
        FacePairing { pairs, gluings: self.codes.iter().map(|&c| Gluing::from_code(c)).collect() }
    }

    fn advance(&mut self) -> bool {
        for c in self.codes.iter_mut().rev() {
            if *c < 2 {
                *c += 1;
                return true;
            }
            *c = 0;
        }
        // Level k chooses among 2(n - k) - 1 partners.
        for k in (0..self.n).rev() {
            if self.choice[k] + 2 < 2 * (self.n - k) {
                self.choice[k] += 1;
                return true;
            }
            self.choice[k] = 0;
        }
        false
    }
}

impl Iterator for PairingStream {
    type Item = FacePairing;

    fn next(&mut self) -> Option<FacePairing> {
        if self.done {
            return None;
        }
        if self.emitted >= self.limit {
            self.done = true;
            self.truncated = true;
            return None;
        }
        let out = self.current();
        self.emitted += 1;
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}
