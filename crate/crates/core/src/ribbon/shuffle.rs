use serde::Serialize;
use thiserror::Error;

use super::RibbonGraph;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("shuffle has {got} generator permutations, graph has {expected} generators")]
    Arity { expected: usize, got: usize },
    #[error("permutation for generator {generator} has length {got}, degree is {expected}")]
    Degree { generator: usize, expected: usize, got: usize },
    #[error("entry for generator {generator} is not a permutation")]
    NotAPermutation { generator: usize },
}

/// Per-generator permutations of slot positions. `perms[i][q]` is the new
/// position of whatever sat at position q on both discs of generator i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Shuffle {
    perms: Vec<Vec<usize>>,
}

impl Shuffle {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self, ShuffleError> {
        for (generator, p) in perms.iter().enumerate() {
            let mut seen = vec![false; p.len()];
            for &q in p {
                if q >= p.len() || std::mem::replace(&mut seen[q], true) {
                    return Err(ShuffleError::NotAPermutation { generator });
                }
            }
        }
        Ok(Shuffle { perms })
    }

    pub fn identity(degrees: &[usize]) -> Self {
        Shuffle { perms: degrees.iter().map(|&d| (0..d).collect()).collect() }
    }

    /// Cyclic rotation of generator i's positions by `shifts[i]`.
    pub fn cyclic(degrees: &[usize], shifts: &[usize]) -> Self {
        Shuffle {
            perms: degrees
                .iter()
                .zip(shifts)
                .map(|(&d, &s)| (0..d).map(|q| (q + s) % d.max(1)).collect())
                .collect(),
        }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn is_identity(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &q)| i == q))
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Shuffle) -> Shuffle {
        Shuffle {
            perms: self
                .perms
                .iter()
                .zip(&next.perms)
                .map(|(a, b)| a.iter().map(|&q| b[q]).collect())
                .collect(),
        }
    }
}

impl RibbonGraph {
    pub fn apply_shuffle(&self, shuffle: &Shuffle) -> Result<RibbonGraph, ShuffleError> {
        let perms = shuffle.perms();
        if perms.len() != self.degrees().len() {
            return Err(ShuffleError::Arity { expected: self.degrees().len(), got: perms.len() });
        }
        for (generator, (p, &d)) in perms.iter().zip(self.degrees()).enumerate() {
            if p.len() != d {
                return Err(ShuffleError::Degree { generator, expected: d, got: p.len() });
            }
        }
        let positions = self
            .positions()
            .iter()
            .zip(perms)
            .map(|(pos, p)| pos.iter().map(|&q| p[q]).collect())
            .collect();
        Ok(self.with_positions(positions))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::Convention;

    #[test]
    fn cyclic_shuffles_keep_genus() {
        let p = "<a,b | a b^2 a^-1 b^-3, a^2 b^-1 a>".parse().unwrap();
        let g = RibbonGraph::canonical(&p, Convention::Mirrored);
        let base = g.summary().unwrap();
        for s in 0..6 {
            let sh = Shuffle::cyclic(g.degrees(), &[s, 2 * s + 1]);
            assert_eq!(g.apply_shuffle(&sh).unwrap().summary().unwrap(), base);
        }
    }

    #[test]
    fn identity_is_noop_and_shape_checked() {
        let p = "<a,b | a^2 b^2, b^2>".parse().unwrap();
        let g = RibbonGraph::canonical(&p, Convention::Mirrored);
        assert_eq!(g.apply_shuffle(&Shuffle::identity(g.degrees())).unwrap(), g);
        assert!(matches!(
            g.apply_shuffle(&Shuffle::new(vec![vec![0, 1]]).unwrap()),
            Err(ShuffleError::Arity { .. })
        ));
        assert!(matches!(
            g.apply_shuffle(&Shuffle::new(vec![vec![0, 1], vec![1, 0]]).unwrap()),
            Err(ShuffleError::Degree { generator: 1, .. })
        ));
        assert!(Shuffle::new(vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn composition() {
        let a = Shuffle::new(vec![vec![1, 2, 0]]).unwrap();
        let b = Shuffle::new(vec![vec![0, 2, 1]]).unwrap();
        assert_eq!(a.then(&b).perms(), &[vec![2, 1, 0]]);
    }
}
