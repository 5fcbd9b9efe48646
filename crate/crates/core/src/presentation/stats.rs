use serde::Serialize;

use super::Presentation;

/// Occurrence counts: `d_ij` letters of generator i in relator j, the
/// generator degrees `d_i`, relator lengths `l_j`, and the total `d = l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceStats {
    pub per_relator: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub relator_lengths: Vec<usize>,
    pub total: usize,
}

impl OccurrenceStats {
    pub fn of(p: &Presentation) -> Self {
        let n = p.generator_count();
        let per_relator: Vec<Vec<usize>> = (0..n)
            .map(|i| p.relators().iter().map(|r| r.occurrences(i)).collect())
            .collect();
        let degrees: Vec<usize> = per_relator.iter().map(|row| row.iter().sum()).collect();
        let relator_lengths: Vec<usize> = p.relators().iter().map(|r| r.len()).collect();
        let total = degrees.iter().sum();
        debug_assert_eq!(total, relator_lengths.iter().sum::<usize>());
        OccurrenceStats { per_relator, degrees, relator_lengths, total }
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn all_generators_occur(&self) -> bool {
        self.degrees.iter().all(|&d| d > 0)
    }
}
