//! The genus hierarchy of a presentation: canonical (T-)genus, minimum over
//! shuffles, link genus, the length upper bound, and budgeted searches for
//! lower-genus presentations of the same group.

mod bounds;
mod engine;
mod group;
mod link;
pub mod planarity;
mod report;
mod shuffle;

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::presentation::Presentation;
use crate::ribbon::{Convention, RibbonGraph};

pub use bounds::{genus_upper_bound, BoundError, UpperBound};
pub use group::{group_genus_upper, group_genus_upper_with, GroupGenusWitness};
pub use link::{link_genus, link_genus_from, link_lower_bound, LinkGenus, LinkMethod};
pub use report::{hierarchy_check, hierarchy_check_with, GenusReport, HierarchyError};
pub use shuffle::{min_genus_over_shuffles, min_genus_over_shuffles_with, shuffle_genus_spectrum, ShuffleSearch};

/// Limits for the searches. Results are reproducible from the seed and node
/// budget alone unless a time limit cuts a search short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Exhaustive search runs when the class count is at most this;
    /// otherwise it is the number of annealing steps.
    pub max_nodes: u64,
    pub seed: u64,
    pub time_limit: Option<Duration>,
    /// Enumerate every class regardless of `max_nodes`.
    pub exhaustive: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 1_000_000, seed: 0, time_limit: None, exhaustive: false }
    }
}

impl SearchBudget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.time_limit.map(|t| Instant::now() + t)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("{classes} classes exceed the budget of {max_nodes}")]
    TooLarge { classes: u128, max_nodes: u64 },
    #[error("time limit reached before the enumeration finished")]
    TimedOut,
}

/// Genus of the canonical surface under the default convention.
pub fn presentation_genus(p: &Presentation) -> usize {
    RibbonGraph::canonical(p, Convention::default()).genus()
}

pub fn presentation_genus_with(p: &Presentation, convention: Convention) -> usize {
    RibbonGraph::canonical(p, convention).genus()
}
