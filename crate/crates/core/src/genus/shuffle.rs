use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::{anneal, class_count, exhaustive, FaceCounter, Landscape};
use super::link::link_lower_bound;
use super::{SearchBudget, SearchError};
use crate::presentation::Presentation;
use crate::ribbon::{Convention, RibbonGraph, Shuffle};

/// Genus of the canonical surface as a function of per-generator slot orders.
pub(crate) struct ShuffleLandscape {
    counter: FaceCounter,
    plus: Vec<usize>,
    minus: Vec<usize>,
    mirrored: bool,
    /// `V - E` plus one face per isolated disc.
    constant: i64,
    components: i64,
}

impl ShuffleLandscape {
    pub fn new(g: &RibbonGraph) -> Self {
        let (_, partner, _) = g.darts();
        let offsets = g.offsets();
        let n = g.generators().len();
        let isolated = 2 * g.degrees().iter().filter(|&&d| d == 0).count();
        ShuffleLandscape {
            counter: FaceCounter::new(
                partner.iter().map(|&p| p as u32).collect(),
                (0..partner.len() as u32).collect(),
            ),
            plus: (0..n).map(|i| offsets[2 * i]).collect(),
            minus: (0..n).map(|i| offsets[2 * i + 1]).collect(),
            mirrored: g.convention() == Convention::Mirrored,
            constant: g.disc_count() as i64 - g.ribbons().len() as i64 + isolated as i64,
            components: g.component_labels().0 as i64,
        }
    }
}

impl Landscape for ShuffleLandscape {
    fn set_block(&mut self, i: usize, order: &[usize]) {
        let d = order.len();
        let (p, m) = (self.plus[i], self.minus[i]);
        for k in 0..d {
            let after = order[(k + 1) % d];
            let before = order[(k + d - 1) % d];
            self.counter.next[p + order[k]] = (p + after) as u32;
            let step = if self.mirrored { before } else { after };
            self.counter.next[m + order[k]] = (m + step) as u32;
        }
    }

    fn genus(&mut self) -> usize {
        let chi = self.constant + self.counter.faces() as i64;
        let g2 = 2 * self.components - chi;
        debug_assert!(g2 >= 0 && g2 % 2 == 0, "odd or negative 2g = {g2}");
        (g2 / 2) as usize
    }
}

/// Shuffle taking canonical positions to the given slot orders.
fn shuffle_of(orders: &[Vec<usize>]) -> Shuffle {
    let perms = orders
        .iter()
        .map(|o| {
            let mut perm = vec![0; o.len()];
            for (k, &slot) in o.iter().enumerate() {
                perm[slot] = k;
            }
            perm
        })
        .collect();
    Shuffle::new(perms).expect("slot orders are permutations")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleSearch {
    pub genus: usize,
    pub shuffle: Shuffle,
    pub exact: bool,
    pub evaluated: u64,
    /// Number of shuffle classes, `Π (d_i - 1)!` (saturating).
    pub classes: u128,
}

pub fn min_genus_over_shuffles(p: &Presentation, budget: &SearchBudget) -> ShuffleSearch {
    min_genus_over_shuffles_with(p, Convention::default(), budget)
}

pub fn min_genus_over_shuffles_with(
    p: &Presentation,
    convention: Convention,
    budget: &SearchBudget,
) -> ShuffleSearch {
    let g = RibbonGraph::canonical(p, convention);
    let lower = link_lower_bound(&g.link_graph());
    let mut land = ShuffleLandscape::new(&g);
    let blocks: Vec<Vec<usize>> = g.degrees().iter().map(|&d| (0..d).collect()).collect();
    let classes = class_count(g.degrees().iter().copied());
    let deadline = budget.deadline();
    let out = if budget.exhaustive || classes <= budget.max_nodes as u128 {
        exhaustive(&mut land, &blocks, lower, true, deadline, |_| {})
    } else {
        anneal(&mut land, &blocks, lower, budget.max_nodes, budget.seed, deadline)
    };
    let shuffle = shuffle_of(&out.orders);
    let check = g.apply_shuffle(&shuffle).expect("witness shape").genus();
    assert_eq!(check, out.best, "shuffle witness does not reproduce its genus");
    ShuffleSearch {
        genus: out.best,
        shuffle,
        exact: out.complete || out.best <= lower,
        evaluated: out.evaluated,
        classes,
    }
}

/// Genus of every shuffle class (one pinned slot per generator).
pub fn shuffle_genus_spectrum(
    p: &Presentation,
    convention: Convention,
    budget: &SearchBudget,
) -> Result<BTreeMap<usize, u64>, SearchError> {
    let g = RibbonGraph::canonical(p, convention);
    let classes = class_count(g.degrees().iter().copied());
    if !budget.exhaustive && classes > budget.max_nodes as u128 {
        return Err(SearchError::TooLarge { classes, max_nodes: budget.max_nodes });
    }
    let mut land = ShuffleLandscape::new(&g);
    let blocks: Vec<Vec<usize>> = g.degrees().iter().map(|&d| (0..d).collect()).collect();
    let mut spectrum = BTreeMap::new();
    let out = exhaustive(&mut land, &blocks, 0, false, budget.deadline(), |genus| {
        *spectrum.entry(genus).or_insert(0) += 1
    });
    if !out.complete {
        return Err(SearchError::TimedOut);
    }
    Ok(spectrum)
}
