//! Upper bounds on group genus by breadth-first search over Tietze moves.
//!
//! Nodes are visited in a fixed order and each gets its own seed and share
//! of the budget, so the run at depth `d + 1` repeats the run at depth `d`
//! before going further. The best genus is therefore non-increasing in depth.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::shuffle::min_genus_over_shuffles_with;
use super::SearchBudget;
use crate::presentation::{Letter, Presentation, Sign, TietzeMove, Word};
use crate::ribbon::{Convention, Shuffle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupGenusWitness {
    pub genus: usize,
    pub presentation: Presentation,
    pub shuffle: Shuffle,
    /// Moves leading from the input to the witness.
    pub depth: usize,
    /// Presentations evaluated.
    pub explored: usize,
    /// False when the node budget stopped the search early.
    pub complete: bool,
}

/// Nodes get `max_nodes / NODE_SHARE` steps of shuffle search each.
const NODE_SHARE: u64 = 64;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Non-empty freely reduced words of length at most 2.
fn short_words(n: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..n)
        .flat_map(|g| [Letter::new(g, Sign::Plus), Letter::new(g, Sign::Minus)])
        .collect();
    let mut out: Vec<Word> = letters.iter().map(|&l| Word::new(vec![l])).collect();
    for &a in &letters {
        for &b in &letters {
            if b != a.inverse() {
                out.push(Word::new(vec![a, b]));
            }
        }
    }
    out
}

/// Every move applicable to `p`, in a fixed order.
fn moves(p: &Presentation) -> Vec<TietzeMove> {
    let (n, k) = (p.generator_count(), p.relator_count());
    let words = short_words(n);
    let mut out = Vec::new();
    for j in 0..k {
        out.push(TietzeMove::InvertRelator { relator: j });
        for shift in 1..p.relators()[j].len() {
            out.push(TietzeMove::CyclicPermute { relator: j, shift });
        }
        for w in &words {
            out.push(TietzeMove::Conjugate { relator: j, by: w.clone() });
        }
    }
    for target in 0..k {
        for source in 0..k {
            if target != source {
                for inverse in [false, true] {
                    out.push(TietzeMove::MultiplyRelators { target, source, inverse });
                }
            }
        }
    }
    for j in 0..k {
        out.push(TietzeMove::AddRedundantRelator { word: p.relators()[j].clone() });
        out.push(TietzeMove::RemoveRedundantRelator { relator: j });
    }
    let name = p.fresh_generator_name();
    for w in &words {
        out.push(TietzeMove::AddGenerator { name: name.clone(), definition: w.clone() });
    }
    for g in 0..n {
        for j in 0..k {
            out.push(TietzeMove::RemoveGenerator { generator: g, relator: j });
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut order: Vec<usize> = (0..n).collect();
        order.swap(i, i + 1);
        out.push(TietzeMove::ReorderGenerators { order });
    }
    for i in 0..k.saturating_sub(1) {
        let mut order: Vec<usize> = (0..k).collect();
        order.swap(i, i + 1);
        out.push(TietzeMove::ReorderRelators { order });
    }
    out
}

pub fn group_genus_upper(p: &Presentation, depth: usize, budget: &SearchBudget) -> GroupGenusWitness {
    group_genus_upper_with(p, depth, budget, Convention::default())
}

pub fn group_genus_upper_with(
    p: &Presentation,
    depth: usize,
    budget: &SearchBudget,
    convention: Convention,
) -> GroupGenusWitness {
    let per_node = (budget.max_nodes / NODE_SHARE).max(1);
    let mut seen: HashSet<Presentation> = HashSet::from([p.clone()]);
    let mut queue: VecDeque<(Presentation, usize)> = VecDeque::from([(p.clone(), 0)]);
    let mut spent = 0u64;
    let mut explored = 0usize;
    let mut best: Option<GroupGenusWitness> = None;
    let mut complete = true;

    while let Some((q, d)) = queue.pop_front() {
        if spent >= budget.max_nodes {
            complete = false;
            break;
        }
        let node_budget = SearchBudget {
            max_nodes: per_node,
            seed: splitmix(budget.seed.wrapping_add(explored as u64)),
            time_limit: None,
            exhaustive: false,
        };
        let r = min_genus_over_shuffles_with(&q, convention, &node_budget);
        // Cheap nodes still count, which bounds the queue.
        spent += r.evaluated.max(per_node / 16);
        explored += 1;
        if best.as_ref().is_none_or(|b| r.genus < b.genus) {
            best = Some(GroupGenusWitness {
                genus: r.genus,
                presentation: q.clone(),
                shuffle: r.shuffle,
                depth: d,
                explored: 0,
                complete: true,
            });
        }
        if best.as_ref().is_some_and(|b| b.genus == 0) {
            break;
        }
        if d < depth {
            for mv in moves(&q) {
                if let Ok(next) = mv.apply(&q) {
                    if seen.insert(next.clone()) {
                        queue.push_back((next, d + 1));
                    }
                }
            }
        }
    }
    let mut w = best.expect("the input itself is always evaluated");
    w.explored = explored;
    w.complete = complete;
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_group_reaches_zero() {
        let w = group_genus_upper(&p("<a | a>"), 2, &SearchBudget::default());
        assert_eq!(w.genus, 0);
    }

    #[test]
    fn depth_zero_is_the_shuffle_minimum() {
        let w = group_genus_upper(&p("<a,b | a^6, a^2 b^2>"), 0, &SearchBudget::default());
        assert_eq!((w.genus, w.depth, w.explored), (1, 0, 1));
    }

    #[test]
    fn p_is_bounded_by_its_reduced_canonical_genus() {
        let big = p("<a,b | a^6, b^6, a^2 b^-2>");
        let reduced = big.reduce_exponents();
        assert_eq!(reduced, p("<a,b | a^2, b^2, a^2 b^-2>"));
        assert_eq!(crate::genus::presentation_genus(&reduced), 2);
        // Shuffling the slots does better than the canonical surface.
        let w = group_genus_upper(&big, 0, &SearchBudget::default());
        assert_eq!(w.genus, 1);
    }

    #[test]
    fn move_list_counts() {
        assert_eq!(short_words(2).len(), 4 + 12);
        let ms = moves(&p("<a,b | a^2, b^2>"));
        assert!(ms.iter().all(|m| m.apply(&p("<a,b | a^2, b^2>")).is_ok()
            || matches!(m, TietzeMove::RemoveRedundantRelator { .. } | TietzeMove::RemoveGenerator { .. })));
    }

    #[test]
    fn monotone_in_depth() {
        let q = p("<a,b | a b^2 a^-1 b^-3>");
        let budget = SearchBudget::default().with_max_nodes(20_000);
        let g: Vec<usize> = (0..3).map(|d| group_genus_upper(&q, d, &budget).genus).collect();
        assert!(g.windows(2).all(|w| w[1] <= w[0]), "{g:?}");
    }
}
