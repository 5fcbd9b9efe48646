use serde::Serialize;
use thiserror::Error;

use super::bounds::{genus_upper_bound, UpperBound};
use super::link::{link_genus_from, LinkGenus};
use super::shuffle::{min_genus_over_shuffles_with, ShuffleSearch};
use super::SearchBudget;
use crate::presentation::Presentation;
use crate::ribbon::{Convention, RibbonGraph};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HierarchyError {
    #[error("genus chain violated: link {link} <= shuffle {shuffle} <= canonical {canonical} fails")]
    ChainViolation { link: usize, shuffle: usize, canonical: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub presentation: Presentation,
    pub convention: Convention,
    pub t_genus: usize,
    pub shuffle_min: ShuffleSearch,
    pub link_genus: LinkGenus,
    pub upper_bound: Option<UpperBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound_withheld: Option<String>,
    /// True when all three genera were exact, so the chain was checked.
    pub chain_checked: bool,
}

pub fn hierarchy_check(p: &Presentation, budget: &SearchBudget) -> Result<GenusReport, HierarchyError> {
    hierarchy_check_with(p, Convention::default(), budget)
}

pub fn hierarchy_check_with(
    p: &Presentation,
    convention: Convention,
    budget: &SearchBudget,
) -> Result<GenusReport, HierarchyError> {
    let canonical = RibbonGraph::canonical(p, convention);
    let t_genus = canonical.genus();
    let shuffle_min = min_genus_over_shuffles_with(p, convention, budget);
    let witness = canonical.apply_shuffle(&shuffle_min.shuffle).expect("witness shape");
    let link_genus = link_genus_from(&canonical.link_graph(), budget, Some(&witness.rotation_system()));
    let (upper_bound, upper_bound_withheld) = match genus_upper_bound(p) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let violation = HierarchyError::ChainViolation {
        link: link_genus.lower,
        shuffle: shuffle_min.genus,
        canonical: t_genus,
    };
    // These hold for bounds as well as exact values.
    if shuffle_min.genus > t_genus || link_genus.lower > shuffle_min.genus {
        return Err(violation);
    }
    let chain_checked = shuffle_min.exact && link_genus.exact;
    Ok(GenusReport {
        presentation: p.clone(),
        convention,
        t_genus,
        shuffle_min,
        link_genus,
        upper_bound,
        upper_bound_withheld,
        chain_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(s: &str) -> GenusReport {
        hierarchy_check(&s.parse().unwrap(), &SearchBudget::default()).unwrap()
    }

    #[test]
    fn z6_chain() {
        let r = report("<x1,x2 | x1^2 x2^2, x2^6>");
        assert_eq!((r.link_genus.value(), r.shuffle_min.genus, r.t_genus), (Some(0), 1, 1));
        assert!(r.chain_checked);
    }

    #[test]
    fn free_group_chain() {
        let r = report("<a,b | >");
        assert_eq!((r.link_genus.value(), r.shuffle_min.genus, r.t_genus), (Some(0), 0, 0));
        assert!(r.upper_bound.is_none() && r.upper_bound_withheld.is_some());
    }

    #[test]
    fn p_prime_chain() {
        let r = report("<a,b | a^2, b^2, a^2 b^-2>");
        assert_eq!(r.t_genus, 2);
        assert!(r.chain_checked);
        assert!(r.link_genus.upper <= r.shuffle_min.genus);
    }
}
