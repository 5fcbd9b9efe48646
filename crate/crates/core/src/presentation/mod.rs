//! Finite group presentations with relators kept as written.
//!
//! Relators are never reduced implicitly: the ribbon surface depends on the
//! exact letter sequence, so `a a^-1` and the empty word are different inputs.

mod parse;
mod rewrite;
mod stats;
mod tietze;
mod word;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse_presentation, ParseError, ParseErrorKind, MAX_EXPONENT};
pub use rewrite::{Degree3Layout, ExponentRule, RewriteError};
pub use stats::OccurrenceStats;
pub use tietze::{TietzeError, TietzeMove};
pub use word::{Letter, Sign, Word};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {generator}, but only {count} exist")]
    UnknownGenerator { relator: usize, generator: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        for (i, name) in generators.iter().enumerate() {
            if !valid_name(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if generators[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        for (j, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.generator >= generators.len()) {
                return Err(PresentationError::UnknownGenerator {
                    relator: j,
                    generator: l.generator,
                    count: generators.len(),
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Convenience constructor from names and syllable lists.
    pub fn from_syllables(
        generators: &[&str],
        relators: &[&[(usize, i64)]],
    ) -> Result<Self, PresentationError> {
        Presentation::new(
            generators.iter().map(|s| s.to_string()).collect(),
            relators.iter().map(|r| Word::from_syllables(r)).collect(),
        )
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// `n`, the number of generators.
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `k`, the number of relators.
    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// `l`, the total relator length.
    pub fn length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Indices of relators of length one. Each contributes a ribbon joining
    /// the two discs of its generator.
    pub fn unit_relators(&self) -> Vec<usize> {
        (0..self.relators.len()).filter(|&j| self.relators[j].len() == 1).collect()
    }

    pub fn occurrence_stats(&self) -> OccurrenceStats {
        OccurrenceStats::of(self)
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        if rels.is_empty() {
            format!("<{} | >", self.generators.join(","))
        } else {
            format!("<{} | {}>", self.generators.join(","), rels.join(", "))
        }
    }

    /// A generator name not yet in use. Follows a trailing-number pattern
    /// (`x3` after `x1, x2`) or the alphabet (`c` after `a, b`).
    pub fn fresh_generator_name(&self) -> String {
        let taken = |s: &str| self.generators.iter().any(|g| g == s);
        let last = self.generators.last().map(String::as_str).unwrap_or("x0");
        let split = last.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        if split < last.len() && split > 0 {
            let (prefix, digits) = last.split_at(split);
            let mut k: u64 = digits.parse().unwrap_or(0) + 1;
            loop {
                let name = format!("{prefix}{k}");
                if !taken(&name) {
                    return name;
                }
                k += 1;
            }
        }
        let first = last.chars().next().filter(|c| c.is_ascii_lowercase()).unwrap_or('`');
        let from = first as u8 + 1;
        for c in (from..=b'z').chain(b'a'..from) {
            let name = (c as char).to_string();
            if !taken(&name) {
                return name;
            }
        }
        (1u64..)
            .map(|k| format!("t{k}"))
            .find(|n| !taken(n))
            .expect("unbounded name supply")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_presentation(s)
    }
}

pub fn render_presentation(p: &Presentation) -> String {
    p.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_round_trips() {
        for text in [
            "<a,b | a b^2 a^-1 b^-3>",
            "<a | >",
            "<x1,x2 | x1^2 x2^2, x2^6>",
            "<a,b | a a^-1, 1>",
        ] {
            let p: Presentation = text.parse().unwrap();
            assert_eq!(p.render(), text);
            assert_eq!(p.render().parse::<Presentation>().unwrap(), p);
        }
    }

    #[test]
    fn construction_is_validated() {
        assert_eq!(Presentation::new(vec![], vec![]), Err(PresentationError::NoGenerators));
        assert!(matches!(
            Presentation::new(vec!["a".into(), "a".into()], vec![]),
            Err(PresentationError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            Presentation::new(vec!["a".into()], vec![Word::power(1, 1)]),
            Err(PresentationError::UnknownGenerator { .. })
        ));
        assert!(Presentation::new(vec!["2a".into()], vec![]).is_err());
    }

    #[test]
    fn fresh_names() {
        let p: Presentation = "<a,b | >".parse().unwrap();
        assert_eq!(p.fresh_generator_name(), "c");
        let p: Presentation = "<x1,x2 | >".parse().unwrap();
        assert_eq!(p.fresh_generator_name(), "x3");
        let p: Presentation = "<z,a | >".parse().unwrap();
        assert_eq!(p.fresh_generator_name(), "b");
    }

    #[test]
    fn unit_relators_are_flagged() {
        let p: Presentation = "<a,b | a, a b>".parse().unwrap();
        assert_eq!(p.unit_relators(), vec![0]);
    }
}
