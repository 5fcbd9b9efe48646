//! Whole-presentation rewrites used by the genus theory: connecting the
//! surface, shortening exponent runs, and spreading generators to degree 3.

use thiserror::Error;

use super::word::{Letter, Sign, Word};
use super::Presentation;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("generator {0:?} does not occur in any relator")]
    UnusedGenerator(String),
}

/// How long exponent runs are shortened.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExponentRule {
    /// `|m| > 3` odd becomes `±3`, `|m| > 2` even becomes `±2`. Keeps the
    /// canonical genus: each interior letter of a run only adds bigon faces.
    #[default]
    GenusSafe,
    /// `|m| > 2` becomes `±1` or `±2` by parity. Can lower the genus
    /// (`a b a^-1 b^-3` drops from 1 to 0).
    Mod2,
}

/// Layout of the generators introduced by [`Presentation::degree3_normalize`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Degree3Layout {
    /// The last copy `x_i^{d_i}` of each generator is replaced by its
    /// inverse, so all copies meet their chain ribbons in the same cyclic
    /// order and the canonical genus is kept.
    #[default]
    Oriented,
    /// Copies used exactly as numbered.
    Literal,
}

fn shorten(m: i64, rule: ExponentRule) -> i64 {
    let a = m.abs();
    let b = match rule {
        ExponentRule::GenusSafe if a > 3 => 3 - (a % 2 == 0) as i64,
        ExponentRule::Mod2 if a > 2 => 2 - (a % 2),
        _ => a,
    };
    m.signum() * b
}

impl Presentation {
    /// Append a generator `c` and relator `c (x_1^2 ... x_n^2)^-1`, which
    /// joins every disc into one surface component.
    pub fn connectify(&self) -> Presentation {
        let mut gens = self.generators().to_vec();
        let c = gens.len();
        gens.push(self.fresh_generator_name());
        let mut r = Word::power(c, 1);
        for i in (0..c).rev() {
            r.push_power(i, -2);
        }
        let mut rels = self.relators().to_vec();
        rels.push(r);
        Presentation::from_parts_unchecked(gens, rels)
    }

    pub fn reduce_exponents(&self) -> Presentation {
        self.reduce_exponents_with(ExponentRule::default())
    }

    pub fn reduce_exponents_with(&self, rule: ExponentRule) -> Presentation {
        let rels = self
            .relators()
            .iter()
            .map(|r| {
                let syl: Vec<(usize, i64)> =
                    r.syllables().into_iter().map(|(g, m)| (g, shorten(m, rule))).collect();
                Word::from_syllables(&syl)
            })
            .collect();
        Presentation::from_parts_unchecked(self.generators().to_vec(), rels)
    }

    /// Replace each generator of degree `d_i` by copies `x_i1 .. x_id`, one per
    /// occurrence, tied together by the chain relators `x_ij x_i(j-1)^-1`.
    pub fn degree3_normalize(&self) -> Result<Presentation, RewriteError> {
        self.degree3_normalize_with(Degree3Layout::default())
    }

    pub fn degree3_normalize_with(&self, layout: Degree3Layout) -> Result<Presentation, RewriteError> {
        let stats = self.occurrence_stats();
        if let Some(i) = stats.degrees.iter().position(|&d| d == 0) {
            return Err(RewriteError::UnusedGenerator(self.generators()[i].clone()));
        }
        let degrees = &stats.degrees;
        let base: Vec<usize> = degrees
            .iter()
            .scan(0, |acc, &d| {
                let b = *acc;
                *acc += d;
                Some(b)
            })
            .collect();
        let flipped = |copy: usize| -> bool {
            layout == Degree3Layout::Oriented
                && degrees.iter().zip(&base).any(|(&d, &b)| copy == b + d - 1)
        };
        let letter = |copy: usize, sign: Sign| {
            Letter::new(copy, if flipped(copy) { -sign } else { sign })
        };

        let taken: Vec<&String> = self.generators().iter().collect();
        let mut gens = Vec::with_capacity(stats.total);
        for (i, name) in self.generators().iter().enumerate() {
            let plain: Vec<String> = (1..=degrees[i]).map(|j| format!("{name}{j}")).collect();
            let clash = plain.iter().any(|n| taken.contains(&n));
            for (j, n) in plain.into_iter().enumerate() {
                let mut n = if clash { format!("{name}_{}", j + 1) } else { n };
                while taken.contains(&&n) || gens.contains(&n) {
                    n.push('_');
                }
                gens.push(n);
            }
        }

        let mut seen = vec![0usize; degrees.len()];
        let mut rels: Vec<Word> = self
            .relators()
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| {
                        let copy = base[l.generator] + seen[l.generator];
                        seen[l.generator] += 1;
                        letter(copy, l.sign)
                    })
                    .collect()
            })
            .collect();
        for (i, &d) in degrees.iter().enumerate() {
            for j in 0..d {
                let prev = (j + d - 1) % d;
                rels.push(Word::new(vec![
                    letter(base[i] + j, Sign::Plus),
                    letter(base[i] + prev, Sign::Minus),
                ]));
            }
        }
        Ok(Presentation::from_parts_unchecked(gens, rels))
    }
}
