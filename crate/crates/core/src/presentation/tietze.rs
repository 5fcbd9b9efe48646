//! Group-preserving moves on presentations.
//!
//! Every move either keeps `n + k` fixed or comes in an add/remove pair. The
//! removal moves only fire on a syntactic certificate (a duplicate relator or
//! a generator occurring exactly once in a defining relator).

use thiserror::Error;

use super::word::{Sign, Word};
use super::{valid_name, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TietzeMove {
    InvertRelator { relator: usize },
    CyclicPermute { relator: usize, shift: usize },
    /// `r -> c r c^-1`
    Conjugate { relator: usize, by: Word },
    /// `r_target -> r_target r_source` (or `r_source^-1` when `inverse`).
    MultiplyRelators { target: usize, source: usize, inverse: bool },
    /// Append `word`, which must be a rotation of a relator, its inverse, or
    /// freely trivial.
    AddRedundantRelator { word: Word },
    /// Delete a relator that is redundant in the same sense.
    RemoveRedundantRelator { relator: usize },
    /// New generator `x` with relator `x w^-1`.
    AddGenerator { name: String, definition: Word },
    /// Solve `relator` for `generator` (which occurs there exactly once),
    /// substitute into the other relators, and drop both.
    RemoveGenerator { generator: usize, relator: usize },
    /// New generator list is `old[order[0]], old[order[1]], ...`.
    ReorderGenerators { order: Vec<usize> },
    ReorderRelators { order: Vec<usize> },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TietzeError {
    #[error("relator index {0} out of range")]
    RelatorOutOfRange(usize),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("a relator cannot be multiplied by itself")]
    SelfMultiply,
    #[error("word is not a certified consequence of the relators")]
    NotRedundant,
    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("generator name {0:?} is invalid or already used")]
    BadName(String),
    #[error("generator {generator} occurs {count} times in relator {relator}, expected exactly once")]
    NotDefining { generator: usize, relator: usize, count: usize },
    #[error("cannot remove the last generator")]
    LastGenerator,
}

fn check_relator(p: &Presentation, j: usize) -> Result<(), TietzeError> {
    if j < p.relator_count() {
        Ok(())
    } else {
        Err(TietzeError::RelatorOutOfRange(j))
    }
}

fn check_word(p: &Presentation, w: &Word) -> Result<(), TietzeError> {
    match w.letters().iter().find(|l| l.generator >= p.generator_count()) {
        Some(l) => Err(TietzeError::GeneratorOutOfRange(l.generator)),
        None => Ok(()),
    }
}

fn check_permutation(order: &[usize], len: usize) -> Result<(), TietzeError> {
    let mut seen = vec![false; len];
    if order.len() != len {
        return Err(TietzeError::NotAPermutation(len));
    }
    for &i in order {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(TietzeError::NotAPermutation(len));
        }
    }
    Ok(())
}

/// True when `word` is freely trivial or equals (up to rotation and
/// inversion) one of `relators`.
fn certified_redundant(word: &Word, relators: &[&Word]) -> bool {
    let key = word.cyclic_key();
    key.is_empty() || relators.iter().any(|r| r.cyclic_key() == key)
}

impl TietzeMove {
    pub fn apply(&self, p: &Presentation) -> Result<Presentation, TietzeError> {
        let mut gens = p.generators().to_vec();
        let mut rels = p.relators().to_vec();
        match self {
            TietzeMove::InvertRelator { relator } => {
                check_relator(p, *relator)?;
                rels[*relator] = rels[*relator].inverse();
            }
            TietzeMove::CyclicPermute { relator, shift } => {
                check_relator(p, *relator)?;
                rels[*relator] = rels[*relator].rotated(*shift);
            }
            TietzeMove::Conjugate { relator, by } => {
                check_relator(p, *relator)?;
                check_word(p, by)?;
                rels[*relator] = by.concat(&rels[*relator]).concat(&by.inverse());
            }
            TietzeMove::MultiplyRelators { target, source, inverse } => {
                check_relator(p, *target)?;
                check_relator(p, *source)?;
                if target == source {
                    return Err(TietzeError::SelfMultiply);
                }
                let s = if *inverse { rels[*source].inverse() } else { rels[*source].clone() };
                rels[*target] = rels[*target].concat(&s);
            }
            TietzeMove::AddRedundantRelator { word } => {
                check_word(p, word)?;
                if !certified_redundant(word, &rels.iter().collect::<Vec<_>>()) {
                    return Err(TietzeError::NotRedundant);
                }
                rels.push(word.clone());
            }
            TietzeMove::RemoveRedundantRelator { relator } => {
                check_relator(p, *relator)?;
                let others: Vec<&Word> =
                    rels.iter().enumerate().filter(|(j, _)| j != relator).map(|(_, r)| r).collect();
                if !certified_redundant(&rels[*relator], &others) {
                    return Err(TietzeError::NotRedundant);
                }
                rels.remove(*relator);
            }
            TietzeMove::AddGenerator { name, definition } => {
                check_word(p, definition)?;
                if !valid_name(name) || gens.contains(name) {
                    return Err(TietzeError::BadName(name.clone()));
                }
                let x = gens.len();
                gens.push(name.clone());
                rels.push(Word::power(x, 1).concat(&definition.inverse()));
            }
            TietzeMove::RemoveGenerator { generator, relator } => {
                check_relator(p, *relator)?;
                let x = *generator;
                if x >= gens.len() {
                    return Err(TietzeError::GeneratorOutOfRange(x));
                }
                if gens.len() == 1 {
                    return Err(TietzeError::LastGenerator);
                }
                let r = &rels[*relator];
                let count = r.occurrences(x);
                if count != 1 {
                    return Err(TietzeError::NotDefining { generator: x, relator: *relator, count });
                }
                let t = r.letters().iter().position(|l| l.generator == x).unwrap();
                let u = Word::new(r.letters()[..t].to_vec());
                let v = Word::new(r.letters()[t + 1..].to_vec());
                // u x^e v = 1 gives x^e = u^-1 v^-1.
                let value = match r.letters()[t].sign {
                    Sign::Plus => u.inverse().concat(&v.inverse()),
                    Sign::Minus => v.concat(&u),
                };
                rels.remove(*relator);
                gens.remove(x);
                rels = rels
                    .iter()
                    .map(|w| w.substitute(x, &value).map_generators(|g| if g > x { g - 1 } else { g }))
                    .collect();
            }
            TietzeMove::ReorderGenerators { order } => {
                check_permutation(order, gens.len())?;
                let mut new_index = vec![0; gens.len()];
                for (new, &old) in order.iter().enumerate() {
                    new_index[old] = new;
                }
                gens = order.iter().map(|&i| p.generators()[i].clone()).collect();
                rels = rels.iter().map(|w| w.map_generators(|g| new_index[g])).collect();
            }
            TietzeMove::ReorderRelators { order } => {
                check_permutation(order, rels.len())?;
                rels = order.iter().map(|&j| p.relators()[j].clone()).collect();
            }
        }
        Ok(Presentation::from_parts_unchecked(gens, rels))
    }

    /// Change in `n + k`: zero except for the add/remove moves.
    pub fn size_delta(&self) -> i64 {
        match self {
            TietzeMove::AddRedundantRelator { .. } => 1,
            TietzeMove::RemoveRedundantRelator { .. } => -1,
            TietzeMove::AddGenerator { .. } => 2,
            TietzeMove::RemoveGenerator { .. } => -2,
            _ => 0,
        }
    }
}

impl Presentation {
    pub fn apply(&self, mv: &TietzeMove) -> Result<Presentation, TietzeError> {
        mv.apply(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_gives_a2b2() {
        let out = TietzeMove::MultiplyRelators { target: 0, source: 1, inverse: false }
            .apply(&p("<a,b | a^2, b^2>"))
            .unwrap();
        assert_eq!(out, p("<a,b | a^2 b^2, b^2>"));
    }

    #[test]
    fn remove_undeclared_redundancy_fails() {
        let e = TietzeMove::RemoveRedundantRelator { relator: 0 }.apply(&p("<a,b | a^2, b^2>"));
        assert_eq!(e, Err(TietzeError::NotRedundant));
        let ok = TietzeMove::RemoveRedundantRelator { relator: 1 }
            .apply(&p("<a,b | a b^2, b^-2 a^-1>"))
            .unwrap();
        assert_eq!(ok, p("<a,b | a b^2>"));
    }

    #[test]
    fn add_then_remove_generator() {
        let base = p("<a,b | a b a^-1 b^-2>");
        let def = Word::from_syllables(&[(0, 1), (1, 1)]);
        let grown = TietzeMove::AddGenerator { name: "c".into(), definition: def }.apply(&base).unwrap();
        assert_eq!(grown, p("<a,b,c | a b a^-1 b^-2, c b^-1 a^-1>"));
        // Eliminate a using c = a b, so a = c b^-1.
        let shrunk = TietzeMove::RemoveGenerator { generator: 0, relator: 1 }.apply(&grown).unwrap();
        assert_eq!(shrunk.generators(), ["b", "c"]);
        assert_eq!(shrunk.relators()[0].free_reduced(), p("<b,c | c b c^-1 b^-2>").relators()[0]);
    }

    #[test]
    fn remove_generator_needs_single_occurrence() {
        let e = TietzeMove::RemoveGenerator { generator: 0, relator: 0 }.apply(&p("<a,b | a^2 b>"));
        assert!(matches!(e, Err(TietzeError::NotDefining { count: 2, .. })));
    }

    #[test]
    fn reorder_generators_relabels_relators() {
        let out = TietzeMove::ReorderGenerators { order: vec![1, 0] }.apply(&p("<a,b | a b^2>")).unwrap();
        assert_eq!(out, p("<b,a | a b^2>"));
        assert!(TietzeMove::ReorderGenerators { order: vec![0, 0] }.apply(&out).is_err());
    }

    #[test]
    fn size_delta_matches_counts() {
        let base = p("<a,b | a^2 b^2, b^2>");
        let moves = [
            TietzeMove::InvertRelator { relator: 0 },
            TietzeMove::CyclicPermute { relator: 0, shift: 3 },
            TietzeMove::Conjugate { relator: 1, by: Word::power(0, 1) },
            TietzeMove::AddRedundantRelator { word: Word::power(1, -2) },
            TietzeMove::AddGenerator { name: "c".into(), definition: Word::power(0, 2) },
            TietzeMove::ReorderRelators { order: vec![1, 0] },
        ];
        for mv in moves {
            let out = mv.apply(&base).unwrap();
            let before = (base.generator_count() + base.relator_count()) as i64;
            let after = (out.generator_count() + out.relator_count()) as i64;
            assert_eq!(after - before, mv.size_delta(), "{mv:?}");
        }
    }
}
