use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

/// Exponent sign of a letter, also used for the two discs of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(exponent: i64) -> Option<Sign> {
        match exponent.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A single generator letter `x_i^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Self {
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }
}

/// A word in the generators, kept exactly as written (no implicit reduction).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// `x_g^m` expanded into |m| letters.
    pub fn power(generator: usize, exponent: i64) -> Self {
        let mut w = Word::empty();
        w.push_power(generator, exponent);
        w
    }

    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        let mut w = Word::empty();
        for &(g, m) in syllables {
            w.push_power(g, m);
        }
        w
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn push_power(&mut self, generator: usize, exponent: i64) {
        if let Some(sign) = Sign::of(exponent) {
            let n = exponent.unsigned_abs() as usize;
            self.letters.extend(std::iter::repeat_n(Letter::new(generator, sign), n));
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Cyclic left rotation: the letter at `shift` becomes the first.
    pub fn rotated(&self, shift: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = shift % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Maximal runs of equal letters as `(generator, signed exponent)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, m)) if *g == l.generator && m.signum() == l.sign.value() => {
                    *m += l.sign.value()
                }
                _ => out.push((l.generator, l.sign.value())),
            }
        }
        out
    }

    /// Syllables of the word read cyclically: a run wrapping from the end to
    /// the start is merged. Returns the syllables and the letter offset where
    /// the first one starts.
    pub fn cyclic_syllables(&self) -> (Vec<(usize, i64)>, usize) {
        let n = self.letters.len();
        let first = match self.letters.first() {
            Some(&l) => l,
            None => return (Vec::new(), 0),
        };
        if self.letters.iter().all(|&l| l == first) {
            return (vec![(first.generator, first.sign.value() * n as i64)], 0);
        }
        let start = (0..n).find(|&t| self.letters[(t + n - 1) % n] != self.letters[t]).unwrap_or(0);
        (self.rotated(start).syllables(), start)
    }

    pub fn free_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn cyclically_reduced(&self) -> Word {
        let reduced = self.free_reduced();
        let l = &reduced.letters;
        let mut i = 0;
        let mut j = l.len();
        while j >= i + 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word { letters: l[i..j].to_vec() }
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == generator).count()
    }

    /// Replace every occurrence of `generator` by `replacement` (inverted for
    /// negative letters).
    pub fn substitute(&self, generator: usize, replacement: &Word) -> Word {
        let inverse = replacement.inverse();
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l.generator == generator {
                let r = if l.sign == Sign::Plus { replacement } else { &inverse };
                letters.extend_from_slice(&r.letters);
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self.letters.iter().map(|l| Letter::new(f(l.generator), l.sign)).collect(),
        }
    }

    /// Smallest cyclic rotation of the cyclically reduced word or its inverse.
    /// Two relators with equal keys have the same normal closure.
    pub fn cyclic_key(&self) -> Word {
        let base = self.cyclically_reduced();
        let inv = base.inverse();
        (0..base.len().max(1))
            .flat_map(|k| [base.rotated(k), inv.rotated(k)])
            .min()
            .unwrap_or_default()
    }

    /// Render with generator names as space-separated syllables, `1` when empty.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .syllables()
            .into_iter()
            .map(|(g, m)| if m == 1 { names[g].clone() } else { format!("{}^{}", names[g], m) })
            .collect();
        parts.join(" ")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

impl fmt::Display for Word {
    /// Generic rendering with `x0, x1, ...` names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0);
        let names: Vec<String> = (0..max).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
