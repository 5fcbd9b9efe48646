use std::fmt;

use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::ribbon::{Convention, RibbonGraph};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    /// A generator missing from every relator adds a free factor, and the
    /// bound `½(l+1) - n` can then drop below the genus (or below zero).
    #[error("generator {0:?} occurs in no relator; the length bound does not apply")]
    UnusedGenerator(String),
    /// The bound comes from `F >= 1` on a connected surface; a surface with
    /// `c` components only satisfies `½(l+c) - n`.
    #[error("the ribbon surface has {0} components; the length bound needs a connected surface")]
    DisconnectedSurface(usize),
}

/// The exact value `½(l+1) - n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UpperBound(pub Rational64);

impl UpperBound {
    pub fn value(self) -> Rational64 {
        self.0
    }

    /// Largest integer genus the bound allows.
    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn admits(self, genus: usize) -> bool {
        Rational64::from_integer(genus as i64) <= self.0
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for UpperBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UpperBound", 3)?;
        st.serialize_field("numerator", self.0.numer())?;
        st.serialize_field("denominator", self.0.denom())?;
        st.serialize_field("value", &(*self.0.numer() as f64 / *self.0.denom() as f64))?;
        st.end()
    }
}

pub fn genus_upper_bound(p: &Presentation) -> Result<UpperBound, BoundError> {
    let stats = p.occurrence_stats();
    if let Some(i) = stats.degrees.iter().position(|&d| d == 0) {
        return Err(BoundError::UnusedGenerator(p.generators()[i].clone()));
    }
    // Components depend only on which discs ribbons join, not on the
    // convention.
    let (components, _) = RibbonGraph::canonical(p, Convention::default()).component_labels();
    if components > 1 {
        return Err(BoundError::DisconnectedSurface(components));
    }
    let l = p.length() as i64;
    let n = p.generator_count() as i64;
    Ok(UpperBound(Rational64::new(l + 1, 2) - n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(s: &str) -> Result<UpperBound, BoundError> {
        genus_upper_bound(&s.parse().unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(bound("<a,b | a b^2 a^-1 b^-3>").unwrap().value(), Rational64::from_integer(2));
        let util = bound("<x1,x2,x3,x4 | x1^2 x3^-1 x4^-2 x2 x3^-1 x4^-1 x3^-1 x2^2 x1>").unwrap();
        assert_eq!(util.value(), Rational64::new(5, 2));
        assert_eq!(util.floor(), 2);
        assert!(util.admits(2) && !util.admits(3));
        assert_eq!(bound("<a | a^2>").unwrap().value(), Rational64::new(1, 2));
        assert!(matches!(bound("<a,b | a^2>"), Err(BoundError::UnusedGenerator(_))));
        assert!(bound("<a | >").is_err());
        // Two spheres: genus 0 but ½(l+1) - n = -½.
        assert_eq!(bound("<a,b | a, b>"), Err(BoundError::DisconnectedSurface(2)));
    }
}
