//! Text syntax: `< a, b | a b^2 a^-1 b^-3, a^2 = b^3 >`.
//!
//! A relator is a word, `u = v` (stored as `u v^-1`) or `u = 1`. The token `1`
//! stands for the empty word. `⟨` and `⟩` are accepted for the brackets.

use thiserror::Error;

use super::word::Word;
use super::Presentation;

/// Largest accepted `|m|` in `x^m`. Exponents are expanded letter by letter.
pub const MAX_EXPONENT: i64 = 100_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("exponent out of range (|m| <= {MAX_EXPONENT})")]
    ExponentOutOfRange,
    #[error("trailing input after '>'")]
    TrailingInput,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at column {column}: {kind}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    names: Vec<String>,
}

impl Parser {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { column: self.pos + 1, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, accepted: &[char], what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if accepted.contains(&c) => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(ParseErrorKind::Expected(what))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        let start = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos,
            Some(_) => return Err(self.err(ParseErrorKind::Expected("generator name"))),
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd)),
        };
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let mut negative = false;
        match self.peek() {
            Some('-') | Some('−') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(ParseErrorKind::Expected("integer exponent")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: i64 = digits
            .parse()
            .ok()
            .filter(|v: &i64| *v <= MAX_EXPONENT)
            .ok_or(ParseError { column: start + 1, kind: ParseErrorKind::ExponentOutOfRange })?;
        Ok(if negative { -value } else { value })
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut word = Word::empty();
        let mut any = false;
        loop {
            match self.peek() {
                Some('1') => {
                    self.pos += 1;
                    any = true;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (name, at) = self.ident()?;
                    let g = self.names.iter().position(|n| *n == name).ok_or(ParseError {
                        column: at + 1,
                        kind: ParseErrorKind::UndeclaredGenerator(name),
                    })?;
                    let exponent = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.signed_int()?
                    } else {
                        1
                    };
                    word.push_power(g, exponent);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(match self.peek() {
                Some(c) => self.err(ParseErrorKind::UnexpectedChar(c)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        Ok(word)
    }

    fn relator(&mut self) -> Result<Word, ParseError> {
        let lhs = self.word()?;
        if self.peek() == Some('=') {
            self.pos += 1;
            let rhs = self.word()?;
            Ok(lhs.concat(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    fn presentation(&mut self) -> Result<Presentation, ParseError> {
        self.expect(&['<', '⟨'], "'<'")?;
        loop {
            let (name, at) = self.ident()?;
            if self.names.contains(&name) {
                return Err(ParseError { column: at + 1, kind: ParseErrorKind::DuplicateGenerator(name) });
            }
            self.names.push(name);
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(&['|'], "'|' or ','")?;
        let mut relators = Vec::new();
        if !matches!(self.peek(), Some('>') | Some('⟩')) {
            loop {
                relators.push(self.relator()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(&['>', '⟩'], "',' or '>'")?;
        if self.peek().is_some() {
            return Err(self.err(ParseErrorKind::TrailingInput));
        }
        Ok(Presentation::from_parts_unchecked(std::mem::take(&mut self.names), relators))
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    Parser { chars: text.chars().collect(), pos: 0, names: Vec::new() }.presentation()
}
