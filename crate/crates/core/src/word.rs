//! Freely reduced words over the generators of a group definition.
//!
//! Generators are referred to by their index in the definition. A word is a
//! sequence of syllables `g^k` with nonzero `k` and no two adjacent syllables
//! on the same generator, so free reduction is maintained on every push.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Word::power_of(g, 1)
    }

    pub fn power_of(g: usize, k: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, k);
        w
    }

    /// From letters `(generator, ±1)`, freely reducing as we go.
    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(letters: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut w = Word::identity();
        for s in syllables {
            w.push(s.generator, s.exponent);
        }
        w
    }

    /// Append `g^k`, merging with the last syllable when possible.
    pub fn push(&mut self, g: usize, k: i64) {
        if k == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.generator == g {
                last.exponent += k;
                if last.exponent == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { generator: g, exponent: k });
    }

    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            self.push(s.generator, s.exponent);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { generator: s.generator, exponent: -s.exponent })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// `self^other = other^{-1} self other`.
    pub fn conjugate(&self, other: &Word) -> Word {
        other.inverse().concat(self).concat(other)
    }

    /// `[self, other] = self^{-1} other^{-1} self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().concat(&other.inverse()).concat(self).concat(other)
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of letters `g^{±1}`.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
    }

    /// Letters `(generator, ±1)` from left to right.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|s| core::iter::repeat((s.generator, s.exponent.signum())).take(s.exponent.unsigned_abs() as usize))
    }

    /// Generators used, in order of first appearance.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.syllables.iter().map(|s| s.generator)
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

/// Renders a word as whitespace-separated tokens, `e` for the identity.
pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("e");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.names[s.generator].as_ref())?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Syntax error while reading a word; `offset` is a character offset.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct WordParseError {
    pub offset: usize,
    pub message: String,
}

/// Parse the word syntax used by definition files and the command line.
///
/// ```text
/// word  := item*
/// item  := atom ('^' integer)?
/// atom  := name | 'e' | '(' word ')' | '[' word ',' word ']'
/// ```
///
/// Names may be juxtaposed (`adabac`); the longest declared name that
/// matches is taken. `e` is the identity unless a generator is named `e`.
pub fn parse_word<S: AsRef<str>>(names: &[S], text: &str) -> Result<Word, WordParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars: &chars, pos: 0, names };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < chars.len() {
        return Err(p.error(alloc::format!("unexpected '{}'", chars[p.pos])));
    }
    Ok(w)
}

struct Parser<'a, S> {
    chars: &'a [char],
    pos: usize,
    names: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn error(&self, message: String) -> WordParseError {
        WordParseError { offset: self.pos, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, WordParseError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(',') | Some(']') => return Ok(w),
                _ => {
                    let atom = self.atom()?;
                    let k = self.exponent()?;
                    w.append(&atom.pow(k));
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Word, WordParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                Ok(x.commutator(&y))
            }
            Some(_) => {
                let rest: String = self.chars[self.pos..].iter().collect();
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| !n.as_ref().is_empty() && rest.starts_with(n.as_ref()))
                    .max_by_key(|(_, n)| n.as_ref().len());
                if let Some((g, name)) = best {
                    self.pos += name.as_ref().chars().count();
                    Ok(Word::generator(g))
                } else if rest.starts_with('e') {
                    self.pos += 1;
                    Ok(Word::identity())
                } else {
                    let token: String = rest.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                    let token = if token.is_empty() { rest.chars().take(1).collect() } else { token };
                    Err(self.error(alloc::format!("undeclared generator '{}'", token)))
                }
            }
            None => Err(self.error("unexpected end of word".to_string())),
        }
    }

    fn exponent(&mut self) -> Result<i64, WordParseError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        token.parse().map_err(|_| WordParseError { offset: start, message: "expected integer exponent".to_string() })
    }

    fn expect(&mut self, c: char) -> Result<(), WordParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(alloc::format!("expected '{}'", c)))
        }
    }
}
