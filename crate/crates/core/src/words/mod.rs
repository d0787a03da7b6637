//! Free-group words and group presentations.
//!
//! A [`Word`] is stored as a freely reduced sequence of syllables
//! `g^e` (maximal runs of one generator, `e != 0`). All group arithmetic
//! in the crate goes through this type.

mod parser;
mod presentation;

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

pub use parser::{parse_presentation, parse_word, parse_word_list, ParseError, ParseErrorKind};
pub use presentation::{Generator, Presentation, PresentationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// A single generator or its inverse.
///
/// Letters double as column indices into coset tables: generator `g` is
/// column `2g`, its inverse is column `2g + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverted: bool,
}

impl Letter {
    pub fn new(generator: usize, inverted: bool) -> Self {
        Letter { generator, inverted }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, inverted: !self.inverted }
    }

    #[inline]
    pub fn column(self) -> usize {
        2 * self.generator + self.inverted as usize
    }

    #[inline]
    pub fn from_column(column: usize) -> Self {
        Letter { generator: column / 2, inverted: column % 2 == 1 }
    }
}

/// A maximal run `generator^exponent` inside a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word in the free group on generators `0, 1, ...`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    runs: Vec<Syllable>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn generator(generator: usize) -> Self {
        Word::power(generator, 1)
    }

    /// `generator^exponent`; exponent 0 gives the identity.
    pub fn power(generator: usize, exponent: i64) -> Self {
        if exponent == 0 {
            Word::identity()
        } else {
            Word { runs: vec![Syllable { generator, exponent }] }
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push_run(l.generator, if l.inverted { -1 } else { 1 })
                .expect("single letters cannot overflow");
        }
        w
    }

    /// Builds a word from arbitrary (not necessarily reduced) syllables.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Result<Self, WordError> {
        let mut w = Word::identity();
        for (g, e) in syllables {
            w.push_run(g, e)?;
        }
        Ok(w)
    }

    // Appends g^e, cancelling or merging against the last run.
    fn push_run(&mut self, generator: usize, exponent: i64) -> Result<(), WordError> {
        if exponent == 0 {
            return Ok(());
        }
        match self.runs.last_mut() {
            Some(last) if last.generator == generator => {
                let e = last.exponent.checked_add(exponent).ok_or(WordError::ExponentOverflow)?;
                if e == 0 {
                    self.runs.pop();
                } else {
                    last.exponent = e;
                }
            }
            _ => self.runs.push(Syllable { generator, exponent }),
        }
        Ok(())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters (sum of absolute exponents).
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|s| {
            let l = Letter::new(s.generator, s.exponent < 0);
            std::iter::repeat_n(l, s.exponent.unsigned_abs() as usize)
        })
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.runs.iter().map(|s| s.generator).max()
    }

    /// Sum of exponents of `generator` in the word.
    pub fn exponent_sum(&self, generator: usize) -> i128 {
        self.runs
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent as i128)
            .sum()
    }

    pub fn checked_mul(&self, other: &Word) -> Result<Word, WordError> {
        let mut w = self.clone();
        for s in &other.runs {
            w.push_run(s.generator, s.exponent)?;
        }
        Ok(w)
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self
                .runs
                .iter()
                .rev()
                .map(|s| Syllable { generator: s.generator, exponent: -s.exponent })
                .collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Result<Word, WordError> {
        if n == 0 || self.is_identity() {
            return Ok(Word::identity());
        }
        if let [s] = self.runs.as_slice() {
            let e = s.exponent.checked_mul(n).ok_or(WordError::ExponentOverflow)?;
            return Ok(Word::power(s.generator, e));
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Word) -> Result<Word, WordError> {
        other.inverse().checked_mul(self)?.checked_mul(other)
    }

    /// The same word with every generator index increased by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word {
            runs: self
                .runs
                .iter()
                .map(|s| Syllable { generator: s.generator + offset, exponent: s.exponent })
                .collect(),
        }
    }

    /// Strips matching first/last letters until the word is cyclically
    /// reduced. The result is conjugate to `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let mut runs = self.runs.clone();
        while runs.len() >= 2 {
            let first = runs[0];
            let last = runs[runs.len() - 1];
            if first.generator != last.generator || (first.exponent > 0) == (last.exponent > 0) {
                break;
            }
            let cut = first.exponent.unsigned_abs().min(last.exponent.unsigned_abs()) as i128;
            let shrink = |e: i64| (e as i128 - cut * e.signum() as i128) as i64;
            let n = runs.len();
            runs[0].exponent = shrink(first.exponent);
            runs[n - 1].exponent = shrink(last.exponent);
            if runs[n - 1].exponent == 0 {
                runs.pop();
            }
            if runs[0].exponent == 0 {
                runs.remove(0);
            }
        }
        Word { runs }
    }

    /// True when no cyclic conjugate admits a cancellation.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.runs.first(), self.runs.last()) {
            (Some(f), Some(l)) if self.runs.len() > 1 => {
                f.generator != l.generator || (f.exponent > 0) == (l.exponent > 0)
            }
            _ => true,
        }
    }

    /// Formats the word with the given generator names (`1` for the identity).
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Panics on exponent overflow; use [`Word::checked_mul`] to handle it.
    fn mul(self, rhs: &Word) -> Word {
        self.checked_mul(rhs).expect("exponent overflow in word multiplication")
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(s.generator) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", s.generator)?,
            }
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}
