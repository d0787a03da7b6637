use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {generator}, but there are only {count} generators")]
    GeneratorOutOfRange { relator: usize, generator: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub index: usize,
}

/// A finite presentation `< g_1, ..., g_n | r_1, ..., r_m >`.
///
/// Relators are kept freely reduced exactly as given; they are not
/// cyclically reduced here, so printing a presentation echoes its input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<Generator>,
    names: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(PresentationError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(PresentationError::DuplicateGenerator(n.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: i,
                        generator: g,
                        count: names.len(),
                    });
                }
            }
        }
        let generators = names
            .iter()
            .enumerate()
            .map(|(index, name)| Generator { name: name.clone(), index })
            .collect();
        Ok(Presentation { generators, names, relators })
    }

    /// The free group on the given generator names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PresentationError> {
        Presentation::new(names, Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True if `word` only uses generators of this presentation.
    pub fn contains_word(&self, word: &Word) -> bool {
        word.max_generator().is_none_or(|g| g < self.num_generators())
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Same generator count and identical relators, ignoring generator names.
    pub fn is_relabeling_of(&self, other: &Presentation) -> bool {
        self.num_generators() == other.num_generators() && self.relators == other.relators
    }

    pub fn display_word<'a>(&'a self, word: &'a Word) -> super::WordDisplay<'a> {
        word.display(&self.names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display(&self.names))?;
        }
        f.write_str(" >")
    }
}
