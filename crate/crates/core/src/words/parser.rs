//! Recursive-descent parser for the presentation text format:
//!
//! ```text
//! presentation := '<' genlist '|' relatorlist? '>'
//! genlist      := ident (',' ident)*
//! relatorlist  := relator (',' relator)*
//! relator      := word | word '=' word
//! word         := factor+                 (juxtaposition or '*')
//! factor       := ident ('^' int)? | '(' word ')' ('^' int)? | '1'
//! ```

use std::fmt;

use thiserror::Error;

use super::presentation::{Presentation, PresentationError};
use super::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    DuplicateGenerator(String),
    ExponentOverflow,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownGenerator(name) => write!(f, "unknown generator {name:?}"),
            ParseErrorKind::DuplicateGenerator(name) => write!(f, "duplicate generator {name:?}"),
            ParseErrorKind::ExponentOverflow => f.write_str("exponent overflow"),
        }
    }
}

/// A parse failure at a 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lt,
    Gt,
    Bar,
    Comma,
    Eq,
    Star,
    Caret,
    LParen,
    RParen,
    Minus,
    Ident(String),
    Int(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lt => f.write_str("'<'"),
            Tok::Gt => f.write_str("'>'"),
            Tok::Bar => f.write_str("'|'"),
            Tok::Comma => f.write_str("','"),
            Tok::Eq => f.write_str("'='"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let advance = |line: &mut usize, column: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(&mut line, &mut column, c);
            continue;
        }
        let tok = match c {
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => Tok::Minus,
            c if c.is_ascii_alphabetic() || c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    let ok = if c.is_ascii_digit() {
                        d.is_ascii_digit()
                    } else {
                        d.is_ascii_alphanumeric() || d == '_'
                    };
                    if !ok {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    advance(&mut line, &mut column, d);
                }
                out.push((if c.is_ascii_digit() { Tok::Int(s) } else { Tok::Ident(s) }, pos));
                continue;
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unexpected character {other:?}")),
                    line,
                    column,
                })
            }
        };
        chars.next();
        advance(&mut line, &mut column, c);
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    names: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line: pos.line, column: pos.column }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let msg = format!("expected {wanted}, found {}", self.peek());
        self.error_at(self.pos(), ParseErrorKind::Syntax(msg))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn overflow(&self, pos: Pos) -> impl Fn(WordError) -> ParseError + '_ {
        move |_| self.error_at(pos, ParseErrorKind::ExponentOverflow)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen) || matches!(self.peek(), Tok::Int(s) if s == "1")
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_factor() {
            return Err(self.unexpected("a word"));
        }
        let mut w = Word::identity();
        loop {
            let pos = self.pos();
            let f = self.factor()?;
            w = w.checked_mul(&f).map_err(self.overflow(pos))?;
            if *self.peek() == Tok::Star {
                self.bump();
                if !self.starts_factor() {
                    return Err(self.unexpected("a factor after '*'"));
                }
            } else if !self.starts_factor() {
                return Ok(w);
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let (tok, pos) = self.bump();
        let base = match tok {
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(g) => Word::generator(g),
                None => return Err(self.error_at(pos, ParseErrorKind::UnknownGenerator(name))),
            },
            Tok::Int(s) if s == "1" => Word::identity(),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                w
            }
            _ => unreachable!("starts_factor checked"),
        };
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let digits = match self.bump() {
            (Tok::Int(s), _) => s,
            _ => return Err(self.error_at(pos, ParseErrorKind::Syntax("expected an integer exponent".into()))),
        };
        let text = if negative { format!("-{digits}") } else { digits };
        let exp: i64 = text.parse().map_err(|_| self.error_at(pos, ParseErrorKind::ExponentOverflow))?;
        base.pow(exp).map_err(self.overflow(pos))
    }

    fn relator(&mut self) -> Result<Word, ParseError> {
        let lhs = self.word()?;
        if *self.peek() != Tok::Eq {
            return Ok(lhs);
        }
        let pos = self.pos();
        self.bump();
        let rhs = self.word()?;
        lhs.checked_mul(&rhs.inverse()).map_err(self.overflow(pos))
    }
}

/// Parses `< gens | relators >`. Equations `u = v` become the relator `u v^-1`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, names: Vec::new() };
    p.expect(Tok::Lt, "'<'")?;
    loop {
        let pos = p.pos();
        match p.peek().clone() {
            Tok::Ident(name) => {
                if p.names.contains(&name) {
                    return Err(p.error_at(pos, ParseErrorKind::DuplicateGenerator(name)));
                }
                p.bump();
                p.names.push(name);
            }
            _ => return Err(p.unexpected("a generator name")),
        }
        match p.peek() {
            Tok::Comma => {
                p.bump();
            }
            Tok::Bar => break,
            _ => return Err(p.unexpected("',' or '|'")),
        }
    }
    p.bump();

    let mut relators = Vec::new();
    if *p.peek() != Tok::Gt {
        loop {
            relators.push(p.relator()?);
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Gt => break,
                _ => return Err(p.unexpected("',' or '>'")),
            }
        }
    }
    p.bump();
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Presentation::new(p.names, relators).map_err(|e| {
        let kind = match e {
            PresentationError::DuplicateGenerator(n) => ParseErrorKind::DuplicateGenerator(n),
            other => ParseErrorKind::Syntax(other.to_string()),
        };
        ParseError { kind, line: 1, column: 1 }
    })
}

/// Parses a single word (or equation `u = v`) over the generators of `p`.
pub fn parse_word(text: &str, p: &Presentation) -> Result<Word, ParseError> {
    let mut q = Parser { toks: lex(text)?, at: 0, names: p.generator_names().to_vec() };
    let w = q.relator()?;
    if *q.peek() != Tok::End {
        return Err(q.unexpected("end of input"));
    }
    Ok(w)
}

/// Parses a comma-separated list of words. Blank input is the empty list.
pub fn parse_word_list(text: &str, p: &Presentation) -> Result<Vec<Word>, ParseError> {
    let mut q = Parser { toks: lex(text)?, at: 0, names: p.generator_names().to_vec() };
    let mut out = Vec::new();
    if *q.peek() == Tok::End {
        return Ok(out);
    }
    loop {
        out.push(q.relator()?);
        match q.peek() {
            Tok::Comma => {
                q.bump();
            }
            Tok::End => return Ok(out),
            _ => return Err(q.unexpected("',' or end of input")),
        }
    }
}
