//! Manchester-syntax class expressions, as used inside annotation payloads
//! and simple queries.
//!
//! Precedence from loosest to tightest: `or`, `and`, `not`, restrictions.

use crate::model::{Concept, EntityKind, Name, Role};

use super::{FrontendError, Prefixes};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Iri(String),
    Int(u32),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

#[derive(Debug, Clone)]
pub(crate) struct Lexed {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn lex(text: &str) -> Result<Vec<Lexed>, FrontendError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += c.len_utf8();
                continue;
            }
            '(' => out.push(Lexed { tok: Tok::LParen, offset: start }),
            ')' => out.push(Lexed { tok: Tok::RParen, offset: start }),
            '{' => out.push(Lexed { tok: Tok::LBrace, offset: start }),
            '}' => out.push(Lexed { tok: Tok::RBrace, offset: start }),
            ',' => out.push(Lexed { tok: Tok::Comma, offset: start }),
            '<' => {
                let end = text[i..]
                    .find('>')
                    .ok_or_else(|| syntax(text, i, "closing `>` of IRI"))?;
                out.push(Lexed {
                    tok: Tok::Iri(text[i + 1..i + end].to_owned()),
                    offset: start,
                });
                i += end + 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                let len = text[i..].bytes().take_while(u8::is_ascii_digit).count();
                let n = text[i..i + len]
                    .parse()
                    .map_err(|_| syntax(text, i, "a cardinality that fits in 32 bits"))?;
                out.push(Lexed { tok: Tok::Int(n), offset: start });
                i += len;
                continue;
            }
            c if is_ident_char(c) => {
                let len: usize = text[i..]
                    .chars()
                    .take_while(|&c| is_ident_char(c))
                    .map(char::len_utf8)
                    .sum();
                out.push(Lexed {
                    tok: Tok::Ident(text[i..i + len].to_owned()),
                    offset: start,
                });
                i += len;
                continue;
            }
            _ => return Err(syntax(text, i, "a class expression")),
        }
        i += c.len_utf8();
    }
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.')
}

fn syntax(text: &str, offset: usize, expected: &str) -> FrontendError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let found = text[offset.min(text.len())..]
        .split_whitespace()
        .next()
        .unwrap_or("end of input")
        .to_owned();
    FrontendError::Syntax {
        line,
        col,
        expected: expected.to_owned(),
        found,
    }
}

const KEYWORDS: &[&str] = &[
    "and", "or", "not", "some", "only", "min", "max", "exactly", "Self", "inverse",
];

/// Recursive-descent parser over a token slice. `stop` words end the
/// expression without being consumed (used by the query syntax).
pub(crate) struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
    prefixes: &'a Prefixes,
    stop: &'a [&'a str],
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str, prefixes: &'a Prefixes, stop: &'a [&'a str]) -> Result<Self, FrontendError> {
        Ok(Parser {
            text,
            toks: lex(text)?,
            pos: 0,
            prefixes,
            stop,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|l| &l.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |l| l.offset)
    }

    fn err(&self, expected: &str) -> FrontendError {
        syntax(self.text, self.offset(), expected)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), FrontendError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    /// Consumes one of the stop words, if present.
    pub fn take_stop_word(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if self.stop.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    pub fn finish(&self) -> Result<(), FrontendError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("end of class expression"))
        }
    }

    pub fn class(&mut self) -> Result<Concept, FrontendError> {
        let mut c = self.conjunction()?;
        while self.eat_word("or") {
            c = Concept::or(c, self.conjunction()?);
        }
        Ok(c)
    }

    fn conjunction(&mut self) -> Result<Concept, FrontendError> {
        let mut c = self.unary()?;
        while self.eat_word("and") {
            c = Concept::and(c, self.unary()?);
        }
        Ok(c)
    }

    fn unary(&mut self) -> Result<Concept, FrontendError> {
        if self.eat_word("not") {
            return Ok(Concept::not(self.unary()?));
        }
        if self.starts_restriction() {
            return self.restriction();
        }
        self.atomic()
    }

    /// A role followed by a restriction keyword.
    fn starts_restriction(&self) -> bool {
        let next = match self.peek() {
            Some(Tok::Ident(s)) if s == "inverse" => {
                if self.peek_at(1) == Some(&Tok::LParen) {
                    self.peek_at(4)
                } else {
                    self.peek_at(2)
                }
            }
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => self.peek_at(1),
            Some(Tok::Iri(_)) => self.peek_at(1),
            _ => return false,
        };
        matches!(next, Some(Tok::Ident(k)) if matches!(k.as_str(), "some" | "only" | "min" | "max" | "exactly" | "Self"))
    }

    fn role(&mut self) -> Result<Role, FrontendError> {
        if self.eat_word("inverse") {
            let paren = self.peek() == Some(&Tok::LParen);
            if paren {
                self.pos += 1;
            }
            let n = self.name(EntityKind::Role)?;
            if paren {
                self.expect(Tok::RParen, "`)` after inverse role")?;
            }
            return Ok(Role::Inverse(n));
        }
        if self.is_word("owl:topObjectProperty") {
            self.pos += 1;
            return Ok(Role::Universal);
        }
        Ok(Role::Named(self.name(EntityKind::Role)?))
    }

    fn restriction(&mut self) -> Result<Concept, FrontendError> {
        let role = self.role()?;
        let kw = match self.peek() {
            Some(Tok::Ident(k)) => k.clone(),
            _ => return Err(self.err("a restriction keyword")),
        };
        self.pos += 1;
        match kw.as_str() {
            "some" => Ok(Concept::some(role, self.unary()?)),
            "only" => Ok(Concept::all(role, self.unary()?)),
            "Self" => Ok(Concept::SelfRestriction(role)),
            "min" | "max" | "exactly" => {
                let n = match self.peek() {
                    Some(Tok::Int(n)) => *n,
                    _ => return Err(self.err("a non-negative integer")),
                };
                self.pos += 1;
                let filler = if self.starts_filler() {
                    self.unary()?
                } else {
                    Concept::Top
                };
                Ok(match kw.as_str() {
                    "min" => Concept::at_least(n, role, filler),
                    "max" => Concept::at_most(n, role, filler),
                    _ => Concept::and(
                        Concept::at_least(n, role.clone(), filler.clone()),
                        Concept::at_most(n, role, filler),
                    ),
                })
            }
            _ => Err(syntax(self.text, self.toks[self.pos - 1].offset, "a restriction keyword")),
        }
    }

    fn starts_filler(&self) -> bool {
        match self.peek() {
            Some(Tok::LParen | Tok::LBrace | Tok::Iri(_)) => true,
            Some(Tok::Ident(s)) => {
                !matches!(s.as_str(), "and" | "or") && !self.stop.contains(&s.as_str())
            }
            _ => false,
        }
    }

    fn atomic(&mut self) -> Result<Concept, FrontendError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.class()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut c = Concept::Nominal(self.name(EntityKind::Individual)?);
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    c = Concept::or(c, Concept::Nominal(self.name(EntityKind::Individual)?));
                }
                self.expect(Tok::RBrace, "`}`")?;
                Ok(c)
            }
            Some(Tok::Ident(s)) if s == "owl:Thing" || s == "Thing" => {
                self.pos += 1;
                Ok(Concept::Top)
            }
            Some(Tok::Ident(s)) if s == "owl:Nothing" || s == "Nothing" => {
                self.pos += 1;
                Ok(Concept::Bottom)
            }
            Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str()) || self.stop.contains(&s.as_str()) => {
                Err(self.err("a class name"))
            }
            Some(Tok::Ident(_) | Tok::Iri(_)) => Ok(Concept::Named(self.name(EntityKind::Concept)?)),
            _ => Err(self.err("a class expression")),
        }
    }

    fn name(&mut self, kind: EntityKind) -> Result<Name, FrontendError> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => self.prefixes.resolve(kind, s),
            Some(Tok::Iri(iri)) => self.prefixes.resolve_iri(kind, iri),
            _ => return Err(self.err(&format!("a {} name", kind.label()))),
        };
        let name = name?;
        self.pos += 1;
        Ok(name)
    }
}

/// Parses a complete Manchester class expression.
pub fn parse_manchester_class(text: &str, prefixes: &Prefixes) -> Result<Concept, FrontendError> {
    let mut p = Parser::new(text, prefixes, &[])?;
    let c = p.class()?;
    p.finish()?;
    Ok(c)
}
