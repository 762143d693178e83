//! Functional-style document subset.

use crate::model::{Concept, Declarations, EntityKind, Name, PlainAxiom, Role, RoleInclusion, TBoxAxiom};

use super::{Annotation, FrontendError, NamePolicy, Prefixes, RawAxiom, RawDocument};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Eq,
    Iri(String),
    Str(String),
    /// Keywords, prefixed names and integers.
    Word(String),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, expected: &str, found: &str) -> FrontendError {
        FrontendError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_owned(),
            found: found.to_owned(),
        }
    }

    fn tokens(mut self) -> Result<Vec<Token>, FrontendError> {
        let mut out = Vec::new();
        loop {
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else {
                out.push(Token { tok: Tok::Eof, line, col });
                return Ok(out);
            };
            let tok = match c {
                c if c.is_whitespace() => {
                    self.bump();
                    continue;
                }
                '#' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                    continue;
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '=' => {
                    self.bump();
                    Tok::Eq
                }
                '<' => {
                    self.bump();
                    let mut iri = String::new();
                    loop {
                        match self.bump() {
                            Some('>') => break,
                            Some(c) if !c.is_whitespace() => iri.push(c),
                            _ => return Err(self.error("closing `>` of IRI", "end of IRI")),
                        }
                    }
                    Tok::Iri(iri)
                }
                '"' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some(c @ ('"' | '\\')) => s.push(c),
                                _ => return Err(self.error("`\\\"` or `\\\\`", "bad escape")),
                            },
                            Some(c) => s.push(c),
                            None => return Err(self.error("closing `\"`", "end of input")),
                        }
                    }
                    // Datatype or language tags are accepted and ignored.
                    if self.chars.peek() == Some(&'^') {
                        self.bump();
                        if self.bump() != Some('^') {
                            return Err(self.error("`^^`", "^"));
                        }
                        self.skip_word_or_iri()?;
                    } else if self.chars.peek() == Some(&'@') {
                        self.bump();
                        self.skip_word_or_iri()?;
                    }
                    Tok::Str(s)
                }
                c if is_word_char(c) => {
                    let mut w = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if !is_word_char(c) {
                            break;
                        }
                        w.push(c);
                        self.bump();
                    }
                    Tok::Word(w)
                }
                other => return Err(self.error("a token", &other.to_string())),
            };
            out.push(Token { tok, line, col });
        }
    }

    fn skip_word_or_iri(&mut self) -> Result<(), FrontendError> {
        if self.chars.peek() == Some(&'<') {
            while let Some(c) = self.bump() {
                if c == '>' {
                    return Ok(());
                }
            }
            return Err(self.error("closing `>` of IRI", "end of input"));
        }
        while self.chars.peek().is_some_and(|&c| is_word_char(c)) {
            self.bump();
        }
        Ok(())
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.')
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    prefixes: Prefixes,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Eq => "=".into(),
        Tok::Iri(i) => format!("<{i}>"),
        Tok::Str(s) => format!("{s:?}"),
        Tok::Word(w) => w.clone(),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> FrontendError {
        let (line, col) = self.here();
        FrontendError::Syntax {
            line,
            col,
            expected: expected.to_owned(),
            found: describe(self.peek()),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), FrontendError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", describe(&t))))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    /// Consumes `Keyword(` and returns the keyword.
    fn open(&mut self) -> Result<String, FrontendError> {
        match (self.peek().clone(), self.peek2()) {
            (Tok::Word(w), Tok::LParen) => {
                self.next();
                self.next();
                Ok(w)
            }
            _ => Err(self.error("a construct of the form `Keyword(`")),
        }
    }

    fn document(mut self) -> Result<RawDocument, FrontendError> {
        while self.is_word("Prefix") {
            self.open()?;
            let prefix = match self.next() {
                Tok::Word(w) if w.ends_with(':') => w[..w.len() - 1].to_owned(),
                _ => {
                    self.pos -= 1;
                    return Err(self.error("a prefix name ending in `:`"));
                }
            };
            self.expect(Tok::Eq)?;
            let iri = match self.next() {
                Tok::Iri(i) => i,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("an IRI"));
                }
            };
            self.expect(Tok::RParen)?;
            self.prefixes.insert(&prefix, &iri);
        }
        if !self.is_word("Ontology") {
            return Err(self.error("`Ontology(`"));
        }
        self.open()?;
        let ontology_iri = match self.peek().clone() {
            Tok::Iri(i) => {
                self.next();
                i
            }
            _ => return Err(self.error("the ontology IRI")),
        };
        // Optional version IRI.
        if let Tok::Iri(_) = self.peek() {
            self.next();
        }
        if self.prefixes.default_namespace().is_none() {
            self.prefixes.insert("", &format!("{ontology_iri}#"));
        }

        let mut annotations = Vec::new();
        while self.is_word("Annotation") {
            if let Some(a) = self.annotation()? {
                annotations.push(a);
            }
        }
        let mut declarations = Declarations::default();
        let mut axioms = Vec::new();
        while *self.peek() != Tok::RParen {
            if self.is_word("Declaration") {
                self.declaration(&mut declarations)?;
            } else {
                axioms.extend(self.axiom()?);
            }
        }
        self.expect(Tok::RParen)?;
        if *self.peek() != Tok::Eof {
            return Err(self.error("end of document"));
        }
        Ok(RawDocument {
            prefixes: self.prefixes,
            ontology_iri,
            annotations,
            declarations,
            axioms,
        })
    }

    /// `Annotation( Annotation* property value )`. Nested annotations and
    /// non-literal values are skipped.
    fn annotation(&mut self) -> Result<Option<Annotation>, FrontendError> {
        let (line, col) = self.here();
        self.open()?;
        while self.is_word("Annotation") {
            self.annotation()?;
        }
        let property = match self.next() {
            Tok::Word(w) => w.split_once(':').map_or(w.clone(), |(_, l)| l.to_owned()),
            Tok::Iri(i) => Name::from_iri(&i).local,
            _ => {
                self.pos -= 1;
                return Err(self.error("an annotation property"));
            }
        };
        let value = match self.next() {
            Tok::Str(s) => Some(s),
            Tok::Iri(_) | Tok::Word(_) => None,
            _ => {
                self.pos -= 1;
                return Err(self.error("an annotation value"));
            }
        };
        self.expect(Tok::RParen)?;
        Ok(value.map(|value| Annotation {
            property,
            value,
            line,
            col,
        }))
    }

    fn axiom_annotations(&mut self) -> Result<Vec<Annotation>, FrontendError> {
        let mut out = Vec::new();
        while self.is_word("Annotation") {
            out.extend(self.annotation()?);
        }
        Ok(out)
    }

    fn declaration(&mut self, decls: &mut Declarations) -> Result<(), FrontendError> {
        self.open()?;
        self.axiom_annotations()?;
        let kw = self.open()?;
        match kw.as_str() {
            "Class" => decls.concepts.push(self.entity(EntityKind::Concept)?),
            "ObjectProperty" => decls.roles.push(self.entity(EntityKind::Role)?),
            "NamedIndividual" => decls.individuals.push(self.entity(EntityKind::Individual)?),
            "AnnotationProperty" => {
                self.next();
            }
            other => return Err(FrontendError::Unsupported(format!("Declaration({other})"))),
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::RParen)
    }

    fn entity(&mut self, kind: EntityKind) -> Result<Name, FrontendError> {
        let name = match self.peek().clone() {
            Tok::Word(w) if w.contains(':') => self.prefixes.resolve(kind, &w)?,
            Tok::Iri(i) => self.prefixes.resolve_iri(kind, &i)?,
            _ => return Err(self.error(&format!("a {} name", kind.label()))),
        };
        self.next();
        Ok(name)
    }

    fn axiom(&mut self) -> Result<Vec<RawAxiom>, FrontendError> {
        let (line, _) = self.here();
        let kw = self.open()?;
        let supported = [
            "SubClassOf",
            "EquivalentClasses",
            "SubObjectPropertyOf",
            "TransitiveObjectProperty",
            "ClassAssertion",
            "ObjectPropertyAssertion",
        ];
        if !supported.contains(&kw.as_str()) {
            return Err(FrontendError::Unsupported(kw));
        }
        let annotations = self.axiom_annotations()?;
        let axiom: PlainAxiom = match kw.as_str() {
            "SubClassOf" => {
                let c = self.concept()?;
                TBoxAxiom::sub(c, self.concept()?).into()
            }
            "EquivalentClasses" => {
                let c = self.concept()?;
                TBoxAxiom::equiv(c, self.concept()?).into()
            }
            "SubObjectPropertyOf" => {
                let chain = if self.is_word("ObjectPropertyChain") {
                    self.open()?;
                    let mut chain = vec![self.role()?];
                    while *self.peek() != Tok::RParen {
                        chain.push(self.role()?);
                    }
                    self.expect(Tok::RParen)?;
                    chain
                } else {
                    vec![self.role()?]
                };
                RoleInclusion::new(chain, self.entity(EntityKind::Role)?).into()
            }
            "TransitiveObjectProperty" => {
                let r = self.entity(EntityKind::Role)?;
                RoleInclusion::new(vec![Role::Named(r.clone()), Role::Named(r.clone())], r).into()
            }
            "ClassAssertion" => {
                let c = self.concept()?;
                let a = self.entity(EntityKind::Individual)?;
                TBoxAxiom::sub(Concept::Nominal(a), c).into()
            }
            _ => {
                let r = self.role()?;
                let a = self.entity(EntityKind::Individual)?;
                let b = self.entity(EntityKind::Individual)?;
                TBoxAxiom::sub(Concept::Nominal(a), Concept::some(r, Concept::Nominal(b))).into()
            }
        };
        self.expect(Tok::RParen)?;
        Ok(vec![RawAxiom {
            axiom,
            annotations,
            line,
        }])
    }

    fn role(&mut self) -> Result<Role, FrontendError> {
        if self.is_word("owl:topObjectProperty") {
            self.next();
            return Ok(Role::Universal);
        }
        if let (Tok::Word(w), Tok::LParen) = (self.peek(), self.peek2()) {
            if w != "ObjectInverseOf" {
                return Err(FrontendError::Unsupported(w.clone()));
            }
            self.open()?;
            let n = self.entity(EntityKind::Role)?;
            self.expect(Tok::RParen)?;
            return Ok(Role::Inverse(n));
        }
        Ok(Role::Named(self.entity(EntityKind::Role)?))
    }

    fn number(&mut self) -> Result<u32, FrontendError> {
        match self.peek().clone() {
            Tok::Word(w) if w.bytes().all(|b| b.is_ascii_digit()) => {
                let n = w.parse().map_err(|_| self.error("a cardinality that fits in 32 bits"))?;
                self.next();
                Ok(n)
            }
            _ => Err(self.error("a non-negative integer")),
        }
    }

    fn concept(&mut self) -> Result<Concept, FrontendError> {
        if self.is_word("owl:Thing") {
            self.next();
            return Ok(Concept::Top);
        }
        if self.is_word("owl:Nothing") {
            self.next();
            return Ok(Concept::Bottom);
        }
        let kw = match (self.peek(), self.peek2()) {
            (Tok::Word(w), Tok::LParen) => w.clone(),
            _ => return Ok(Concept::Named(self.entity(EntityKind::Concept)?)),
        };
        self.open()?;
        let c = match kw.as_str() {
            "ObjectComplementOf" => Concept::not(self.concept()?),
            "ObjectIntersectionOf" | "ObjectUnionOf" => {
                let mut items = vec![self.concept()?, self.concept()?];
                while *self.peek() != Tok::RParen {
                    items.push(self.concept()?);
                }
                if kw == "ObjectIntersectionOf" {
                    Concept::and_all(items)
                } else {
                    Concept::or_all(items)
                }
            }
            "ObjectAllValuesFrom" => {
                let r = self.role()?;
                Concept::all(r, self.concept()?)
            }
            "ObjectSomeValuesFrom" => {
                let r = self.role()?;
                Concept::some(r, self.concept()?)
            }
            "ObjectHasSelf" => Concept::SelfRestriction(self.role()?),
            "ObjectMaxCardinality" | "ObjectMinCardinality" => {
                let n = self.number()?;
                let r = self.role()?;
                let filler = if *self.peek() == Tok::RParen {
                    Concept::Top
                } else {
                    self.concept()?
                };
                if kw == "ObjectMaxCardinality" {
                    Concept::at_most(n, r, filler)
                } else {
                    Concept::at_least(n, r, filler)
                }
            }
            "ObjectOneOf" => {
                let mut items = vec![Concept::Nominal(self.entity(EntityKind::Individual)?)];
                while *self.peek() != Tok::RParen {
                    items.push(Concept::Nominal(self.entity(EntityKind::Individual)?));
                }
                Concept::or_all(items)
            }
            other => return Err(FrontendError::Unsupported(other.to_owned())),
        };
        self.expect(Tok::RParen)?;
        Ok(c)
    }
}

/// Parses a functional-style document. `TransitiveObjectProperty`,
/// `ClassAssertion` and `ObjectPropertyAssertion` are desugared into role
/// inclusions and nominal subclass axioms.
pub fn parse_document(text: &str) -> Result<RawDocument, FrontendError> {
    parse_document_with(text, NamePolicy::Strict)
}

/// [`parse_document`] under an explicit name policy.
pub fn parse_document_with(text: &str, policy: NamePolicy) -> Result<RawDocument, FrontendError> {
    let lexer = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let parser = Parser {
        toks: lexer.tokens()?,
        pos: 0,
        prefixes: Prefixes::default().with_policy(policy),
    };
    parser.document()
}
