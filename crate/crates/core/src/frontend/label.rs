//! XML payloads of `standpointLabel` annotations.
//!
//! Element names are matched case-insensitively; `name` attribute values
//! are case-sensitive.

use roxmltree::{Document, Node};

use crate::model::{is_valid_axiom_name, is_valid_standpoint_name, Formula, StandpointExpr, TBoxAxiom};

use super::{manchester::parse_manchester_class, FrontendError, Prefixes};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpOperator {
    Box,
    Diamond,
}

/// One parsed `standpointLabel` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabeledConstruct {
    BoolComb(Formula),
    Sharpening(StandpointExpr, StandpointExpr),
    SpAxiom {
        name: Option<String>,
        operator: SpOperator,
        expr: StandpointExpr,
    },
}

fn grammar(msg: impl Into<String>) -> FrontendError {
    FrontendError::Grammar(msg.into())
}

fn tag(n: Node) -> String {
    n.tag_name().name().to_ascii_lowercase()
}

fn children<'a, 'i>(n: Node<'a, 'i>) -> Result<Vec<Node<'a, 'i>>, FrontendError> {
    let mut out = Vec::new();
    for c in n.children() {
        if c.is_element() {
            out.push(c);
        } else if c.is_text() && !c.text().unwrap_or("").trim().is_empty() {
            return Err(grammar(format!(
                "unexpected text {:?} inside <{}>",
                c.text().unwrap_or("").trim(),
                n.tag_name().name()
            )));
        }
    }
    Ok(out)
}

fn attr<'a>(n: Node<'a, '_>, key: &str) -> Option<&'a str> {
    n.attributes()
        .find(|a| a.name().eq_ignore_ascii_case(key))
        .map(|a| a.value())
}

fn parse_xml(payload: &str) -> Result<Document<'_>, FrontendError> {
    Document::parse(payload).map_err(|e| FrontendError::Xml(e.to_string()))
}

/// The payload root, looking through an optional `<standpointLabel>` wrapper.
fn payload_root<'a, 'i>(doc: &'a Document<'i>) -> Result<Node<'a, 'i>, FrontendError> {
    let root = doc.root_element();
    if tag(root) == "standpointlabel" {
        match children(root)?.as_slice() {
            [only] => Ok(*only),
            _ => Err(grammar("<standpointLabel> must wrap exactly one element")),
        }
    } else {
        Ok(root)
    }
}

struct Reader<'p> {
    prefixes: &'p Prefixes,
}

impl Reader<'_> {
    fn formula(&self, n: Node) -> Result<Formula, FrontendError> {
        match tag(n).as_str() {
            "not" => match children(n)?.as_slice() {
                [inner] => Ok(Formula::not(self.axiom(*inner).map_err(|e| match e {
                    FrontendError::Grammar(m) => grammar(format!("<NOT> must wrap an axiom: {m}")),
                    other => other,
                })?)),
                _ => Err(grammar("<NOT> must wrap exactly one axiom")),
            },
            t @ ("and" | "or") => {
                let parts = children(n)?;
                if parts.len() < 2 {
                    return Err(grammar(format!("<{t}> needs two formulas")));
                }
                let mut it = parts.into_iter().map(|c| self.formula(c));
                let first = it.next().unwrap()?;
                it.try_fold(first, |acc, f| {
                    let f = f?;
                    Ok(if t == "and" {
                        Formula::and(acc, f)
                    } else {
                        Formula::or(acc, f)
                    })
                })
            }
            _ => self.axiom(n),
        }
    }

    fn axiom(&self, n: Node) -> Result<Formula, FrontendError> {
        match tag(n).as_str() {
            "subclassof" | "equivalentclasses" => Ok(Formula::atom(self.std_axiom(n)?)),
            "standpointaxiom" => {
                if !children(n)?.is_empty() {
                    return Err(grammar(
                        "a standpointAxiom reference inside a formula takes no content",
                    ));
                }
                let name = attr(n, "name").ok_or_else(|| grammar("standpointAxiom reference without a name"))?;
                Ok(Formula::Ref(axiom_name(name)?))
            }
            t @ ("box" | "diamond") => match children(n)?.as_slice() {
                [e, a] => {
                    let e = self.sp_expr(*e)?;
                    let a = self.std_axiom(*a).map_err(|err| match err {
                        FrontendError::Grammar(m) => grammar(format!("<{t}> must wrap a plain axiom: {m}")),
                        other => other,
                    })?;
                    Ok(if t == "box" {
                        Formula::boxed(e, Formula::atom(a))
                    } else {
                        Formula::diamond(e, Formula::atom(a))
                    })
                }
                _ => Err(grammar(format!("<{t}> takes a standpoint expression and an axiom"))),
            },
            other => Err(grammar(format!("unexpected element <{other}>"))),
        }
    }

    fn std_axiom(&self, n: Node) -> Result<TBoxAxiom, FrontendError> {
        let t = tag(n);
        if t != "subclassof" && t != "equivalentclasses" {
            return Err(grammar(format!("expected subClassOf or equivalentClasses, found <{t}>")));
        }
        let (lhs, rhs) = match children(n)?.as_slice() {
            [l, r] if tag(*l) == "lhs" && tag(*r) == "rhs" => (self.class(*l)?, self.class(*r)?),
            _ => return Err(grammar(format!("<{t}> takes <LHS> and <RHS>"))),
        };
        Ok(if t == "subclassof" {
            TBoxAxiom::sub(lhs, rhs)
        } else {
            TBoxAxiom::equiv(lhs, rhs)
        })
    }

    fn class(&self, n: Node) -> Result<crate::model::Concept, FrontendError> {
        if n.children().any(|c| c.is_element()) {
            return Err(grammar("class expressions are plain text"));
        }
        let text: String = n.children().filter_map(|c| c.text()).collect();
        parse_manchester_class(&text, self.prefixes)
    }

    fn sp_expr(&self, n: Node) -> Result<StandpointExpr, FrontendError> {
        match tag(n).as_str() {
            "standpoint" => {
                if !children(n)?.is_empty() {
                    return Err(grammar("<Standpoint> takes no content"));
                }
                let name = attr(n, "name").ok_or_else(|| grammar("<Standpoint> without a name"))?;
                if !is_valid_standpoint_name(name) {
                    return Err(FrontendError::BadName {
                        kind: "standpoint",
                        name: name.to_owned(),
                    });
                }
                Ok(StandpointExpr::name(name))
            }
            t @ ("intersection" | "union") => {
                let parts = children(n)?;
                if parts.len() < 2 {
                    return Err(grammar(format!("<{t}> needs at least two standpoint expressions")));
                }
                let mut it = parts.into_iter().map(|c| self.sp_expr(c));
                let first = it.next().unwrap()?;
                it.try_fold(first, |acc, e| {
                    let e = e?;
                    Ok(if t == "union" {
                        StandpointExpr::union(acc, e)
                    } else {
                        StandpointExpr::intersection(acc, e)
                    })
                })
            }
            "minus" => match children(n)?.as_slice() {
                [a, b] => Ok(StandpointExpr::minus(self.sp_expr(*a)?, self.sp_expr(*b)?)),
                _ => Err(grammar("<MINUS> takes exactly two standpoint expressions")),
            },
            other => Err(grammar(format!("expected a standpoint expression, found <{other}>"))),
        }
    }

    fn sp_operator(&self, n: Node) -> Result<(SpOperator, StandpointExpr), FrontendError> {
        let op = match tag(n).as_str() {
            "box" => SpOperator::Box,
            "diamond" => SpOperator::Diamond,
            other => return Err(grammar(format!("expected <Box> or <Diamond>, found <{other}>"))),
        };
        match children(n)?.as_slice() {
            [e] => Ok((op, self.sp_expr(*e)?)),
            _ => Err(grammar("the operator of a standpointAxiom wraps one standpoint expression")),
        }
    }
}

fn axiom_name(raw: &str) -> Result<String, FrontendError> {
    match raw.strip_prefix('§') {
        Some(rest) if is_valid_axiom_name(rest) => Ok(rest.to_owned()),
        _ => Err(FrontendError::BadName {
            kind: "axiom",
            name: raw.to_owned(),
        }),
    }
}

/// Parses a `standpointLabel` literal into a boolean combination, a
/// sharpening or a standpoint-axiom operator.
pub fn parse_standpoint_label(payload: &str, prefixes: &Prefixes) -> Result<LabeledConstruct, FrontendError> {
    let doc = parse_xml(payload)?;
    let root = payload_root(&doc)?;
    let r = Reader { prefixes };
    match tag(root).as_str() {
        "booleancombination" => match children(root)?.as_slice() {
            [f] => Ok(LabeledConstruct::BoolComb(r.formula(*f)?)),
            _ => Err(grammar("<booleanCombination> wraps exactly one formula")),
        },
        "sharpening" => match children(root)?.as_slice() {
            [a, b] => Ok(LabeledConstruct::Sharpening(r.sp_expr(*a)?, r.sp_expr(*b)?)),
            _ => Err(grammar("<Sharpening> takes exactly two standpoint expressions")),
        },
        "standpointaxiom" => {
            let name = attr(root, "name").map(axiom_name).transpose()?;
            match children(root)?.as_slice() {
                [op] => {
                    let (operator, expr) = r.sp_operator(*op)?;
                    Ok(LabeledConstruct::SpAxiom { name, operator, expr })
                }
                _ => Err(grammar("<standpointAxiom> wraps exactly one <Box> or <Diamond>")),
            }
        }
        other => Err(grammar(format!("unexpected root element <{other}>"))),
    }
}

/// Parses a query formula: either a `<booleanCombination>` or a bare
/// formula element.
pub fn parse_formula_xml(text: &str, prefixes: &Prefixes) -> Result<Formula, FrontendError> {
    let doc = parse_xml(text.trim())?;
    let root = payload_root(&doc)?;
    let r = Reader { prefixes };
    if tag(root) == "booleancombination" {
        match children(root)?.as_slice() {
            [f] => r.formula(*f),
            _ => Err(grammar("<booleanCombination> wraps exactly one formula")),
        }
    } else {
        r.formula(root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Concept;

    const NS: &str = "http://ex.org/o#";

    fn parse(s: &str) -> Result<LabeledConstruct, FrontendError> {
        parse_standpoint_label(s, &Prefixes::with_default(NS))
    }

    fn a(s: &str) -> Concept {
        Concept::named(NS, s)
    }

    pub(crate) const EXAMPLE_2: &str = r#"<standpointLabel> <booleanCombination> <AND>
            <Box> <Standpoint name="LU"/>
              <equivalentClasses> <LHS>Forest</LHS> <RHS>ForestlandUse and MCON</RHS> </equivalentClasses>
            </Box>
            <Box> <Standpoint name="*"/>
              <subClassOf> <LHS>ForestlandUse</LHS> <RHS>Land</RHS> </subClassOf>
            </Box>
          </AND> </booleanCombination> </standpointLabel>"#;

    #[test]
    fn example_two() {
        let expected = Formula::and(
            Formula::boxed(
                StandpointExpr::name("LU"),
                Formula::atom(TBoxAxiom::equiv(
                    a("Forest"),
                    Concept::and(a("ForestlandUse"), a("MCON")),
                )),
            ),
            Formula::boxed(
                StandpointExpr::Star,
                Formula::atom(TBoxAxiom::sub(a("ForestlandUse"), a("Land"))),
            ),
        );
        assert_eq!(parse(EXAMPLE_2).unwrap(), LabeledConstruct::BoolComb(expected));
    }

    #[test]
    fn sharpening() {
        assert_eq!(
            parse(r#"<Sharpening><Standpoint name="LC"/><Standpoint name="BFO"/></Sharpening>"#).unwrap(),
            LabeledConstruct::Sharpening(StandpointExpr::name("LC"), StandpointExpr::name("BFO"))
        );
    }

    #[test]
    fn named_sp_axiom() {
        assert_eq!(
            parse(r#"<standpointAxiom name="§ax1"><Box><Standpoint name="s"/></Box></standpointAxiom>"#).unwrap(),
            LabeledConstruct::SpAxiom {
                name: Some("ax1".into()),
                operator: SpOperator::Box,
                expr: StandpointExpr::name("s"),
            }
        );
    }

    #[test]
    fn grammar_violations() {
        let not_and = r#"<booleanCombination><NOT><AND>
            <subClassOf><LHS>A</LHS><RHS>B</RHS></subClassOf>
            <subClassOf><LHS>A</LHS><RHS>B</RHS></subClassOf>
            </AND></NOT></booleanCombination>"#;
        assert!(matches!(parse(not_and), Err(FrontendError::Grammar(_))));
        let box_box = r#"<booleanCombination><Box><Standpoint name="s"/>
            <Box><Standpoint name="t"/><subClassOf><LHS>A</LHS><RHS>B</RHS></subClassOf></Box>
            </Box></booleanCombination>"#;
        assert!(matches!(parse(box_box), Err(FrontendError::Grammar(_))));
        let minus3 = r#"<Sharpening><MINUS><Standpoint name="a"/></MINUS><Standpoint name="b"/></Sharpening>"#;
        assert!(matches!(parse(minus3), Err(FrontendError::Grammar(_))));
    }

    #[test]
    fn bad_names_and_xml() {
        assert!(matches!(
            parse(r#"<Sharpening><Standpoint name="L_C"/><Standpoint name="B"/></Sharpening>"#),
            Err(FrontendError::BadName { .. })
        ));
        assert!(matches!(
            parse(r#"<standpointAxiom name="ax1"><Box><Standpoint name="s"/></Box></standpointAxiom>"#),
            Err(FrontendError::BadName { .. })
        ));
        assert!(matches!(parse("<Sharpening>"), Err(FrontendError::Xml(_))));
    }

    #[test]
    fn element_case_insensitive_name_case_sensitive() {
        let lower = parse(r#"<sharpening><standpoint name="LC"/><STANDPOINT name="BFO"/></sharpening>"#).unwrap();
        let upper = parse(r#"<SHARPENING><Standpoint name="LC"/><Standpoint name="BFO"/></SHARPENING>"#).unwrap();
        assert_eq!(lower, upper);
        let other = parse(r#"<Sharpening><Standpoint name="lc"/><Standpoint name="BFO"/></Sharpening>"#).unwrap();
        assert_ne!(lower, other);
    }

    #[test]
    fn set_operators_fold_left() {
        let p = parse(
            r#"<Sharpening><UNION><Standpoint name="a"/><Standpoint name="b"/><Standpoint name="c"/></UNION>
               <MINUS><Standpoint name="*"/><Standpoint name="d"/></MINUS></Sharpening>"#,
        )
        .unwrap();
        let abc = StandpointExpr::union(
            StandpointExpr::union(StandpointExpr::name("a"), StandpointExpr::name("b")),
            StandpointExpr::name("c"),
        );
        assert_eq!(
            p,
            LabeledConstruct::Sharpening(abc, StandpointExpr::minus(StandpointExpr::Star, StandpointExpr::name("d")))
        );
    }

    #[test]
    fn references_and_negation() {
        let p = parse(
            r#"<booleanCombination><OR><NOT><standpointAxiom name="§ax1"/></NOT>
               <NOT><Diamond><Standpoint name="s"/><subClassOf><LHS>A</LHS><RHS>B</RHS></subClassOf></Diamond></NOT>
               </OR></booleanCombination>"#,
        )
        .unwrap();
        let LabeledConstruct::BoolComb(f) = p else { panic!() };
        assert!(f.is_parser_shaped());
        assert_eq!(
            f,
            Formula::or(
                Formula::not(Formula::Ref("ax1".into())),
                Formula::not(Formula::diamond(
                    StandpointExpr::name("s"),
                    Formula::atom(TBoxAxiom::sub(a("A"), a("B")))
                ))
            )
        );
    }
}
