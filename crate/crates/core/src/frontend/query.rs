use crate::model::{is_valid_standpoint_name, Formula, StandpointExpr, TBoxAxiom};

use super::{manchester::Parser, FrontendError, Prefixes};

fn syntax(col: usize, expected: &str, found: &str) -> FrontendError {
    FrontendError::Syntax {
        line: 1,
        col,
        expected: expected.to_owned(),
        found: found.to_owned(),
    }
}

/// Parses `[s](C sub D)`, `[s](C eq D)`, `<s>(C sub D)` or `<s>(C eq D)`.
pub fn parse_simple_query(text: &str, prefixes: &Prefixes) -> Result<Formula, FrontendError> {
    let text = text.trim();
    let (close, diamond) = match text.chars().next() {
        Some('[') => (']', false),
        Some('<') => ('>', true),
        _ => return Err(syntax(1, "`[s]` or `<s>`", text)),
    };
    let end = text
        .find(close)
        .ok_or_else(|| syntax(1, &format!("closing `{close}`"), text))?;
    let name = text[1..end].trim();
    if !is_valid_standpoint_name(name) {
        return Err(FrontendError::BadName {
            kind: "standpoint",
            name: name.to_owned(),
        });
    }
    let rest = text[end + 1..].trim_start();
    let col = text.len() - rest.len() + 1;
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| syntax(col, "a parenthesised axiom `(C sub D)`", rest))?;

    let stop = ["sub", "eq"];
    let mut p = Parser::new(inner, prefixes, &stop)?;
    let lhs = p.class()?;
    let op = p
        .take_stop_word()
        .ok_or_else(|| syntax(col, "`sub` or `eq`", inner))?;
    let rhs = p.class()?;
    p.finish()?;

    let axiom = if op == "sub" {
        TBoxAxiom::sub(lhs, rhs)
    } else {
        TBoxAxiom::equiv(lhs, rhs)
    };
    let e = StandpointExpr::name(name);
    Ok(if diamond {
        Formula::diamond(e, Formula::atom(axiom))
    } else {
        Formula::boxed(e, Formula::atom(axiom))
    })
}
