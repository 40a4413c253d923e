//! Minimal s-expressions: enough to hold formulas, substitute variables and
//! read solver models back.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Self {
        Sexp::Atom(s.into())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(l) => Some(l),
            Sexp::Atom(_) => None,
        }
    }

    /// Replace atoms by the mapped term, leaving everything else intact.
    pub fn substitute(&self, map: &HashMap<&str, Sexp>) -> Sexp {
        match self {
            Sexp::Atom(a) => map.get(a.as_str()).cloned().unwrap_or_else(|| self.clone()),
            Sexp::List(l) => Sexp::List(l.iter().map(|s| s.substitute(map)).collect()),
        }
    }

    /// Every atom in the tree, in order of appearance.
    pub fn atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Sexp::Atom(a) => out.push(a),
            Sexp::List(l) => l.iter().for_each(|s| s.atoms(out)),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(l) => {
                f.write_str("(")?;
                for (i, s) in l.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn tokenize(text: &str) -> Result<Vec<String>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' | ')' => {
                toks.push(c.to_string());
                chars.next();
            }
            ';' => while chars.next().is_some_and(|c| c != '\n') {},
            '"' => {
                let mut s = String::from('"');
                chars.next();
                loop {
                    match chars.next() {
                        Some('"') => {
                            s.push('"');
                            // SMT-LIB escapes a quote by doubling it
                            if chars.peek() == Some(&'"') {
                                chars.next();
                                continue;
                            }
                            break;
                        }
                        Some(c) => s.push(c),
                        None => return Err(ParseError("unterminated string".into())),
                    }
                }
                toks.push(s);
            }
            '|' => {
                let mut s = String::from('|');
                chars.next();
                loop {
                    match chars.next() {
                        Some('|') => break,
                        Some(c) => s.push(c),
                        None => return Err(ParseError("unterminated quoted symbol".into())),
                    }
                }
                s.push('|');
                toks.push(s);
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                toks.push(s);
            }
        }
    }
    Ok(toks)
}

/// Parse a sequence of top-level expressions.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let toks = tokenize(text)?;
    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    for t in toks {
        match t.as_str() {
            "(" => stack.push(Vec::new()),
            ")" => {
                let done = stack.pop().unwrap();
                match stack.last_mut() {
                    Some(top) => top.push(Sexp::List(done)),
                    None => return Err(ParseError("unbalanced ')'".into())),
                }
            }
            _ => stack.last_mut().unwrap().push(Sexp::Atom(t)),
        }
    }
    if stack.len() != 1 {
        return Err(ParseError("unbalanced '('".into()));
    }
    Ok(stack.pop().unwrap())
}

pub fn parse(text: &str) -> Result<Sexp, ParseError> {
    let mut all = parse_all(text)?;
    if all.len() != 1 {
        return Err(ParseError(format!("expected one expression, found {}", all.len())));
    }
    Ok(all.pop().unwrap())
}
