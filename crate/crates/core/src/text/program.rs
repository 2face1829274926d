use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;

use super::cursor::Cursor;
use super::lexer::{tokenize, CommentStyle, Tok};
use crate::error::{Error, Result};
use crate::syntax::{Head, Program, Rule};

pub const BASE: &str = "base";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramDeclaration {
    pub name: String,
    pub params: Vec<String>,
}

impl fmt::Display for ProgramDeclaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#program {}", self.name)?;
        if !self.params.is_empty() {
            write!(f, "({})", self.params.join(","))?;
        }
        f.write_str(".")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Declaration(ProgramDeclaration),
    Rule(Rule),
}

/// A list of rules and `#program` declarations. Each rule belongs to the
/// scope of the closest declaration before it, or to `base` if there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClingoProgram {
    pub items: Vec<Item>,
    /// Parameter list per declared name; `base` is always present.
    pub declarations: IndexMap<String, Vec<String>>,
}

impl ClingoProgram {
    pub fn from_items(items: Vec<Item>) -> Result<Self> {
        let mut declarations = IndexMap::new();
        declarations.insert(BASE.to_string(), Vec::new());
        for item in &items {
            if let Item::Declaration(d) = item {
                match declarations.get(&d.name) {
                    Some(params) if *params != d.params => {
                        return Err(Error::DeclarationConflict {
                            name: d.name.clone(),
                            first: params.join(","),
                            second: d.params.join(","),
                        })
                    }
                    Some(_) => {}
                    None => {
                        declarations.insert(d.name.clone(), d.params.clone());
                    }
                }
            }
        }
        Ok(ClingoProgram {
            items,
            declarations,
        })
    }

    /// Every rule paired with the name of the scope it belongs to.
    pub fn scoped_rules(&self) -> Vec<(&str, &Rule)> {
        let mut scope = BASE;
        let mut out = Vec::new();
        for item in &self.items {
            match item {
                Item::Declaration(d) => scope = &d.name,
                Item::Rule(r) => out.push((scope, r)),
            }
        }
        out
    }

    pub fn params(&self, name: &str) -> Result<&[String]> {
        self.declarations
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| self.unknown(name))
    }

    pub(crate) fn unknown(&self, name: &str) -> Error {
        Error::UnknownSubprogram {
            name: name.to_string(),
            known: self
                .declarations
                .keys()
                .cloned()
                .collect::<Vec<_>>()
                .join(", "),
        }
    }

    /// `R(m)`: the rules in the scopes of all declarations named `m`.
    pub fn subprogram(&self, name: &str) -> Result<Program> {
        self.params(name)?;
        Ok(self
            .scoped_rules()
            .into_iter()
            .filter(|(scope, _)| *scope == name)
            .map(|(_, r)| r.clone())
            .collect())
    }

    /// Placeholders of `m` that occur as operands of arithmetic in `R(m)`;
    /// these are integer-sorted and only accept numerals as values.
    pub fn arithmetic_placeholders(&self, name: &str) -> Result<BTreeSet<String>> {
        let params: BTreeSet<&String> = self.params(name)?.iter().collect();
        let mut out = BTreeSet::new();
        for rule in self.subprogram(name)?.rules() {
            out.extend(
                rule.arithmetic_symbols()
                    .into_iter()
                    .filter(|s| params.contains(s)),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for ClingoProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Declaration(d) => writeln!(f, "{d}")?,
                Item::Rule(r) => writeln!(f, "{r}")?,
            }
        }
        Ok(())
    }
}

pub fn parse_program(text: &str) -> Result<ClingoProgram> {
    let mut cur = Cursor::new(tokenize(text, CommentStyle::Program)?);
    let mut items = Vec::new();
    while !cur.at_eof() {
        if let Tok::Directive(name) = cur.peek().clone() {
            if name != "program" {
                return Err(cur.error(format!("unsupported directive `#{name}`")));
            }
            cur.bump();
            let name = cur.ident()?;
            let mut params = Vec::new();
            if cur.eat(&Tok::LParen) {
                params.push(cur.ident()?);
                while cur.eat(&Tok::Comma) {
                    params.push(cur.ident()?);
                }
                cur.expect(Tok::RParen)?;
            }
            cur.expect(Tok::Dot)?;
            items.push(Item::Declaration(ProgramDeclaration { name, params }));
        } else {
            items.push(Item::Rule(parse_rule(&mut cur)?));
        }
    }
    ClingoProgram::from_items(items)
}

fn parse_rule(cur: &mut Cursor) -> Result<Rule> {
    let head = if *cur.peek() == Tok::If {
        Head::Falsity
    } else {
        Head::Atom(cur.pred_atom()?)
    };
    let mut body = Vec::new();
    if cur.eat(&Tok::If) {
        body.push(cur.literal()?);
        while cur.eat(&Tok::Comma) {
            body.push(cur.literal()?);
        }
    } else if head == Head::Falsity {
        return Err(cur.unexpected("`:-`"));
    }
    cur.expect(Tok::Dot)?;
    Rule::new(head, body)
}

/// Parses a sequence of rules with no declarations.
pub fn parse_rules(text: &str) -> Result<Program> {
    let parsed = parse_program(text)?;
    if parsed.declarations.len() > 1 {
        return Err(Error::MalformedRule {
            rule: text.trim().to_string(),
            reason: "declarations are not allowed here".into(),
        });
    }
    parsed.subprogram(BASE)
}
