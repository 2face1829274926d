//! The control language: a declarative description of which subprograms to
//! instantiate with which values, over which domain, and under which
//! intensionality statements.
//!
//! ```text
//! const n = 100.
//! use base.
//! use property(k) for k in 0..n-1.
//! domain 0..n+1.
//! intensional q(X,Y).
//! module property: q(X,k+1).
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexMap;

use super::cursor::Cursor;
use super::lexer::{tokenize, CommentStyle, Tok};
use super::program::ClingoProgram;
use crate::error::{Error, Result};
use crate::instantiate::Valuation;
use crate::syntax::{PredAtom, Term};

/// A request to instantiate subprogram `name` with `valuation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubprogramSpec {
    pub name: String,
    pub placeholders: Vec<String>,
    pub valuation: Valuation,
}

impl SubprogramSpec {
    pub fn new(name: impl Into<String>, placeholders: Vec<String>, values: Vec<Term>) -> Result<Self> {
        let valuation = Valuation::new(placeholders.iter().cloned().zip(values))?;
        Ok(SubprogramSpec {
            name: name.into(),
            placeholders,
            valuation,
        })
    }
}

impl fmt::Display for SubprogramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {{{}}}, {}]", self.name, self.placeholders.join(","), self.valuation)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ControlPlan {
    pub constants: BTreeMap<String, i64>,
    pub specs: Vec<SubprogramSpec>,
    pub domain: Option<(i64, i64)>,
    /// Pattern atoms of `intensional` lines; `None` when there are none.
    pub global_kappa: Option<Vec<PredAtom>>,
    /// Pattern atoms of `module` lines, per subprogram name.
    pub module_chi: IndexMap<String, Vec<PredAtom>>,
}

impl ControlPlan {
    /// The plan `use base.` used when no control file is given.
    pub fn base_only() -> Self {
        ControlPlan {
            specs: vec![SubprogramSpec {
                name: super::program::BASE.into(),
                placeholders: Vec::new(),
                valuation: Valuation::default(),
            }],
            ..ControlPlan::default()
        }
    }
}

enum Stmt {
    Const(String, Term),
    Use {
        name: String,
        args: Vec<Term>,
        range: Option<(String, Term, Term, bool)>,
    },
    Domain(Term, Term),
    Intensional(PredAtom),
    Module(String, Vec<PredAtom>),
}

pub fn parse_control(
    text: &str,
    program: &ClingoProgram,
    overrides: &BTreeMap<String, i64>,
) -> Result<ControlPlan> {
    let stmts = parse_statements(text)?;

    let mut constants = overrides.clone();
    for stmt in &stmts {
        if let Stmt::Const(name, expr) = stmt {
            if !overrides.contains_key(name) {
                let value = resolve_int(expr, &constants)?;
                constants.insert(name.clone(), value);
            }
        }
    }

    let mut plan = ControlPlan {
        constants: constants.clone(),
        ..ControlPlan::default()
    };
    for stmt in &stmts {
        match stmt {
            Stmt::Const(..) => {}
            Stmt::Use { name, args, range } => {
                let params = program.params(name)?.to_vec();
                if params.len() != args.len() {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: params.len(),
                        found: args.len(),
                    });
                }
                let arithmetic = program.arithmetic_placeholders(name)?;
                let mut emit = |bound: &BTreeMap<String, i64>| -> Result<()> {
                    let values = args
                        .iter()
                        .map(|a| resolve_value(a, bound))
                        .collect::<Result<Vec<_>>>()?;
                    for (p, v) in params.iter().zip(&values) {
                        if arithmetic.contains(p) && v.as_num().is_none() {
                            return Err(Error::PlaceholderSort {
                                subprogram: name.clone(),
                                placeholder: p.clone(),
                                value: v.to_string(),
                            });
                        }
                    }
                    plan.specs.push(SubprogramSpec::new(name.clone(), params.clone(), values)?);
                    Ok(())
                };
                match range {
                    None => emit(&constants)?,
                    Some((var, lo, hi, allow_empty)) => {
                        let lo = resolve_int(lo, &constants)?;
                        let hi = resolve_int(hi, &constants)?;
                        if lo > hi && !allow_empty {
                            return Err(Error::EmptyRange { lo, hi });
                        }
                        let mut bound = constants.clone();
                        for k in lo..=hi {
                            bound.insert(var.clone(), k);
                            emit(&bound)?;
                        }
                    }
                }
            }
            Stmt::Domain(lo, hi) => {
                let lo = resolve_int(lo, &constants)?;
                let hi = resolve_int(hi, &constants)?;
                if lo > hi {
                    return Err(Error::InvalidDomain { lo, hi });
                }
                plan.domain = Some((lo, hi));
            }
            Stmt::Intensional(atom) => {
                let atom = resolve_pattern_atom(atom, &constants, &BTreeSet::new())?;
                plan.global_kappa.get_or_insert_with(Vec::new).push(atom);
            }
            Stmt::Module(name, atoms) => {
                let params: BTreeSet<String> = program.params(name)?.iter().cloned().collect();
                let mut resolved = Vec::new();
                for atom in atoms {
                    resolved.push(resolve_pattern_atom(atom, &constants, &params)?);
                }
                plan.module_chi
                    .entry(name.clone())
                    .or_default()
                    .extend(resolved);
            }
        }
    }
    Ok(plan)
}

fn parse_statements(text: &str) -> Result<Vec<Stmt>> {
    let mut cur = Cursor::new(tokenize(text, CommentStyle::Control)?);
    let mut out = Vec::new();
    while !cur.at_eof() {
        let stmt = if cur.keyword("const") {
            let name = cur.ident()?;
            cur.expect(Tok::Eq)?;
            Stmt::Const(name, cur.term()?)
        } else if cur.keyword("use") {
            let name = cur.ident()?;
            let args = if *cur.peek() == Tok::LParen {
                cur.arguments()?
            } else {
                Vec::new()
            };
            let range = if cur.keyword("for") {
                let var = cur.ident()?;
                if !cur.keyword("in") {
                    return Err(cur.unexpected("`in`"));
                }
                let lo = cur.term()?;
                cur.expect(Tok::DotDot)?;
                let hi = cur.term()?;
                let allow_empty = if cur.keyword("allow") {
                    if !cur.keyword("empty") {
                        return Err(cur.unexpected("`empty`"));
                    }
                    true
                } else {
                    false
                };
                Some((var, lo, hi, allow_empty))
            } else {
                None
            };
            Stmt::Use { name, args, range }
        } else if cur.keyword("domain") {
            let lo = cur.term()?;
            cur.expect(Tok::DotDot)?;
            Stmt::Domain(lo, cur.term()?)
        } else if cur.keyword("intensional") {
            Stmt::Intensional(cur.pred_atom()?)
        } else if cur.keyword("module") {
            let name = cur.ident()?;
            cur.expect(Tok::Colon)?;
            let mut atoms = vec![cur.pred_atom()?];
            while cur.eat(&Tok::Comma) {
                atoms.push(cur.pred_atom()?);
            }
            Stmt::Module(name, atoms)
        } else {
            return Err(cur.unexpected("`const`, `use`, `domain`, `intensional` or `module`"));
        };
        cur.expect(Tok::Dot)?;
        out.push(stmt);
    }
    Ok(out)
}

fn bind_constants(t: &Term, constants: &BTreeMap<String, i64>, keep: &BTreeSet<String>) -> Term {
    let values = constants
        .iter()
        .filter(|(k, _)| !keep.contains(*k))
        .map(|(k, v)| (k.clone(), Term::Num(*v)))
        .collect();
    t.replace_symbols(&values)
}

/// The first symbolic constant under arithmetic that is not in `allowed`.
fn stray_arithmetic_symbol(t: &Term, under: bool, allowed: &BTreeSet<String>) -> Option<String> {
    match t {
        Term::Sym(s) if under && !allowed.contains(s) => Some(s.clone()),
        Term::Num(_) | Term::Sym(_) | Term::Var(_) => None,
        Term::Arith(_, l, r) => stray_arithmetic_symbol(l, true, allowed)
            .or_else(|| stray_arithmetic_symbol(r, true, allowed)),
        Term::Func(_, args) => args
            .iter()
            .find_map(|a| stray_arithmetic_symbol(a, false, allowed)),
    }
}

fn resolve_int(t: &Term, constants: &BTreeMap<String, i64>) -> Result<i64> {
    let t = bind_constants(t, constants, &BTreeSet::new());
    if let Term::Sym(s) = &t {
        return Err(Error::UnboundConstant(s.clone()));
    }
    match resolve_value(&t, constants)? {
        Term::Num(n) => Ok(n),
        other => Err(Error::NotInteger(other.to_string())),
    }
}

/// Evaluates a `use` argument to a precomputed term. Lowercase identifiers
/// that are not constants denote themselves.
fn resolve_value(t: &Term, constants: &BTreeMap<String, i64>) -> Result<Term> {
    let t = bind_constants(t, constants, &BTreeSet::new());
    if let Some(s) = stray_arithmetic_symbol(&t, false, &BTreeSet::new()) {
        return Err(Error::UnboundConstant(s));
    }
    if !t.is_ground() {
        return Err(Error::NotGround(t.to_string()));
    }
    t.eval_ground()
}

fn resolve_pattern_atom(
    atom: &PredAtom,
    constants: &BTreeMap<String, i64>,
    placeholders: &BTreeSet<String>,
) -> Result<PredAtom> {
    let mut args = Vec::new();
    for a in &atom.args {
        let t = bind_constants(a, constants, placeholders);
        if let Some(s) = stray_arithmetic_symbol(&t, false, placeholders) {
            return Err(Error::UnboundConstant(s));
        }
        let t = t.simplify();
        let mut syms = BTreeSet::new();
        t.collect_symbols(&mut syms);
        if t.is_ground() && syms.is_disjoint(placeholders) {
            args.push(t.eval_ground()?);
        } else {
            args.push(t);
        }
    }
    Ok(PredAtom::new(atom.name.clone(), args))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_program;

    fn listing() -> ClingoProgram {
        parse_program("#program base. q(0,0). #program property(k). q(N,k+1) :- q(N-1,k).").unwrap()
    }

    #[test]
    fn ranges_expand_in_order() {
        let plan = parse_control(
            "const n = 100. use base. use property(k) for k in 0..n-1.",
            &listing(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(plan.specs.len(), 101);
        assert_eq!(plan.specs[0].name, "base");
        for (i, spec) in plan.specs[1..].iter().enumerate() {
            assert_eq!(spec.name, "property");
            assert_eq!(spec.valuation.get("k"), Some(&Term::num(i as i64)));
        }
    }

    #[test]
    fn overrides_shadow_constants() {
        let overrides = BTreeMap::from([("n".to_string(), 3)]);
        let plan = parse_control(
            "const n = 100. use property(k) for k in 0..n-1. domain 0..n+1.",
            &listing(),
            &overrides,
        )
        .unwrap();
        assert_eq!(plan.specs.len(), 3);
        assert_eq!(plan.domain, Some((0, 4)));
        assert_eq!(plan.constants["n"], 3);
    }

    #[test]
    fn positional_values() {
        let plan = parse_control("use property(7).", &listing(), &BTreeMap::new()).unwrap();
        assert_eq!(plan.specs.len(), 1);
        assert_eq!(plan.specs[0].placeholders, vec!["k".to_string()]);
        assert_eq!(plan.specs[0].valuation.get("k"), Some(&Term::num(7)));
    }

    #[test]
    fn validation_errors() {
        let r = listing();
        let none = BTreeMap::new();
        assert!(matches!(
            parse_control("use nope.", &r, &none),
            Err(Error::UnknownSubprogram { .. })
        ));
        assert!(matches!(
            parse_control("use property.", &r, &none),
            Err(Error::ArityMismatch { expected: 1, found: 0, .. })
        ));
        assert!(matches!(
            parse_control("use property(k) for k in 0..m.", &r, &none),
            Err(Error::UnboundConstant(c)) if c == "m"
        ));
        assert!(matches!(
            parse_control("use property(k) for k in 3..1.", &r, &none),
            Err(Error::EmptyRange { lo: 3, hi: 1 })
        ));
        let plan = parse_control("use property(k) for k in 3..1 allow empty.", &r, &none).unwrap();
        assert!(plan.specs.is_empty());
        assert!(matches!(
            parse_control("use property(a).", &r, &none),
            Err(Error::PlaceholderSort { .. })
        ));
        assert!(matches!(
            parse_control("domain 3..1.", &r, &none),
            Err(Error::InvalidDomain { .. })
        ));
        assert!(matches!(parse_control("use base", &r, &none), Err(Error::Parse(_))));
    }

    #[test]
    fn pattern_lines() {
        let plan = parse_control(
            "const n = 2. intensional q(X,n). intensional q(X,Y). module property: q(X,k+1).",
            &listing(),
            &BTreeMap::new(),
        )
        .unwrap();
        let global = plan.global_kappa.unwrap();
        assert_eq!(global[0].to_string(), "q(X,2)");
        assert_eq!(plan.module_chi["property"][0].to_string(), "q(X,k+1)");
    }

    #[test]
    fn symbolic_values_pass_through() {
        let r = parse_program("#program p(c). r(c).").unwrap();
        let plan = parse_control("use p(f(a)).", &r, &BTreeMap::new()).unwrap();
        assert_eq!(
            plan.specs[0].valuation.get("c"),
            Some(&Term::func("f", vec![Term::sym("a")]))
        );
    }
}
