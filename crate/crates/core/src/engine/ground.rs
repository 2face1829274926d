use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;

use super::domain::Domain;
use super::formula::Formula;
use crate::error::{Error, Result};
use crate::instrument;
use crate::intensional::IntensionalityStatement;
use crate::syntax::{Atom, Head, PredAtom, Predicate, Program, Rule, Sort, Substitution, Term};

/// A rule without variables, arithmetic or comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: Option<PredAtom>,
    pub pos: Vec<PredAtom>,
    pub neg: Vec<PredAtom>,
    pub negneg: Vec<PredAtom>,
}

impl GroundRule {
    pub fn atoms(&self) -> impl Iterator<Item = &PredAtom> {
        self.head
            .iter()
            .chain(&self.pos)
            .chain(&self.neg)
            .chain(&self.negneg)
    }

    /// Whether the body holds in the interpretation given by `truth`.
    pub fn body_holds(&self, truth: &impl Fn(&PredAtom) -> bool) -> bool {
        self.pos.iter().all(truth)
            && self.neg.iter().all(|a| !truth(a))
            && self.negneg.iter().all(truth)
    }

    /// `Body → Head` as a formula, with `not` read as `¬`.
    pub fn to_formula(&self) -> Formula<PredAtom> {
        let mut body: Vec<Formula<PredAtom>> = self.pos.iter().cloned().map(Formula::Atom).collect();
        body.extend(self.neg.iter().map(|a| Formula::not(Formula::Atom(a.clone()))));
        body.extend(
            self.negneg
                .iter()
                .map(|a| Formula::not(Formula::not(Formula::Atom(a.clone())))),
        );
        let head = match &self.head {
            Some(a) => Formula::Atom(a.clone()),
            None => Formula::Bot,
        };
        Formula::implies(Formula::And(body), head)
    }
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
        }
        let lits: Vec<String> = self
            .pos
            .iter()
            .map(PredAtom::to_string)
            .chain(self.neg.iter().map(|a| format!("not {a}")))
            .chain(self.negneg.iter().map(|a| format!("not not {a}")))
            .collect();
        if !lits.is_empty() || self.head.is_none() {
            if self.head.is_some() {
                f.write_str(" ")?;
            }
            write!(f, ":- {}", lits.join(", "))?;
        }
        f.write_str(".")
    }
}

/// The finite image of a program over a domain. `choice_atoms` are the
/// extensional atoms over the domain, each of which the extensional axioms
/// leave free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    pub choice_atoms: BTreeSet<PredAtom>,
}

impl GroundProgram {
    pub fn heads(&self) -> BTreeSet<PredAtom> {
        self.rules.iter().filter_map(|r| r.head.clone()).collect()
    }

    /// Ground heads together with the choice atoms.
    pub fn relevant_base(&self) -> BTreeSet<PredAtom> {
        let mut base = self.heads();
        base.extend(self.choice_atoms.iter().cloned());
        base
    }
}

/// Grounds every rule over the domain. Integer variables range over the
/// numerals of the domain, general variables over its general terms.
/// Instances with a false comparison are deleted, true comparisons are
/// dropped, and instances with a positive body atom outside the domain are
/// deleted.
pub fn ground(pi: &Program, dom: &Domain) -> Result<GroundProgram> {
    instrument::semantic();
    let mut rules = IndexSet::new();
    for rule in pi.rules() {
        ground_rule(rule, dom, &mut |g| {
            rules.insert(g);
        })?;
    }
    Ok(GroundProgram {
        rules: rules.into_iter().collect(),
        choice_atoms: BTreeSet::new(),
    })
}

/// [`ground`] plus the extensional atoms of `signature` over the domain.
pub fn ground_with_choices(
    pi: &Program,
    kappa: &IntensionalityStatement,
    signature: &BTreeSet<Predicate>,
    dom: &Domain,
) -> Result<GroundProgram> {
    let mut g = ground(pi, dom)?;
    g.choice_atoms = extensional_atoms(kappa, signature, dom);
    Ok(g)
}

pub fn extensional_atoms(
    kappa: &IntensionalityStatement,
    signature: &BTreeSet<Predicate>,
    dom: &Domain,
) -> BTreeSet<PredAtom> {
    let mut out = BTreeSet::new();
    for p in signature {
        if kappa.is_purely_intensional(p) {
            continue;
        }
        out.extend(dom.atoms(p).into_iter().filter(|a| !kappa.lambda_holds(a)));
    }
    out
}

/// Variables that must be bound by a positive body atom: general-sorted ones.
fn check_safety(rule: &Rule) -> Result<()> {
    let mut bound = BTreeSet::new();
    for lit in &rule.body {
        if let Some(a) = lit.positive_pred() {
            for t in &a.args {
                t.collect_variables(&mut bound);
            }
        }
    }
    for v in rule.sorted_variables() {
        if v.sort == Sort::General && !bound.contains(&v.name) {
            return Err(Error::Unsafe {
                rule: rule.to_string(),
                var: v.name,
            });
        }
    }
    Ok(())
}

fn ground_rule(rule: &Rule, dom: &Domain, emit: &mut impl FnMut(GroundRule)) -> Result<()> {
    check_safety(rule)?;
    let vars = rule.sorted_variables();
    let position: std::collections::BTreeMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.name.as_str(), i + 1))
        .collect();
    // A literal is checked as soon as its last variable is bound.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); vars.len() + 1];
    for (i, lit) in rule.body.iter().enumerate() {
        let mut vs = BTreeSet::new();
        match &lit.atom {
            Atom::Pred(a) => a.args.iter().for_each(|t| t.collect_variables(&mut vs)),
            Atom::Cmp(c) => {
                c.lhs.collect_variables(&mut vs);
                c.rhs.collect_variables(&mut vs);
            }
        }
        let at = vs.iter().map(|v| position[v.as_str()]).max().unwrap_or(0);
        ready[at].push(i);
    }
    let choices: Vec<Vec<Term>> = vars
        .iter()
        .map(|v| match v.sort {
            Sort::Integer => dom.int_range().map(Term::Num).collect(),
            Sort::General => dom.general_terms().iter().cloned().collect(),
        })
        .collect();
    let mut subst = Substitution::new();
    bind(rule, dom, &vars, &choices, &ready, 0, &mut subst, emit)
}

#[allow(clippy::too_many_arguments)]
fn bind(
    rule: &Rule,
    dom: &Domain,
    vars: &[crate::syntax::Variable],
    choices: &[Vec<Term>],
    ready: &[Vec<usize>],
    depth: usize,
    subst: &mut Substitution,
    emit: &mut impl FnMut(GroundRule),
) -> Result<()> {
    for &i in &ready[depth] {
        if !literal_survives(rule, i, subst, dom)? {
            return Ok(());
        }
    }
    if depth == vars.len() {
        emit(instance(rule, subst)?);
        return Ok(());
    }
    for value in &choices[depth] {
        subst.insert(vars[depth].name.clone(), value.clone());
        bind(rule, dom, vars, choices, ready, depth + 1, subst, emit)?;
    }
    subst.remove(&vars[depth].name);
    Ok(())
}

fn literal_survives(rule: &Rule, i: usize, subst: &Substitution, dom: &Domain) -> Result<bool> {
    let lit = &rule.body[i];
    match &lit.atom {
        Atom::Cmp(c) => {
            let value = c.substitute(subst).eval_ground()?;
            Ok(if lit.negations % 2 == 0 { value } else { !value })
        }
        Atom::Pred(a) => {
            let a = a.substitute(subst).eval_ground()?;
            Ok(lit.negations > 0 || dom.contains_atom(&a))
        }
    }
}

fn instance(rule: &Rule, subst: &Substitution) -> Result<GroundRule> {
    let head = match &rule.head {
        Head::Atom(a) => Some(a.substitute(subst).eval_ground()?),
        Head::Falsity => None,
    };
    let mut g = GroundRule {
        head,
        pos: Vec::new(),
        neg: Vec::new(),
        negneg: Vec::new(),
    };
    for lit in &rule.body {
        if let Atom::Pred(a) = &lit.atom {
            let a = a.substitute(subst).eval_ground()?;
            match lit.negations {
                0 => g.pos.push(a),
                1 => g.neg.push(a),
                _ => g.negneg.push(a),
            }
        }
    }
    Ok(g)
}
