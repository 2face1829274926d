use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;

use super::term::{write_list, Sort, Substitution, Term, Variable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Predicate {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// `p(t1,...,tn)`. Ordered by name, arity, then arguments in term order,
/// which is the order answer sets are printed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredAtom {
    pub name: String,
    pub args: Vec<Term>,
}

impl PredAtom {
    pub fn new(name: impl Into<String>, args: Vec<Term>) -> Self {
        PredAtom {
            name: name.into(),
            args,
        }
    }

    pub fn predicate(&self) -> Predicate {
        Predicate::new(self.name.clone(), self.args.len())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn is_precomputed(&self) -> bool {
        self.args.iter().all(Term::is_precomputed)
    }

    pub fn substitute(&self, subst: &Substitution) -> PredAtom {
        PredAtom::new(
            self.name.clone(),
            self.args.iter().map(|a| a.substitute(subst)).collect(),
        )
    }

    pub fn simplify(&self) -> PredAtom {
        PredAtom::new(self.name.clone(), self.args.iter().map(Term::simplify).collect())
    }

    pub fn eval_ground(&self) -> Result<PredAtom> {
        Ok(PredAtom::new(
            self.name.clone(),
            self.args.iter().map(Term::eval_ground).collect::<Result<_>>()?,
        ))
    }
}

impl Ord for PredAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name
            .cmp(&other.name)
            .then(self.args.len().cmp(&other.args.len()))
            .then_with(|| self.args.cmp(&other.args))
    }
}

impl PartialOrd for PredAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PredAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_list(f, &self.args)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ne => ord != Ordering::Equal,
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparison {
    pub rel: Relation,
    pub lhs: Term,
    pub rhs: Term,
}

impl Comparison {
    pub fn new(rel: Relation, lhs: Term, rhs: Term) -> Self {
        Comparison { rel, lhs, rhs }
    }

    /// Truth value of a ground comparison: both sides are evaluated and the
    /// values compared in the term order.
    pub fn eval_ground(&self) -> Result<bool> {
        let l = self.lhs.eval_ground()?;
        let r = self.rhs.eval_ground()?;
        Ok(self.rel.holds(l.compare(&r)?))
    }

    pub fn substitute(&self, subst: &Substitution) -> Comparison {
        Comparison::new(self.rel, self.lhs.substitute(subst), self.rhs.substitute(subst))
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Pred(PredAtom),
    Cmp(Comparison),
}

impl Atom {
    fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Pred(a) => a.args.iter().collect(),
            Atom::Cmp(c) => vec![&c.lhs, &c.rhs],
        }
    }

    fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Pred(a) => Atom::Pred(PredAtom::new(a.name.clone(), a.args.iter().map(&mut *f).collect())),
            Atom::Cmp(c) => Atom::Cmp(Comparison::new(c.rel, f(&c.lhs), f(&c.rhs))),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred(a) => a.fmt(f),
            Atom::Cmp(c) => c.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    /// Number of `not` in front of the atom: 0, 1 or 2.
    pub negations: u8,
}

impl Literal {
    pub fn new(atom: Atom, negations: u8) -> Result<Self> {
        if negations > 2 {
            return Err(Error::MalformedRule {
                rule: atom.to_string(),
                reason: format!("{negations} negations in front of an atom"),
            });
        }
        Ok(Literal { atom, negations })
    }

    pub fn pos(atom: PredAtom) -> Self {
        Literal {
            atom: Atom::Pred(atom),
            negations: 0,
        }
    }

    pub fn neg(atom: PredAtom) -> Self {
        Literal {
            atom: Atom::Pred(atom),
            negations: 1,
        }
    }

    pub fn negneg(atom: PredAtom) -> Self {
        Literal {
            atom: Atom::Pred(atom),
            negations: 2,
        }
    }

    pub fn cmp(rel: Relation, lhs: Term, rhs: Term) -> Self {
        Literal {
            atom: Atom::Cmp(Comparison::new(rel, lhs, rhs)),
            negations: 0,
        }
    }

    /// The atom, if this is a nonnegated predicate atom.
    pub fn positive_pred(&self) -> Option<&PredAtom> {
        match (&self.atom, self.negations) {
            (Atom::Pred(a), 0) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.negations {
            f.write_str("not ")?;
        }
        self.atom.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Atom(PredAtom),
    Falsity,
}

impl Head {
    pub fn atom(&self) -> Option<&PredAtom> {
        match self {
            Head::Atom(a) => Some(a),
            Head::Falsity => None,
        }
    }
}

/// `Head ← Body`, read as the universal closure of the implication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<Literal>,
}

impl Rule {
    /// Builds a rule and assigns sorts: a variable is integer-sorted iff it
    /// occurs somewhere in the rule as an operand of arithmetic.
    pub fn new(head: Head, body: Vec<Literal>) -> Result<Rule> {
        let draft = Rule { head, body };
        let mut int_vars = BTreeSet::new();
        for t in draft.terms() {
            collect_arith_context(t, false, &mut int_vars, &mut BTreeSet::new())
                .map_err(|reason| Error::MalformedRule {
                    rule: draft.to_string(),
                    reason,
                })?;
        }
        Ok(draft.map_terms(&mut |t| resort(t, &int_vars)))
    }

    pub fn fact(atom: PredAtom) -> Result<Rule> {
        Rule::new(Head::Atom(atom), Vec::new())
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty() && matches!(self.head, Head::Atom(_))
    }

    pub fn terms(&self) -> Vec<&Term> {
        let mut out: Vec<&Term> = match &self.head {
            Head::Atom(a) => a.args.iter().collect(),
            Head::Falsity => Vec::new(),
        };
        for lit in &self.body {
            out.extend(lit.atom.terms());
        }
        out
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Rule {
        let head = match &self.head {
            Head::Atom(a) => Head::Atom(PredAtom::new(a.name.clone(), a.args.iter().map(&mut *f).collect())),
            Head::Falsity => Head::Falsity,
        };
        let body = self
            .body
            .iter()
            .map(|l| Literal {
                atom: l.atom.map_terms(f),
                negations: l.negations,
            })
            .collect();
        Rule { head, body }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            t.collect_variables(&mut out);
        }
        out
    }

    /// Variables with their assigned sorts, in order of first occurrence.
    pub fn sorted_variables(&self) -> Vec<Variable> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in self.terms() {
            visit_vars(t, &mut |v| {
                if seen.insert(v.name.clone()) {
                    out.push(v.clone());
                }
            });
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            t.collect_symbols(&mut out);
        }
        out
    }

    /// Symbolic constants that occur as operands of arithmetic in this rule.
    pub fn arithmetic_symbols(&self) -> BTreeSet<String> {
        let mut syms = BTreeSet::new();
        for t in self.terms() {
            // Rule::new already rejected the only possible conflict.
            let _ = collect_arith_context(t, false, &mut BTreeSet::new(), &mut syms);
        }
        syms
    }

    /// The sort of `t` in the context of this rule.
    pub fn sort_of(&self, t: &Term) -> Sort {
        match t {
            Term::Var(v) => self
                .sorted_variables()
                .into_iter()
                .find(|w| w.name == v.name)
                .map_or(v.sort, |w| w.sort),
            Term::Sym(s) if self.arithmetic_symbols().contains(s) => Sort::Integer,
            _ => t.sort(),
        }
    }

    pub fn predicates(&self) -> BTreeSet<Predicate> {
        let mut out = BTreeSet::new();
        if let Head::Atom(a) = &self.head {
            out.insert(a.predicate());
        }
        for lit in &self.body {
            if let Atom::Pred(a) = &lit.atom {
                out.insert(a.predicate());
            }
        }
        out
    }

    pub fn substitute(&self, subst: &Substitution) -> Rule {
        self.map_terms(&mut |t| t.substitute(subst))
    }
}

fn visit_vars(t: &Term, f: &mut impl FnMut(&Variable)) {
    match t {
        Term::Var(v) => f(v),
        Term::Num(_) | Term::Sym(_) => {}
        Term::Arith(_, l, r) => {
            visit_vars(l, f);
            visit_vars(r, f);
        }
        Term::Func(_, args) => args.iter().for_each(|a| visit_vars(a, f)),
    }
}

fn collect_arith_context(
    t: &Term,
    under_arith: bool,
    vars: &mut BTreeSet<String>,
    syms: &mut BTreeSet<String>,
) -> std::result::Result<(), String> {
    match t {
        Term::Num(_) => Ok(()),
        Term::Var(v) => {
            if under_arith {
                vars.insert(v.name.clone());
            }
            Ok(())
        }
        Term::Sym(s) => {
            if under_arith {
                syms.insert(s.clone());
            }
            Ok(())
        }
        Term::Arith(_, l, r) => {
            collect_arith_context(l, true, vars, syms)?;
            collect_arith_context(r, true, vars, syms)
        }
        Term::Func(name, args) => {
            if under_arith {
                return Err(format!(
                    "function term {t} is an operand of arithmetic but {name} is general-sorted"
                ));
            }
            args.iter()
                .try_for_each(|a| collect_arith_context(a, false, vars, syms))
        }
    }
}

fn resort(t: &Term, int_vars: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(v) => Term::Var(Variable {
            name: v.name.clone(),
            sort: if int_vars.contains(&v.name) {
                Sort::Integer
            } else {
                Sort::General
            },
        }),
        Term::Num(_) | Term::Sym(_) => t.clone(),
        Term::Arith(op, l, r) => Term::arith(*op, resort(l, int_vars), resort(r, int_vars)),
        Term::Func(name, args) => {
            Term::Func(name.clone(), args.iter().map(|a| resort(a, int_vars)).collect())
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Head::Atom(a) = &self.head {
            a.fmt(f)?;
            if !self.body.is_empty() {
                f.write_str(" ")?;
            }
        }
        if !self.body.is_empty() || self.head == Head::Falsity {
            f.write_str(":-")?;
            for (i, lit) in self.body.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { ", " })?;
                lit.fmt(f)?;
            }
        }
        f.write_str(".")
    }
}

/// The symbols a set of rules defines implicitly. Numerals are always part of
/// a signature and are not listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeSet<Predicate>,
    pub constants: BTreeSet<String>,
    pub functions: BTreeSet<(String, usize)>,
}

impl Signature {
    pub fn extend(&mut self, other: &Signature) {
        self.predicates.extend(other.predicates.iter().cloned());
        self.constants.extend(other.constants.iter().cloned());
        self.functions.extend(other.functions.iter().cloned());
    }
}

/// A set of rules. Insertion order is kept for display; equality is set
/// equality.
#[derive(Clone, Debug, Default)]
pub struct Program {
    rules: IndexSet<Rule>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.rules.len() == other.rules.len() && self.rules.iter().all(|r| other.rules.contains(r))
    }
}

impl Eq for Program {}

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    pub fn insert(&mut self, rule: Rule) -> bool {
        self.rules.insert(rule)
    }

    pub fn extend(&mut self, other: &Program) {
        self.rules.extend(other.rules.iter().cloned());
    }

    pub fn rules(&self) -> impl ExactSizeIterator<Item = &Rule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for rule in &self.rules {
            sig.predicates.extend(rule.predicates());
            for t in rule.terms() {
                collect_signature(t, &mut sig);
            }
        }
        sig
    }

    pub fn predicates(&self) -> BTreeSet<Predicate> {
        self.rules.iter().flat_map(Rule::predicates).collect()
    }

    /// Whether any body literal carries `not`.
    pub fn has_negation(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.body.iter().any(|l| l.negations > 0))
    }

    /// Every numeral occurring in the program, including those folded out of
    /// ground arithmetic.
    pub fn numerals(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for rule in &self.rules {
            for t in rule.terms() {
                collect_numerals(&t.simplify(), &mut out);
            }
        }
        out
    }
}

fn collect_signature(t: &Term, sig: &mut Signature) {
    match t {
        Term::Num(_) | Term::Var(_) => {}
        Term::Sym(s) => {
            sig.constants.insert(s.clone());
        }
        Term::Arith(_, l, r) => {
            collect_signature(l, sig);
            collect_signature(r, sig);
        }
        Term::Func(name, args) => {
            sig.functions.insert((name.clone(), args.len()));
            args.iter().for_each(|a| collect_signature(a, sig));
        }
    }
}

fn collect_numerals(t: &Term, out: &mut BTreeSet<i64>) {
    match t {
        Term::Num(n) => {
            out.insert(*n);
        }
        Term::Sym(_) | Term::Var(_) => {}
        Term::Arith(_, l, r) => {
            collect_numerals(l, out);
            collect_numerals(r, out);
        }
        Term::Func(_, args) => args.iter().for_each(|a| collect_numerals(a, out)),
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program {
            rules: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
