//! Simple and parametric intensionality statements.
//!
//! A statement assigns every predicate a set of tuple patterns. A ground atom
//! is intensional when some pattern of its predicate matches its arguments,
//! and extensional (freely chosen) otherwise.

mod unify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use unify::{may_unify, pattern_match, patterns_unify, Unifier};

use crate::engine::Formula;
use crate::error::{Error, Result};
use crate::syntax::{Comparison, PredAtom, Predicate, Relation, Term};

/// Name of the canonical variable at 0-based position `i`.
pub fn position_var(i: usize) -> String {
    format!("X{}", i + 1)
}

/// A tuple of variables and precomputed terms in which no variable occurs
/// twice. Variables are renamed canonically by position, so `⟨X,1⟩` and
/// `⟨Y,1⟩` are the same pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<Term>);

impl Pattern {
    pub fn new(elems: Vec<Term>) -> Result<Pattern> {
        let shown = show_tuple(&elems);
        canonical(elems, &|t| t.is_precomputed(), "precomputed term").map_err(|reason| {
            Error::InvalidPattern {
                pattern: shown,
                reason,
            }
        }).map(Pattern)
    }

    pub fn all_variables(arity: usize) -> Pattern {
        Pattern((0..arity).map(|i| Term::var(position_var(i))).collect())
    }

    pub fn elems(&self) -> &[Term] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_all_variables(&self) -> bool {
        self.0.iter().all(Term::is_var)
    }

    /// Whether the pattern matches a tuple of precomputed terms.
    pub fn matches_ground(&self, args: &[Term]) -> bool {
        self.0.len() == args.len()
            && self
                .0
                .iter()
                .zip(args)
                .all(|(u, t)| u.is_var() || u == t)
    }

    /// Every instance of `other` is an instance of `self`.
    pub fn subsumes(&self, other: &Pattern) -> bool {
        self.arity() == other.arity()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(u, v)| u.is_var() || (!v.is_var() && u == v))
    }

    pub fn apply(&self, subst: &crate::syntax::Substitution) -> Vec<Term> {
        self.0.iter().map(|t| t.substitute(subst)).collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show_tuple(&self.0))
    }
}

fn show_tuple(elems: &[Term]) -> String {
    let inner: Vec<String> = elems.iter().map(Term::to_string).collect();
    format!("⟨{}⟩", inner.join(","))
}

/// Checks linearity and element shape, then renames variables by position.
fn canonical(
    elems: Vec<Term>,
    constant_ok: &dyn Fn(&Term) -> bool,
    what: &str,
) -> std::result::Result<Vec<Term>, String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(elems.len());
    for (i, t) in elems.into_iter().enumerate() {
        match &t {
            Term::Var(v) => {
                if !seen.insert(v.name.clone()) {
                    return Err(format!("variable {} occurs twice", v.name));
                }
                out.push(Term::var(position_var(i)));
            }
            _ if constant_ok(&t) => out.push(t),
            _ => return Err(format!("`{t}` is neither a variable nor a {what}")),
        }
    }
    Ok(out)
}

/// The formula `λ^p(X1,...,Xn)`: one disjunct per pattern, each a conjunction
/// of equalities `Xi = ti` over the pattern's non-variable positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaFormula {
    pub predicate: Predicate,
    /// Per disjunct, the constrained positions (0-based) and their values.
    pub disjuncts: Vec<Vec<(usize, Term)>>,
}

impl LambdaFormula {
    pub fn is_bot(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.disjuncts.iter().any(Vec::is_empty)
    }

    /// Classical truth at a tuple of precomputed terms.
    pub fn holds(&self, args: &[Term]) -> bool {
        self.disjuncts
            .iter()
            .any(|conj| conj.iter().all(|(i, t)| args.get(*i) == Some(t)))
    }

    /// `λ^p(t)` as a ground formula over comparison atoms.
    pub fn instantiate<A>(&self, args: &[Term]) -> Formula<A> {
        Formula::Or(
            self.disjuncts
                .iter()
                .map(|conj| {
                    Formula::And(
                        conj.iter()
                            .map(|(i, t)| {
                                Formula::Cmp(Comparison::new(Relation::Eq, args[*i].clone(), t.clone()))
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// `¬λ^p(X)` with the negation pushed inwards.
    pub fn negation(&self) -> String {
        if self.is_top() {
            return "⊥".into();
        }
        let items: Vec<String> = self
            .disjuncts
            .iter()
            .map(|conj| {
                let lits: Vec<String> = conj
                    .iter()
                    .map(|(i, t)| format!("{} ≠ {t}", position_var(*i)))
                    .collect();
                group(lits, " ∨ ", "⊥")
            })
            .collect();
        group(items, " ∧ ", "⊤")
    }
}

fn group(items: Vec<String>, sep: &str, empty: &str) -> String {
    match items.len() {
        0 => empty.to_string(),
        1 => items.into_iter().next().unwrap(),
        _ => format!("({})", items.join(sep)),
    }
}

impl fmt::Display for LambdaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .disjuncts
            .iter()
            .map(|conj| {
                let eqs: Vec<String> = conj
                    .iter()
                    .map(|(i, t)| format!("{} = {t}", position_var(*i)))
                    .collect();
                group(eqs, " ∧ ", "⊤")
            })
            .collect();
        if self.is_top() {
            return f.write_str("⊤");
        }
        f.write_str(&group(items, " ∨ ", "⊥"))
    }
}

/// `∀X (¬λ^p(X) → p(X) ∨ ¬p(X))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionalAxiom {
    pub lambda: LambdaFormula,
}

impl ExtensionalAxiom {
    pub fn predicate(&self) -> &Predicate {
        &self.lambda.predicate
    }

    /// Whether the choice is unconditional (`λ ≡ ⊥`).
    pub fn is_unconditional(&self) -> bool {
        self.lambda.is_bot()
    }

    /// Whether the axiom is vacuous (`λ ≡ ⊤`).
    pub fn is_vacuous(&self) -> bool {
        self.lambda.is_top()
    }

    fn atom(&self) -> String {
        let p = &self.lambda.predicate;
        if p.arity == 0 {
            return p.name.clone();
        }
        let vars: Vec<String> = (0..p.arity).map(position_var).collect();
        format!("{}({})", p.name, vars.join(","))
    }

    /// The axiom without its universal closure.
    pub fn body(&self) -> String {
        let atom = self.atom();
        format!("{} → ({atom} ∨ ¬{atom})", self.lambda.negation())
    }

    /// The ground instance for `atom`.
    pub fn instantiate(&self, atom: &PredAtom) -> Formula<PredAtom> {
        let a = Formula::Atom(atom.clone());
        Formula::implies(
            Formula::not(self.lambda.instantiate(&atom.args)),
            Formula::Or(vec![a.clone(), Formula::not(a)]),
        )
    }
}

impl fmt::Display for ExtensionalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.lambda.predicate.arity {
            write!(f, "∀{}", position_var(i))?;
        }
        if self.lambda.predicate.arity > 0 {
            write!(f, " ({})", self.body())
        } else {
            f.write_str(&self.body())
        }
    }
}

/// A simple intensionality statement `κ`. Predicates without an entry have
/// the empty pattern set and are purely extensional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntensionalityStatement {
    map: BTreeMap<Predicate, BTreeSet<Pattern>>,
}

static EMPTY: BTreeSet<Pattern> = BTreeSet::new();

impl IntensionalityStatement {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every listed predicate purely intensional.
    pub fn purely_intensional<'a>(preds: impl IntoIterator<Item = &'a Predicate>) -> Self {
        let mut k = Self::new();
        for p in preds {
            k.insert(p.clone(), Pattern::all_variables(p.arity))
                .expect("arity matches");
        }
        k
    }

    pub fn insert(&mut self, pred: Predicate, pattern: Pattern) -> Result<()> {
        if pred.arity != pattern.arity() {
            return Err(Error::InvalidPattern {
                pattern: pattern.to_string(),
                reason: format!("{pred} expects {} arguments", pred.arity),
            });
        }
        self.map.entry(pred).or_default().insert(pattern);
        Ok(())
    }

    /// Builds a statement from pattern atoms such as `q(X,1)`.
    pub fn from_atoms<'a>(atoms: impl IntoIterator<Item = &'a PredAtom>) -> Result<Self> {
        let mut k = Self::new();
        for a in atoms {
            k.insert(a.predicate(), Pattern::new(a.args.clone())?)?;
        }
        Ok(k)
    }

    pub fn patterns(&self, pred: &Predicate) -> &BTreeSet<Pattern> {
        self.map.get(pred).unwrap_or(&EMPTY)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Predicate, &BTreeSet<Pattern>)> {
        self.map.iter()
    }

    /// Predicates with at least one pattern.
    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> {
        self.map.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_purely_intensional(&self, pred: &Predicate) -> bool {
        self.patterns(pred).iter().any(Pattern::is_all_variables)
    }

    pub fn is_purely_extensional(&self, pred: &Predicate) -> bool {
        self.patterns(pred).is_empty()
    }

    pub fn lambda(&self, pred: &Predicate) -> LambdaFormula {
        LambdaFormula {
            predicate: pred.clone(),
            disjuncts: self
                .patterns(pred)
                .iter()
                .map(|u| {
                    u.elems()
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| !t.is_var())
                        .map(|(i, t)| (i, t.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Whether the precomputed atom is intensional.
    pub fn lambda_holds(&self, atom: &PredAtom) -> bool {
        self.patterns(&atom.predicate())
            .iter()
            .any(|u| u.matches_ground(&atom.args))
    }

    /// `EM(κ)`: one axiom per predicate of the signature.
    pub fn extensional_axioms<'a>(
        &self,
        signature: impl IntoIterator<Item = &'a Predicate>,
    ) -> Vec<ExtensionalAxiom> {
        signature
            .into_iter()
            .map(|p| ExtensionalAxiom {
                lambda: self.lambda(p),
            })
            .collect()
    }
}

impl fmt::Display for IntensionalityStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, us)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let shown: Vec<String> = us.iter().map(Pattern::to_string).collect();
            write!(f, "{p}: {{{}}}", shown.join(", "))?;
        }
        Ok(())
    }
}

/// A pattern `u_i` of module `module` that no single pattern of the global
/// statement covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequirementViolation {
    pub predicate: Predicate,
    pub module: usize,
    pub pattern: Pattern,
}

impl From<RequirementViolation> for Error {
    fn from(v: RequirementViolation) -> Error {
        Error::Requirement {
            predicate: v.predicate.to_string(),
            module: v.module,
            pattern: v.pattern.to_string(),
        }
    }
}

/// Decides validity of `∀X (λ_i^p(X) → λ^p(X))` for every predicate and
/// module. Over infinite sorts a pattern is covered by a finite union of
/// patterns exactly when one of them covers it alone, so the check is
/// pattern-by-pattern subsumption.
pub fn check_requirement(
    kappa: &IntensionalityStatement,
    module_kappas: &[IntensionalityStatement],
) -> std::result::Result<(), RequirementViolation> {
    for (i, ki) in module_kappas.iter().enumerate() {
        for (p, patterns) in ki.iter() {
            let global = kappa.patterns(p);
            for u in patterns {
                if !global.iter().any(|g| g.subsumes(u)) {
                    return Err(RequirementViolation {
                        predicate: p.clone(),
                        module: i,
                        pattern: u.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A parametric intensionality statement: tuple elements may additionally be
/// ground terms over placeholders, numerals and arithmetic, such as `k+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParametricIntensionality {
    pub placeholders: BTreeSet<String>,
    map: BTreeMap<Predicate, BTreeSet<Vec<Term>>>,
}

impl ParametricIntensionality {
    pub fn new(placeholders: BTreeSet<String>) -> Self {
        ParametricIntensionality {
            placeholders,
            map: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, pred: Predicate, tuple: Vec<Term>) -> Result<()> {
        if pred.arity != tuple.len() {
            return Err(Error::InvalidPattern {
                pattern: show_tuple(&tuple),
                reason: format!("{pred} expects {} arguments", pred.arity),
            });
        }
        let shown = show_tuple(&tuple);
        let tuple = canonical(tuple, &|t| t.is_ground(), "ground term").map_err(|reason| {
            Error::InvalidPattern {
                pattern: shown,
                reason,
            }
        })?;
        self.map.entry(pred).or_default().insert(tuple);
        Ok(())
    }

    pub fn from_atoms<'a>(
        placeholders: BTreeSet<String>,
        atoms: impl IntoIterator<Item = &'a PredAtom>,
    ) -> Result<Self> {
        let mut chi = Self::new(placeholders);
        for a in atoms {
            chi.insert(a.predicate(), a.args.clone())?;
        }
        Ok(chi)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Predicate, &BTreeSet<Vec<Term>>)> {
        self.map.iter()
    }

    /// `χΘ`: substitutes the placeholders and simplifies every element.
    pub fn instantiate(&self, theta: &BTreeMap<String, Term>) -> Result<IntensionalityStatement> {
        let mut kappa = IntensionalityStatement::new();
        for (p, tuples) in &self.map {
            for tuple in tuples {
                let mut elems = Vec::with_capacity(tuple.len());
                for t in tuple {
                    if t.is_var() {
                        elems.push(t.clone());
                        continue;
                    }
                    let mut syms = BTreeSet::new();
                    t.collect_symbols(&mut syms);
                    if let Some(missing) = syms
                        .iter()
                        .find(|s| self.placeholders.contains(*s) && !theta.contains_key(*s))
                    {
                        return Err(Error::UnboundPlaceholder(missing.clone()));
                    }
                    let bound: BTreeMap<String, Term> = theta
                        .iter()
                        .filter(|(k, _)| self.placeholders.contains(*k))
                        .map(|(k, v)| (k.clone(), v.clone()))
                        .collect();
                    elems.push(t.replace_symbols(&bound).simplify().eval_ground()?);
                }
                kappa.insert(p.clone(), Pattern::new(elems)?)?;
            }
        }
        Ok(kappa)
    }
}

impl fmt::Display for ParametricIntensionality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, ts)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let shown: Vec<String> = ts.iter().map(|t| show_tuple(t)).collect();
            write!(f, "{p}: {{{}}}", shown.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Predicate {
        Predicate::new("q", 2)
    }

    fn pat(a: Term, b: Term) -> Pattern {
        Pattern::new(vec![a, b]).unwrap()
    }

    fn kappa1() -> IntensionalityStatement {
        let mut k = IntensionalityStatement::new();
        k.insert(q(), pat(Term::var("X"), Term::num(1))).unwrap();
        k.insert(q(), pat(Term::var("X"), Term::num(2))).unwrap();
        k
    }

    fn qa(a: i64, b: i64) -> PredAtom {
        PredAtom::new("q", vec![Term::num(a), Term::num(b)])
    }

    #[test]
    fn patterns_are_linear() {
        assert!(Pattern::new(vec![Term::var("X"), Term::var("X")]).is_err());
        assert!(Pattern::new(vec![Term::add(Term::num(1), Term::num(1))]).is_err());
        assert_eq!(
            pat(Term::var("Y"), Term::num(1)),
            pat(Term::var("X"), Term::num(1))
        );
    }

    #[test]
    fn lambda_of_kappa1() {
        let k = kappa1();
        assert_eq!(k.lambda(&q()).to_string(), "(X2 = 1 ∨ X2 = 2)");
        assert_eq!(IntensionalityStatement::new().lambda(&q()).to_string(), "⊥");
        let all = IntensionalityStatement::purely_intensional([&q()]);
        assert_eq!(all.lambda(&q()).to_string(), "⊤");
        assert!(all.is_purely_intensional(&q()));
    }

    #[test]
    fn lambda_holds_on_ground_atoms() {
        let k = kappa1();
        assert!(k.lambda_holds(&qa(7, 1)));
        assert!(!k.lambda_holds(&qa(1, 3)));
        assert!(!k.lambda_holds(&qa(0, 0)));
    }

    #[test]
    fn extensional_axiom_of_kappa1() {
        let axioms = kappa1().extensional_axioms([&q()]);
        assert_eq!(axioms.len(), 1);
        assert_eq!(
            axioms[0].body(),
            "(X2 ≠ 1 ∧ X2 ≠ 2) → (q(X1,X2) ∨ ¬q(X1,X2))"
        );
        assert_eq!(
            axioms[0].to_string(),
            "∀X1∀X2 ((X2 ≠ 1 ∧ X2 ≠ 2) → (q(X1,X2) ∨ ¬q(X1,X2)))"
        );
        let all = IntensionalityStatement::purely_intensional([&q()]);
        assert!(all.extensional_axioms([&q()])[0].is_vacuous());
        let none = IntensionalityStatement::new();
        let ax = &none.extensional_axioms([&q()])[0];
        assert!(ax.is_unconditional());
        assert_eq!(ax.body(), "⊤ → (q(X1,X2) ∨ ¬q(X1,X2))");
    }

    #[test]
    fn requirement_by_subsumption() {
        let global = IntensionalityStatement::purely_intensional([&q()]);
        let mut k0 = IntensionalityStatement::new();
        k0.insert(q(), pat(Term::num(0), Term::num(0))).unwrap();
        assert!(check_requirement(&global, &[k0, kappa1()]).is_ok());

        let mut g = IntensionalityStatement::new();
        g.insert(q(), pat(Term::var("X"), Term::num(1))).unwrap();
        let mut ki = IntensionalityStatement::new();
        ki.insert(q(), pat(Term::var("X"), Term::num(2))).unwrap();
        let v = check_requirement(&g, &[ki]).unwrap_err();
        assert_eq!(v.module, 0);
        assert_eq!(v.pattern, pat(Term::var("X"), Term::num(2)));

        let mut ki = IntensionalityStatement::new();
        ki.insert(q(), pat(Term::num(0), Term::num(1))).unwrap();
        assert!(check_requirement(&kappa1(), &[ki]).is_ok());
    }

    #[test]
    fn instantiate_parametric_statement() {
        let chi = ParametricIntensionality::from_atoms(
            BTreeSet::from(["k".to_string()]),
            [&PredAtom::new("q", vec![Term::var("X"), Term::add(Term::sym("k"), Term::num(1))])],
        )
        .unwrap();
        let k1 = chi
            .instantiate(&BTreeMap::from([("k".to_string(), Term::num(1))]))
            .unwrap();
        assert_eq!(k1.to_string(), "q/2: {⟨X1,2⟩}");
        let k0 = chi
            .instantiate(&BTreeMap::from([("k".to_string(), Term::num(0))]))
            .unwrap();
        assert_eq!(k0.to_string(), "q/2: {⟨X1,1⟩}");
        assert!(matches!(
            chi.instantiate(&BTreeMap::new()),
            Err(Error::UnboundPlaceholder(_))
        ));
    }

    #[test]
    fn instantiate_without_placeholders_is_identity() {
        let chi = ParametricIntensionality::from_atoms(
            BTreeSet::new(),
            [&PredAtom::new("q", vec![Term::num(0), Term::num(0)])],
        )
        .unwrap();
        let k = chi
            .instantiate(&BTreeMap::from([("k".to_string(), Term::num(5))]))
            .unwrap();
        assert_eq!(k.to_string(), "q/2: {⟨0,0⟩}");
    }
}
