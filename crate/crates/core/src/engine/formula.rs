//! Ground propositional formulas with classical and here-and-there
//! evaluation.

use std::fmt;

use crate::syntax::{Comparison, Literal, Atom, PredAtom};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula<A> {
    Bot,
    Top,
    Atom(A),
    /// A ground comparison; its truth value does not depend on the
    /// interpretation.
    Cmp(Comparison),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn not(f: Formula<A>) -> Formula<A> {
        Formula::implies(f, Formula::Bot)
    }

    pub fn implies(lhs: Formula<A>, rhs: Formula<A>) -> Formula<A> {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    fn cmp_value(c: &Comparison) -> bool {
        c.eval_ground().unwrap_or(false)
    }

    /// `I ⊨ F` where `there` decides the atoms of `I`.
    pub fn classical(&self, there: &impl Fn(&A) -> bool) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Top => true,
            Formula::Atom(a) => there(a),
            Formula::Cmp(c) => Self::cmp_value(c),
            Formula::And(fs) => fs.iter().all(|f| f.classical(there)),
            Formula::Or(fs) => fs.iter().any(|f| f.classical(there)),
            Formula::Implies(l, r) => !l.classical(there) || r.classical(there),
        }
    }

    /// `⟨H, I⟩ ⊨ht F`. Atoms are checked against `H` only; an implication
    /// additionally has to hold classically in `I`.
    pub fn ht(&self, here: &impl Fn(&A) -> bool, there: &impl Fn(&A) -> bool) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Top => true,
            Formula::Atom(a) => here(a),
            Formula::Cmp(c) => Self::cmp_value(c),
            Formula::And(fs) => fs.iter().all(|f| f.ht(here, there)),
            Formula::Or(fs) => fs.iter().any(|f| f.ht(here, there)),
            Formula::Implies(l, r) => {
                (!l.ht(here, there) || r.ht(here, there)) && self.classical(there)
            }
        }
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Formula<B> {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Top => Formula::Top,
            Formula::Atom(a) => Formula::Atom(f(a)),
            Formula::Cmp(c) => Formula::Cmp(c.clone()),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Implies(l, r) => Formula::implies(l.map_atoms(f), r.map_atoms(f)),
        }
    }

    /// Replaces ground comparisons by their truth values.
    pub fn fold_comparisons(&self) -> Formula<A>
    where
        A: Clone,
    {
        match self {
            Formula::Cmp(c) => {
                if Self::cmp_value(c) {
                    Formula::Top
                } else {
                    Formula::Bot
                }
            }
            Formula::And(fs) => Formula::And(fs.iter().map(Formula::fold_comparisons).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(Formula::fold_comparisons).collect()),
            Formula::Implies(l, r) => Formula::implies(l.fold_comparisons(), r.fold_comparisons()),
            other => other.clone(),
        }
    }
}

impl Formula<PredAtom> {
    /// The formula a ground body literal stands for: `A`, `¬A` or `¬¬A`.
    pub fn literal(lit: &Literal) -> Formula<PredAtom> {
        let mut f = match &lit.atom {
            Atom::Pred(a) => Formula::Atom(a.clone()),
            Atom::Cmp(c) => Formula::Cmp(c.clone()),
        };
        for _ in 0..lit.negations {
            f = Formula::not(f);
        }
        f
    }
}

impl<A: fmt::Display> fmt::Display for Formula<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, fs: &[Formula<A>], sep: &str, empty: &str| {
            if fs.is_empty() {
                return f.write_str(empty);
            }
            f.write_str("(")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{g}")?;
            }
            f.write_str(")")
        };
        match self {
            Formula::Bot => f.write_str("⊥"),
            Formula::Top => f.write_str("⊤"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Cmp(c) => write!(f, "{c}"),
            Formula::And(fs) => join(f, fs, " ∧ ", "⊤"),
            Formula::Or(fs) => join(f, fs, " ∨ ", "⊥"),
            Formula::Implies(l, r) if matches!(**r, Formula::Bot) => write!(f, "¬{l}"),
            Formula::Implies(l, r) => write!(f, "({l} → {r})"),
        }
    }
}
