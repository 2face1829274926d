//! Terms, atoms, rules and programs.

mod rule;
mod term;

pub use rule::{Atom, Comparison, Head, Literal, PredAtom, Predicate, Program, Relation, Rule, Signature};
pub use term::{ArithOp, Sort, Substitution, Term, Variable};
