use crate::instrument;
use crate::syntax::{Sort, Substitution, Term, Variable};

use super::Pattern;

/// One-way matching: a substitution `θ` for the pattern's variables with
/// `uθ = [t]`, where `[t]` simplifies every element of `t`.
pub fn pattern_match(u: &Pattern, t: &[Term]) -> Option<Substitution> {
    instrument::unification();
    if u.arity() != t.len() {
        return None;
    }
    let mut theta = Substitution::new();
    for (ui, ti) in u.elems().iter().zip(t) {
        let ti = ti.simplify();
        match ui {
            Term::Var(v) => {
                theta.insert(v.name.clone(), ti);
            }
            _ if *ui == ti => {}
            _ => return None,
        }
    }
    Some(theta)
}

/// Substitutions for the two sides of a unification problem, after renaming
/// the second pattern apart from the first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Unifier {
    pub left: Substitution,
    pub right: Substitution,
}

/// Unifies two patterns, implicitly renaming them apart. Patterns are linear
/// and their constants precomputed, so the problem decomposes by position.
pub fn patterns_unify(u1: &Pattern, u2: &Pattern) -> Option<Unifier> {
    instrument::unification();
    if u1.arity() != u2.arity() {
        return None;
    }
    let mut theta = Unifier::default();
    for (a, b) in u1.elems().iter().zip(u2.elems()) {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                theta.right.insert(y.name.clone(), Term::var(x.name.clone()));
            }
            (Term::Var(x), t) => {
                theta.left.insert(x.name.clone(), t.clone());
            }
            (t, Term::Var(y)) => {
                theta.right.insert(y.name.clone(), t.clone());
            }
            _ if a == b => {}
            _ => return None,
        }
    }
    Some(theta)
}

const RENAMED: &str = "?";

/// Whether some substitution can make the rule tuple `t` (after
/// simplification) equal to an instance of `u`.
///
/// This is syntactic unification with one relaxation: an arithmetic term
/// that still contains variables denotes some unknown integer, so it may
/// equal any numeral or any other such term. Integer-sorted variables never
/// unify with symbolic constants or function terms.
pub fn may_unify(u: &Pattern, t: &[Term]) -> bool {
    instrument::unification();
    if u.arity() != t.len() {
        return false;
    }
    let mut subst = Substitution::new();
    u.elems().iter().zip(t).all(|(ui, ti)| {
        let ui = rename(ui);
        unify(&ui, &ti.simplify(), &mut subst)
    })
}

fn rename(t: &Term) -> Term {
    match t {
        Term::Var(v) => Term::Var(Variable {
            name: format!("{RENAMED}{}", v.name),
            sort: v.sort,
        }),
        _ => t.clone(),
    }
}

fn walk(t: &Term, s: &Substitution) -> Term {
    let mut cur = t.clone();
    while let Term::Var(v) = &cur {
        match s.get(&v.name) {
            Some(next) => cur = next.clone(),
            None => break,
        }
    }
    cur
}

fn occurs(name: &str, t: &Term, s: &Substitution) -> bool {
    match walk(t, s) {
        Term::Var(v) => v.name == name,
        Term::Num(_) | Term::Sym(_) => false,
        Term::Arith(_, l, r) => occurs(name, &l, s) || occurs(name, &r, s),
        Term::Func(_, args) => args.iter().any(|a| occurs(name, a, s)),
    }
}

fn integer_valued(t: &Term) -> bool {
    matches!(t, Term::Num(_) | Term::Arith(..))
        || matches!(t, Term::Var(v) if v.sort == Sort::Integer)
}

fn unify(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    let (a, b) = (walk(a, s), walk(b, s));
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x.name == y.name => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if x.sort == Sort::Integer && !integer_valued(t) && !t.is_var() {
                return false;
            }
            if occurs(&x.name, t, s) {
                return false;
            }
            s.insert(x.name.clone(), t.clone());
            true
        }
        (Term::Arith(..), other) | (other, Term::Arith(..)) => integer_valued(other),
        (Term::Func(f, xs), Term::Func(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify(x, y, s))
        }
        _ => a == b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(a: Term, b: Term) -> Pattern {
        Pattern::new(vec![a, b]).unwrap()
    }

    #[test]
    fn match_simplifies_the_tuple() {
        let u = pat(Term::var("X"), Term::num(1));
        let theta = pattern_match(&u, &[Term::int_var("N"), Term::add(Term::num(0), Term::num(1))]).unwrap();
        assert_eq!(theta.len(), 1);
        assert_eq!(theta["X1"], Term::int_var("N"));

        let ground = pat(Term::num(0), Term::num(0));
        assert_eq!(pattern_match(&ground, &[Term::num(0), Term::num(0)]), Some(Substitution::new()));

        let u3 = pat(Term::var("X"), Term::num(3));
        assert!(pattern_match(&u3, &[Term::int_var("N"), Term::add(Term::num(0), Term::num(1))]).is_none());
    }

    #[test]
    fn unify_positionwise() {
        let u1 = pat(Term::var("X"), Term::num(1));
        let u2 = pat(Term::num(0), Term::var("Y"));
        let th = patterns_unify(&u1, &u2).unwrap();
        assert_eq!(u1.apply(&th.left), u2.apply(&th.right));
        assert_eq!(u1.apply(&th.left), vec![Term::num(0), Term::num(1)]);

        let u3 = pat(Term::var("X"), Term::num(3));
        assert!(patterns_unify(&u1, &u3).is_none());
        let u00 = pat(Term::num(0), Term::num(0));
        assert!(patterns_unify(&u00, &u1).is_none());
    }

    #[test]
    fn unify_shares_variable_names_safely() {
        // Both patterns use X1 at position 0; renaming apart makes this fine.
        let u1 = pat(Term::var("X"), Term::var("Y"));
        let u2 = pat(Term::var("Z"), Term::num(2));
        let th = patterns_unify(&u1, &u2).unwrap();
        assert_eq!(u1.apply(&th.left), u2.apply(&th.right));
    }

    #[test]
    fn arithmetic_with_variables_may_equal_numerals() {
        let u00 = pat(Term::num(0), Term::num(0));
        let t = [Term::sub(Term::int_var("N"), Term::num(1)), Term::num(0)];
        assert!(may_unify(&u00, &t));
        assert!(pattern_match(&u00, &t).is_none());
        let ua = Pattern::new(vec![Term::sym("a"), Term::num(0)]).unwrap();
        assert!(!may_unify(&ua, &t));
        assert!(!may_unify(&ua, &[Term::int_var("N"), Term::num(0)]));
        assert!(may_unify(&ua, &[Term::var("N"), Term::num(0)]));
    }

    #[test]
    fn occurs_check() {
        let u = Pattern::new(vec![Term::var("X"), Term::var("Y")]).unwrap();
        // Both positions are fresh pattern variables; no constraint links them.
        assert!(may_unify(&u, &[Term::var("A"), Term::func("f", vec![Term::var("A")])]));
    }
}
