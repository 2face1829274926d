//! Many-sorted terms.
//!
//! Numerals are the objects of the integer sort; every precomputed term
//! (a ground term without arithmetic) is an object of the general sort.
//! Arithmetic is exact: overflow of the 64-bit range is an error, never a
//! wraparound.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Integer,
    General,
}

impl Sort {
    /// `integer` is a subsort of `general`.
    pub fn is_subsort_of(self, other: Sort) -> bool {
        self == other || (self == Sort::Integer && other == Sort::General)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Integer => f.write_str("integer"),
            Sort::General => f.write_str("general"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn apply(self, lhs: i64, rhs: i64) -> Option<i64> {
        match self {
            ArithOp::Add => lhs.checked_add(rhs),
            ArithOp::Sub => lhs.checked_sub(rhs),
            ArithOp::Mul => lhs.checked_mul(rhs),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: Sort,
}

/// Substitution of terms for variables, keyed by variable name.
pub type Substitution = BTreeMap<String, Term>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// The numeral for an integer.
    Num(i64),
    /// A symbolic object constant (placeholders are symbolic constants too).
    Sym(String),
    Var(Variable),
    Arith(ArithOp, Box<Term>, Box<Term>),
    Func(String, Vec<Term>),
}

impl Term {
    pub fn num(value: i64) -> Term {
        Term::Num(value)
    }

    pub fn sym(name: impl Into<String>) -> Term {
        Term::Sym(name.into())
    }

    /// A general-sorted variable. Rule construction re-sorts variables that
    /// occur under arithmetic.
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(Variable {
            name: name.into(),
            sort: Sort::General,
        })
    }

    pub fn int_var(name: impl Into<String>) -> Term {
        Term::Var(Variable {
            name: name.into(),
            sort: Sort::Integer,
        })
    }

    pub fn arith(op: ArithOp, lhs: Term, rhs: Term) -> Term {
        Term::Arith(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn add(lhs: Term, rhs: Term) -> Term {
        Term::arith(ArithOp::Add, lhs, rhs)
    }

    pub fn sub(lhs: Term, rhs: Term) -> Term {
        Term::arith(ArithOp::Sub, lhs, rhs)
    }

    pub fn mul(lhs: Term, rhs: Term) -> Term {
        Term::arith(ArithOp::Mul, lhs, rhs)
    }

    pub fn func(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::Func(name.into(), args)
    }

    pub fn as_num(&self) -> Option<i64> {
        match self {
            Term::Num(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Num(_) | Term::Sym(_) => true,
            Term::Var(_) => false,
            Term::Arith(_, l, r) => l.is_ground() && r.is_ground(),
            Term::Func(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Ground and free of arithmetic function symbols.
    pub fn is_precomputed(&self) -> bool {
        match self {
            Term::Num(_) | Term::Sym(_) => true,
            Term::Var(_) | Term::Arith(..) => false,
            Term::Func(_, args) => args.iter().all(Term::is_precomputed),
        }
    }

    /// The sort of the term in isolation. A symbolic constant that occurs as
    /// an operand of arithmetic is integer-sorted; that context is resolved by
    /// [`crate::syntax::Rule::sort_of`].
    pub fn sort(&self) -> Sort {
        match self {
            Term::Num(_) | Term::Arith(..) => Sort::Integer,
            Term::Var(v) => v.sort,
            Term::Sym(_) | Term::Func(..) => Sort::General,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Num(_) | Term::Sym(_) => {}
            Term::Var(v) => {
                out.insert(v.name.clone());
            }
            Term::Arith(_, l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub(crate) fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Sym(s) => {
                out.insert(s.clone());
            }
            Term::Num(_) | Term::Var(_) => {}
            Term::Arith(_, l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_symbols(out)),
        }
    }

    /// Replaces variables bound by `subst`; unbound variables stay.
    pub fn substitute(&self, subst: &Substitution) -> Term {
        match self {
            Term::Var(v) => subst.get(&v.name).cloned().unwrap_or_else(|| self.clone()),
            Term::Num(_) | Term::Sym(_) => self.clone(),
            Term::Arith(op, l, r) => Term::arith(*op, l.substitute(subst), r.substitute(subst)),
            Term::Func(name, args) => {
                Term::Func(name.clone(), args.iter().map(|a| a.substitute(subst)).collect())
            }
        }
    }

    /// Replaces symbolic constants bound by `values`.
    pub fn replace_symbols(&self, values: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Sym(s) => values.get(s).cloned().unwrap_or_else(|| self.clone()),
            Term::Num(_) | Term::Var(_) => self.clone(),
            Term::Arith(op, l, r) => {
                Term::arith(*op, l.replace_symbols(values), r.replace_symbols(values))
            }
            Term::Func(name, args) => Term::Func(
                name.clone(),
                args.iter().map(|a| a.replace_symbols(values)).collect(),
            ),
        }
    }

    /// The simplification map `[t]`: folds every arithmetic subterm whose
    /// operands simplify to numerals, leaves everything else in place.
    ///
    /// Folding that would overflow is left unfolded; [`Term::eval_ground`]
    /// reports the overflow.
    pub fn simplify(&self) -> Term {
        match self {
            Term::Num(_) | Term::Sym(_) | Term::Var(_) => self.clone(),
            Term::Arith(op, l, r) => {
                let (l, r) = (l.simplify(), r.simplify());
                match (&l, &r) {
                    (Term::Num(a), Term::Num(b)) => match op.apply(*a, *b) {
                        Some(n) => Term::Num(n),
                        None => Term::arith(*op, l, r),
                    },
                    _ => Term::arith(*op, l, r),
                }
            }
            Term::Func(name, args) => {
                Term::Func(name.clone(), args.iter().map(Term::simplify).collect())
            }
        }
    }

    /// The value of a ground term under any standard interpretation.
    pub fn eval_ground(&self) -> Result<Term> {
        match self {
            Term::Num(_) | Term::Sym(_) => Ok(self.clone()),
            Term::Var(_) => Err(Error::NotGround(self.to_string())),
            Term::Arith(op, l, r) => {
                let a = l.eval_integer()?;
                let b = r.eval_integer()?;
                op.apply(a, b)
                    .map(Term::Num)
                    .ok_or_else(|| Error::Overflow(self.to_string()))
            }
            Term::Func(name, args) => Ok(Term::Func(
                name.clone(),
                args.iter().map(Term::eval_ground).collect::<Result<_>>()?,
            )),
        }
    }

    fn eval_integer(&self) -> Result<i64> {
        match self.eval_ground()? {
            Term::Num(n) => Ok(n),
            _ => Err(Error::NotInteger(self.to_string())),
        }
    }

    /// Compares two precomputed terms in the fixed total order.
    pub fn compare(&self, other: &Term) -> Result<Ordering> {
        for t in [self, other] {
            if !t.is_precomputed() {
                return Err(Error::NotPrecomputed(t.to_string()));
            }
        }
        Ok(self.cmp(other))
    }

    fn rank(&self) -> u8 {
        match self {
            Term::Num(_) => 0,
            Term::Sym(_) => 1,
            Term::Func(..) => 2,
            Term::Var(_) => 3,
            Term::Arith(..) => 4,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        match self {
            Term::Arith(op, ..) => {
                let prec = op.precedence();
                if prec < parent || (right && prec == parent) {
                    write!(f, "({self})")
                } else {
                    write!(f, "{self}")
                }
            }
            _ => write!(f, "{self}"),
        }
    }
}

/// Numerals by value, then symbolic constants by name, then function terms by
/// name, arity and arguments. Numerals are contiguous: nothing sorts strictly
/// between `n` and `n+1`. Non-precomputed terms are ordered after all
/// precomputed ones so that the order is total on every term.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Num(a), Term::Num(b)) => a.cmp(b),
            (Term::Sym(a), Term::Sym(b)) => a.cmp(b),
            (Term::Func(f, xs), Term::Func(g, ys)) => f
                .cmp(g)
                .then(xs.len().cmp(&ys.len()))
                .then_with(|| xs.cmp(ys)),
            (Term::Var(a), Term::Var(b)) => a.name.cmp(&b.name).then(a.sort.cmp(&b.sort)),
            (Term::Arith(o1, l1, r1), Term::Arith(o2, l2, r2)) => {
                o1.cmp(o2).then_with(|| l1.cmp(l2)).then_with(|| r1.cmp(r2))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Num(n) => write!(f, "{n}"),
            Term::Sym(s) => f.write_str(s),
            Term::Var(v) => f.write_str(&v.name),
            Term::Arith(op, l, r) => {
                let prec = op.precedence();
                l.fmt_operand(f, prec, false)?;
                f.write_str(op.symbol())?;
                r.fmt_operand(f, prec, true)
            }
            Term::Func(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_are_integer_sorted() {
        assert_eq!(Term::num(0).sort(), Sort::Integer);
        assert_eq!(Term::sym("a").sort(), Sort::General);
        assert!(Sort::Integer.is_subsort_of(Sort::General));
        assert!(!Sort::General.is_subsort_of(Sort::Integer));
    }

    #[test]
    fn simplify_folds_ground_arithmetic() {
        let t = Term::add(Term::num(0), Term::num(1));
        assert_eq!(t.simplify(), Term::num(1));

        let t = Term::add(Term::int_var("X"), Term::num(1));
        assert_eq!(t.simplify(), t);

        // 2*3 is evaluated by integer arithmetic: 6.
        let t = Term::add(Term::mul(Term::num(2), Term::num(3)), Term::int_var("X"));
        assert_eq!(t.simplify(), Term::add(Term::num(6), Term::int_var("X")));
    }

    #[test]
    fn simplify_keeps_placeholder_arithmetic() {
        let t = Term::add(Term::sym("k"), Term::num(1));
        assert_eq!(t.simplify(), t);
    }

    #[test]
    fn eval_ground_computes_values() {
        assert_eq!(Term::add(Term::num(5), Term::num(3)).eval_ground(), Ok(Term::num(8)));
        let f1 = Term::func("f", vec![Term::num(1)]);
        assert_eq!(f1.eval_ground(), Ok(f1.clone()));
        // (1+1)*3 = 6
        let t = Term::mul(Term::add(Term::num(1), Term::num(1)), Term::num(3));
        assert_eq!(t.eval_ground(), Ok(Term::num(6)));
    }

    #[test]
    fn eval_ground_errors() {
        assert!(matches!(Term::var("X").eval_ground(), Err(Error::NotGround(_))));
        let t = Term::add(Term::num(i64::MAX), Term::num(1));
        assert!(matches!(t.eval_ground(), Err(Error::Overflow(_))));
        assert_eq!(t.simplify(), t);
        let t = Term::add(Term::sym("a"), Term::num(1));
        assert!(matches!(t.eval_ground(), Err(Error::NotInteger(_))));
    }

    #[test]
    fn compare_follows_fixed_order() {
        assert_eq!(Term::num(1).compare(&Term::num(2)), Ok(Ordering::Less));
        assert_eq!(Term::num(5).compare(&Term::sym("a")), Ok(Ordering::Less));
        assert_eq!(Term::sym("a").compare(&Term::sym("a")), Ok(Ordering::Equal));
        assert_eq!(
            Term::sym("z").compare(&Term::func("a", vec![])),
            Ok(Ordering::Less)
        );
        assert!(Term::add(Term::num(1), Term::num(1))
            .compare(&Term::num(2))
            .is_err());
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let t = Term::sub(Term::num(1), Term::sub(Term::num(2), Term::num(3)));
        assert_eq!(t.to_string(), "1-(2-3)");
        let t = Term::mul(Term::add(Term::num(1), Term::num(2)), Term::num(3));
        assert_eq!(t.to_string(), "(1+2)*3");
        let t = Term::add(Term::mul(Term::num(1), Term::num(2)), Term::num(3));
        assert_eq!(t.to_string(), "1*2+3");
    }
}
