use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::syntax::{PredAtom, Predicate, Program, Term};

/// The finite universe grounding and enumeration range over: numerals
/// `lo..=hi` for integer variables, and a finite set of precomputed terms for
/// general variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    lo: i64,
    hi: i64,
    general: BTreeSet<Term>,
}

impl Domain {
    pub fn new(lo: i64, hi: i64) -> Result<Domain> {
        if lo > hi {
            return Err(Error::InvalidDomain { lo, hi });
        }
        Ok(Domain {
            lo,
            hi,
            general: (lo..=hi).map(Term::Num).collect(),
        })
    }

    /// Numerals `lo..=hi` plus the symbolic constants and precomputed
    /// function terms occurring in the program.
    pub fn for_program(lo: i64, hi: i64, program: &Program) -> Result<Domain> {
        let mut dom = Domain::new(lo, hi)?;
        for rule in program.rules() {
            for t in rule.terms() {
                collect_precomputed(&t.simplify(), &mut dom.general);
            }
        }
        Ok(dom)
    }

    /// The smallest interval holding 0 and every numeral of the program.
    pub fn hull(program: &Program) -> (i64, i64) {
        let nums = program.numerals();
        let lo = nums.first().copied().unwrap_or(0).min(0);
        let hi = nums.last().copied().unwrap_or(0).max(0);
        (lo, hi)
    }

    pub fn with_terms(mut self, terms: impl IntoIterator<Item = Term>) -> Result<Domain> {
        for t in terms {
            if !t.is_precomputed() {
                return Err(Error::NotPrecomputed(t.to_string()));
            }
            if let Term::Num(n) = t {
                if n < self.lo || n > self.hi {
                    continue;
                }
            }
            self.general.insert(t);
        }
        Ok(self)
    }

    /// Closes the general terms under the given function symbols `depth`
    /// times.
    pub fn with_function_depth(mut self, functions: &BTreeSet<(String, usize)>, depth: usize) -> Domain {
        for _ in 0..depth {
            let current: Vec<Term> = self.general.iter().cloned().collect();
            for (name, arity) in functions {
                for args in tuples(&current, *arity) {
                    self.general.insert(Term::Func(name.clone(), args));
                }
            }
        }
        self
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn int_range(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn general_terms(&self) -> &BTreeSet<Term> {
        &self.general
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.general.contains(t)
    }

    pub fn contains_atom(&self, atom: &PredAtom) -> bool {
        atom.args.iter().all(|t| self.contains(t))
    }

    /// Every atom of `pred` over the general terms.
    pub fn atoms(&self, pred: &Predicate) -> Vec<PredAtom> {
        let terms: Vec<Term> = self.general.iter().cloned().collect();
        tuples(&terms, pred.arity)
            .into_iter()
            .map(|args| PredAtom::new(pred.name.clone(), args))
            .collect()
    }
}

fn collect_precomputed(t: &Term, out: &mut BTreeSet<Term>) {
    match t {
        Term::Sym(_) => {
            out.insert(t.clone());
        }
        Term::Func(_, args) => {
            if t.is_precomputed() {
                out.insert(t.clone());
            }
            args.iter().for_each(|a| collect_precomputed(a, out));
        }
        Term::Arith(_, l, r) => {
            collect_precomputed(l, out);
            collect_precomputed(r, out);
        }
        Term::Num(_) | Term::Var(_) => {}
    }
}

fn tuples(terms: &[Term], arity: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                terms.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rules;

    #[test]
    fn numerals_and_constants() {
        let p = parse_rules("p(a). p(f(b)). r(X) :- p(X).").unwrap();
        let d = Domain::for_program(0, 2, &p).unwrap();
        let shown: Vec<String> = d.general_terms().iter().map(Term::to_string).collect();
        assert_eq!(shown, ["0", "1", "2", "a", "b", "f(b)"]);
        assert_eq!(d.atoms(&Predicate::new("p", 1)).len(), 6);
        assert_eq!(d.atoms(&Predicate::new("e", 0)).len(), 1);
    }

    #[test]
    fn hull_contains_zero() {
        let p = parse_rules("p(3). p(5+1).").unwrap();
        assert_eq!(Domain::hull(&p), (0, 6));
        assert!(Domain::new(2, 1).is_err());
    }

    #[test]
    fn function_depth() {
        let d = Domain::new(0, 0)
            .unwrap()
            .with_function_depth(&BTreeSet::from([("f".to_string(), 1)]), 2);
        assert_eq!(d.general_terms().len(), 3);
    }
}
