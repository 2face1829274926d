//! Index-based form of one or more ground programs over a shared atom table.

use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::domain::Domain;
use super::ground::{extensional_atoms, ground, GroundProgram};
use super::interp::Interpretation;
use crate::error::Result;
use crate::intensional::IntensionalityStatement;
use crate::syntax::{PredAtom, Predicate, Program};

#[derive(Clone, Debug)]
pub(crate) struct CRule {
    pub head: Option<usize>,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub negneg: Vec<usize>,
}

/// One program with its intensionality statement.
#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub kappa: IntensionalityStatement,
    pub ground: GroundProgram,
    pub rules: Vec<CRule>,
    /// Per atom of the table: whether the statement makes it intensional.
    pub intensional: Vec<bool>,
    pub by_head: Vec<Vec<usize>>,
    /// Per atom: rules with the atom in their positive body.
    pub watch: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Instance {
    pub atoms: IndexSet<PredAtom>,
    /// Atoms that may be true, in term order.
    pub base: Vec<usize>,
    pub components: Vec<Component>,
    /// Atoms the closure condition of a modular program makes false.
    pub forced_false: Vec<bool>,
}

pub(crate) struct Part<'a> {
    pub program: &'a Program,
    pub kappa: &'a IntensionalityStatement,
}

impl Instance {
    /// Grounds every part over the domain. The base is the set of ground
    /// heads plus the atoms of `signature` that `global` leaves extensional.
    /// With `closure`, atoms intensional for `global` but for no part are
    /// forced false.
    pub fn build(
        parts: &[Part<'_>],
        global: &IntensionalityStatement,
        closure: bool,
        signature: &BTreeSet<Predicate>,
        dom: &Domain,
        extra: &[PredAtom],
    ) -> Result<Instance> {
        let grounds: Vec<GroundProgram> = parts
            .iter()
            .map(|p| ground(p.program, dom))
            .collect::<Result<_>>()?;
        let mut base: BTreeSet<PredAtom> = extensional_atoms(global, signature, dom);
        for g in &grounds {
            base.extend(g.heads());
        }
        let mut atoms: IndexSet<PredAtom> = base.iter().cloned().collect();
        let base_idx: Vec<usize> = (0..atoms.len()).collect();
        for g in &grounds {
            for r in &g.rules {
                atoms.extend(r.atoms().cloned());
            }
        }
        atoms.extend(extra.iter().cloned());
        let n = atoms.len();
        let forced_false = atoms
            .iter()
            .map(|a| {
                closure
                    && global.lambda_holds(a)
                    && !parts.iter().any(|p| p.kappa.lambda_holds(a))
            })
            .collect();
        let components = parts
            .iter()
            .zip(grounds)
            .map(|(p, g)| {
                let idx = |a: &PredAtom| atoms.get_index_of(a).expect("atom registered");
                let rules: Vec<CRule> = g
                    .rules
                    .iter()
                    .map(|r| CRule {
                        head: r.head.as_ref().map(idx),
                        pos: r.pos.iter().map(idx).collect(),
                        neg: r.neg.iter().map(idx).collect(),
                        negneg: r.negneg.iter().map(idx).collect(),
                    })
                    .collect();
                let mut by_head = vec![Vec::new(); n];
                let mut watch = vec![Vec::new(); n];
                for (i, r) in rules.iter().enumerate() {
                    if let Some(h) = r.head {
                        by_head[h].push(i);
                    }
                    for &a in &r.pos {
                        watch[a].push(i);
                    }
                }
                Component {
                    kappa: p.kappa.clone(),
                    intensional: atoms.iter().map(|a| p.kappa.lambda_holds(a)).collect(),
                    ground: g,
                    rules,
                    by_head,
                    watch,
                }
            })
            .collect();
        Ok(Instance {
            atoms,
            base: base_idx,
            components,
            forced_false,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn truth_of(&self, i: &Interpretation) -> Vec<bool> {
        self.atoms.iter().map(|a| i.contains(a)).collect()
    }

    pub fn interpretation(&self, truth: &[bool]) -> Interpretation {
        let atoms = self
            .atoms
            .iter()
            .zip(truth)
            .filter(|(_, t)| **t)
            .map(|(a, _)| a.clone());
        Interpretation::new(atoms).expect("ground atoms are precomputed")
    }
}

impl Component {
    pub fn body_true(r: &CRule, truth: &[bool]) -> bool {
        r.pos.iter().all(|&a| truth[a])
            && r.neg.iter().all(|&a| !truth[a])
            && r.negneg.iter().all(|&a| truth[a])
    }

    /// Classical satisfaction of every rule.
    pub fn is_model(&self, truth: &[bool]) -> bool {
        self.rules
            .iter()
            .all(|r| !Self::body_true(r, truth) || r.head.is_some_and(|h| truth[h]))
    }

    /// Least model of the positive rules in `keep`, starting from `facts`.
    pub fn least_model(&self, keep: &[bool], mut model: Vec<bool>) -> Vec<bool> {
        let mut missing: Vec<usize> = self.rules.iter().map(|r| r.pos.len()).collect();
        let mut queue: Vec<usize> = (0..model.len()).filter(|&a| model[a]).collect();
        let fire = |i: usize, model: &mut Vec<bool>, queue: &mut Vec<usize>| {
            if let Some(h) = self.rules[i].head {
                if !model[h] {
                    model[h] = true;
                    queue.push(h);
                }
            }
        };
        for i in 0..self.rules.len() {
            if keep[i] && missing[i] == 0 {
                fire(i, &mut model, &mut queue);
            }
        }
        while let Some(a) = queue.pop() {
            for &i in &self.watch[a] {
                missing[i] -= 1;
                if keep[i] && missing[i] == 0 {
                    fire(i, &mut model, &mut queue);
                }
            }
        }
        model
    }

    /// The reduct test: `I` is a model, and the least model of the reduct
    /// plus one fact per true extensional atom is exactly `I`.
    pub fn reduct_stable(&self, truth: &[bool]) -> bool {
        if !self.is_model(truth) {
            return false;
        }
        let keep: Vec<bool> = self
            .rules
            .iter()
            .map(|r| r.neg.iter().all(|&a| !truth[a]) && r.negneg.iter().all(|&a| truth[a]))
            .collect();
        let facts: Vec<bool> = truth
            .iter()
            .zip(&self.intensional)
            .map(|(t, i)| *t && !i)
            .collect();
        self.least_model(&keep, facts) == truth
    }
}
