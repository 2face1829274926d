//! Stability by the definition: `I` is a model, and no `⟨H, I⟩` with `H` a
//! proper subset of `At(I)` satisfies the rules and the extensional axioms.
//! Formulas are evaluated clause by clause; nothing here shares code with
//! the reduct-based search.

use super::compiled::{Component, Instance};
use super::formula::Formula;
use crate::intensional::ExtensionalAxiom;

const ABSENT: usize = usize::MAX;

/// The formulas of one component over a local atom numbering of at most 64
/// atoms. Atoms outside the numbering are false in both worlds.
pub(crate) struct BruteComponent {
    formulas: Vec<Formula<usize>>,
    extensional: u64,
}

impl BruteComponent {
    /// `local[j]` is the table index of local atom `j`.
    pub fn new(inst: &Instance, c: &Component, local: &[usize]) -> BruteComponent {
        assert!(local.len() <= 64);
        let mut position = vec![ABSENT; inst.len()];
        for (j, &a) in local.iter().enumerate() {
            position[a] = j;
        }
        let mut to_local = |a: &crate::syntax::PredAtom| {
            inst.atoms
                .get_index_of(a)
                .map_or(ABSENT, |i| position[i])
        };
        let mut formulas: Vec<Formula<usize>> = c
            .ground
            .rules
            .iter()
            .map(|r| r.to_formula().map_atoms(&mut to_local))
            .collect();
        let mut extensional = 0u64;
        for (j, &a) in local.iter().enumerate() {
            let atom = &inst.atoms[a];
            let axiom = ExtensionalAxiom {
                lambda: c.kappa.lambda(&atom.predicate()),
            };
            let f = axiom.instantiate(atom).fold_comparisons();
            formulas.push(f.map_atoms(&mut to_local));
            if !c.kappa.lambda_holds(atom) {
                extensional |= 1 << j;
            }
        }
        BruteComponent {
            formulas,
            extensional,
        }
    }

    fn classical(&self, i: u64) -> bool {
        let there = |a: &usize| *a != ABSENT && i >> a & 1 == 1;
        self.formulas.iter().all(|f| f.classical(&there))
    }

    fn ht(&self, h: u64, i: u64) -> bool {
        let here = |a: &usize| *a != ABSENT && h >> a & 1 == 1;
        let there = |a: &usize| *a != ABSENT && i >> a & 1 == 1;
        self.formulas.iter().all(|f| f.ht(&here, &there))
    }

    /// Number of atoms of `i` the here-world may drop; the search below is
    /// exponential in it.
    pub fn free_atoms(&self, i: u64) -> u32 {
        (i & !self.extensional).count_ones()
    }

    /// `i` is a stable model of the rules plus the extensional axioms.
    pub fn stable(&self, i: u64) -> bool {
        if !self.classical(i) {
            return false;
        }
        // The axiom `a ∨ ¬a` for a true extensional atom holds in ⟨H, I⟩
        // only if a ∈ H, so those atoms are in every candidate H.
        let kept = i & self.extensional;
        let free = i & !self.extensional;
        let mut sub = free;
        while sub != 0 {
            sub = (sub - 1) & free;
            if self.ht(kept | sub, i) {
                return false;
            }
        }
        true
    }
}
