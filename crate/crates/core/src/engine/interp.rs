use std::collections::BTreeSet;
use std::fmt;

use super::formula::Formula;
use crate::error::{Error, Result};
use crate::instrument;
use crate::syntax::{PredAtom, Predicate};

/// A standard interpretation, identified with the finite set `At(I)` of
/// precomputed atoms it makes true.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation(BTreeSet<PredAtom>);

impl Interpretation {
    pub fn new(atoms: impl IntoIterator<Item = PredAtom>) -> Result<Self> {
        instrument::semantic();
        let atoms: BTreeSet<PredAtom> = atoms.into_iter().collect();
        if let Some(a) = atoms.iter().find(|a| !a.is_precomputed()) {
            return Err(Error::NotPrecomputed(a.to_string()));
        }
        Ok(Interpretation(atoms))
    }

    pub fn atoms(&self) -> &BTreeSet<PredAtom> {
        &self.0
    }

    pub fn contains(&self, atom: &PredAtom) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn predicates(&self) -> BTreeSet<Predicate> {
        self.0.iter().map(PredAtom::predicate).collect()
    }

    pub fn satisfies(&self, f: &Formula<PredAtom>) -> bool {
        f.classical(&|a| self.contains(a))
    }

    /// Atoms as strings, in term order.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(PredAtom::to_string).collect()
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(" "))
    }
}

/// `⟨H, I⟩` with `H ⊆ At(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtInterpretation {
    here: BTreeSet<PredAtom>,
    there: Interpretation,
}

impl HtInterpretation {
    pub fn new(here: impl IntoIterator<Item = PredAtom>, there: Interpretation) -> Result<Self> {
        let here: BTreeSet<PredAtom> = here.into_iter().collect();
        if let Some(a) = here.iter().find(|a| !there.contains(a)) {
            return Err(Error::HereNotSubset(a.to_string()));
        }
        Ok(HtInterpretation { here, there })
    }

    /// `⟨At(I), I⟩`.
    pub fn total(there: Interpretation) -> Self {
        HtInterpretation {
            here: there.atoms().clone(),
            there,
        }
    }

    pub fn here(&self) -> &BTreeSet<PredAtom> {
        &self.here
    }

    pub fn there(&self) -> &Interpretation {
        &self.there
    }
}

pub fn ht_satisfies(hi: &HtInterpretation, f: &Formula<PredAtom>) -> bool {
    f.ht(&|a| hi.here.contains(a), &|a| hi.there.contains(a))
}
