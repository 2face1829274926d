use std::fmt;

use super::coherence::{is_coherent, CoherenceReport};
use super::semantics::modular_answer_sets_with;
use crate::engine::{enumerate_over, Domain, Engine, Interpretation, Options};
use crate::error::Result;
use crate::instantiate::ModularProgram;

/// Modular answer sets next to the κ-stable models of the union of all
/// module rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub coherence: CoherenceReport,
    pub modular_sets: Vec<Interpretation>,
    pub union_sets: Vec<Interpretation>,
    pub equal: bool,
    pub only_modular: Vec<Interpretation>,
    pub only_union: Vec<Interpretation>,
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coherence.coherent {
            writeln!(f, "warning: the modular program is not coherent")?;
        }
        writeln!(f, "modular answer sets: {}", self.modular_sets.len())?;
        for i in &self.modular_sets {
            writeln!(f, "  {i}")?;
        }
        writeln!(f, "union answer sets: {}", self.union_sets.len())?;
        for i in &self.union_sets {
            writeln!(f, "  {i}")?;
        }
        if self.equal {
            writeln!(f, "equal")
        } else {
            writeln!(f, "different")?;
            for i in &self.only_modular {
                writeln!(f, "  only modular: {i}")?;
            }
            for i in &self.only_union {
                writeln!(f, "  only union: {i}")?;
            }
            Ok(())
        }
    }
}

pub fn theorem1_check(p: &ModularProgram, dom: &Domain, engine: Engine) -> Result<ComparisonReport> {
    theorem1_check_with(p, dom, engine, Options::default())
}

/// Runs both semantics over the same signature and domain. `Topo` applies
/// to the modular side only and `Fixpoint` to the union side only; the other
/// side then uses `Reduct`. Incoherent programs are compared all the same.
pub fn theorem1_check_with(
    p: &ModularProgram,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<ComparisonReport> {
    let coherence = is_coherent(p);
    let modular_engine = if engine == Engine::Fixpoint { Engine::Reduct } else { engine };
    let union_engine = if engine == Engine::Topo { Engine::Reduct } else { engine };
    let modular_sets = modular_answer_sets_with(p, dom, modular_engine, options)?;
    let union_sets = enumerate_over(
        &p.kappa,
        &p.union_program(),
        p.signature(),
        dom,
        union_engine,
        options,
    )?;
    let only_modular: Vec<Interpretation> =
        modular_sets.iter().filter(|i| !union_sets.contains(i)).cloned().collect();
    let only_union: Vec<Interpretation> =
        union_sets.iter().filter(|i| !modular_sets.contains(i)).cloned().collect();
    Ok(ComparisonReport {
        coherence,
        equal: only_modular.is_empty() && only_union.is_empty(),
        modular_sets,
        union_sets,
        only_modular,
        only_union,
    })
}
