use crate::engine::compiled::{Instance, Part};
use crate::engine::stable::BruteComponent;
use crate::engine::{self, Domain, Engine, Interpretation, Options};
use crate::error::{Error, Result};
use crate::instantiate::{ModularProgram, Module};
use crate::intensional::IntensionalityStatement;

/// Every true atom the global statement makes intensional is intensional
/// for some module. Atoms outside `I` are never read.
pub fn closure_holds(
    i: &Interpretation,
    kappa: &IntensionalityStatement,
    module_kappas: &[IntensionalityStatement],
) -> bool {
    i.atoms()
        .iter()
        .all(|a| !kappa.lambda_holds(a) || module_kappas.iter().any(|k| k.lambda_holds(a)))
}

/// `I` is a κ-stable model of the module's rules under its own statement.
pub fn is_model_of_module(i: &Interpretation, m: &Module, dom: &Domain) -> Result<bool> {
    engine::is_kappa_stable(i, &m.kappa, &m.pi, dom)
}

pub(crate) fn instance(p: &ModularProgram, dom: &Domain, extra: &[crate::syntax::PredAtom]) -> Result<Instance> {
    let parts: Vec<Part> = p
        .modules
        .iter()
        .map(|m| Part {
            program: &m.pi,
            kappa: &m.kappa,
        })
        .collect();
    Instance::build(&parts, &p.kappa, true, p.signature(), dom, extra)
}

pub fn is_modular_answer_set(i: &Interpretation, p: &ModularProgram, dom: &Domain) -> Result<bool> {
    is_modular_answer_set_with(i, p, dom, Engine::Reduct, Options::default())
}

/// A model of every module that satisfies the closure condition.
pub fn is_modular_answer_set_with(
    i: &Interpretation,
    p: &ModularProgram,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<bool> {
    crate::instrument::semantic();
    if !closure_holds(i, &p.kappa, &p.module_kappas()) {
        return Ok(false);
    }
    let extra: Vec<_> = i.atoms().iter().cloned().collect();
    let inst = instance(p, dom, &extra)?;
    let base: std::collections::BTreeSet<usize> = inst.base.iter().copied().collect();
    for a in i.atoms() {
        let idx = inst.atoms.get_index_of(a).expect("registered");
        if !base.contains(&idx) && !dom.contains_atom(a) {
            return Err(Error::OutsideDomain(a.to_string()));
        }
    }
    let truth = inst.truth_of(i);
    match engine {
        Engine::Brute => {
            let local: Vec<usize> = (0..inst.len()).filter(|&a| truth[a]).collect();
            if local.len() > 64 {
                return Err(Error::Capacity {
                    engine: "brute",
                    size: local.len(),
                    cap: options.cap.min(64),
                });
            }
            let all = if local.len() == 64 { u64::MAX } else { (1u64 << local.len()) - 1 };
            for c in &inst.components {
                let bc = BruteComponent::new(&inst, c, &local);
                let free = bc.free_atoms(all) as usize;
                if free > options.cap {
                    return Err(Error::Capacity {
                        engine: "brute",
                        size: free,
                        cap: options.cap,
                    });
                }
                if !bc.stable(all) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(inst.components.iter().all(|c| c.reduct_stable(&truth))),
    }
}

/// All answer sets of the modular program over the domain.
pub fn modular_answer_sets(p: &ModularProgram, dom: &Domain, engine: Engine) -> Result<Vec<Interpretation>> {
    modular_answer_sets_with(p, dom, engine, Options::default())
}

pub fn modular_answer_sets_with(
    p: &ModularProgram,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<Vec<Interpretation>> {
    match engine {
        Engine::Topo => super::topo::answer_sets(p, dom),
        Engine::Fixpoint => Err(Error::EngineNotApplicable {
            engine: "fixpoint",
            reason: "modular answer sets are enumerated with the brute, reduct or topo engine".into(),
        }),
        _ => engine::enumerate_instance(&instance(p, dom, &[])?, engine, options),
    }
}
