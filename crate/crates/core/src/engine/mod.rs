//! Grounding over a finite domain and κ-stable model checking and
//! enumeration.
//!
//! Three enumeration engines are available: `Brute` filters every subset of
//! the relevant atom base through the here-and-there definition, `Reduct`
//! runs a propagating search whose leaves are checked with the reduct, and
//! `Fixpoint` computes the least model of a negation-free program.

pub(crate) mod compiled;
mod domain;
mod fixpoint;
mod formula;
mod ground;
mod interp;
pub(crate) mod search;
pub(crate) mod stable;
mod support;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use domain::Domain;
pub use formula::Formula;
pub use ground::{extensional_atoms, ground, ground_with_choices, GroundProgram, GroundRule};
pub use interp::{ht_satisfies, HtInterpretation, Interpretation};
pub use support::check_support;

use crate::error::{Error, Result};
use crate::intensional::IntensionalityStatement;
use crate::syntax::{PredAtom, Predicate, Program};
use compiled::{Instance, Part};
use stable::BruteComponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Brute,
    Reduct,
    Fixpoint,
    /// Module-by-module evaluation in dependency order; modular programs
    /// only.
    Topo,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Reduct => "reduct",
            Engine::Fixpoint => "fixpoint",
            Engine::Topo => "topo",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute" => Ok(Engine::Brute),
            "reduct" => Ok(Engine::Reduct),
            "fixpoint" => Ok(Engine::Fixpoint),
            "topo" => Ok(Engine::Topo),
            _ => Err(format!("unknown engine `{s}`")),
        }
    }
}

pub const DEFAULT_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest atom set the brute engine enumerates subsets of.
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: DEFAULT_CAP }
    }
}

fn union_signature(kappa: &IntensionalityStatement, pi: &Program) -> BTreeSet<Predicate> {
    let mut sig = pi.predicates();
    sig.extend(kappa.predicates().cloned());
    sig
}

/// Ground heads plus the extensional atoms over the domain: every atom that
/// can be true in a κ-stable model.
pub fn relevant_base(
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
) -> Result<BTreeSet<PredAtom>> {
    Ok(ground_with_choices(pi, kappa, &union_signature(kappa, pi), dom)?.relevant_base())
}

pub(crate) fn single(
    i: &Interpretation,
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
) -> Result<Instance> {
    let mut sig = union_signature(kappa, pi);
    sig.extend(i.predicates());
    let extra: Vec<PredAtom> = i.atoms().iter().cloned().collect();
    let inst = Instance::build(&[Part { program: pi, kappa }], kappa, false, &sig, dom, &extra)?;
    let base: BTreeSet<usize> = inst.base.iter().copied().collect();
    for a in i.atoms() {
        let idx = inst.atoms.get_index_of(a).expect("registered");
        if !base.contains(&idx) && !dom.contains_atom(a) {
            return Err(Error::OutsideDomain(a.to_string()));
        }
    }
    Ok(inst)
}

/// Whether `I` is a stable model of `Π ∪ EM(κ)`, by the reduct test.
pub fn is_kappa_stable(
    i: &Interpretation,
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
) -> Result<bool> {
    is_kappa_stable_with(i, kappa, pi, dom, Engine::Reduct, Options::default())
}

/// [`is_kappa_stable`] with a choice between the reduct test and the
/// here-and-there definition (`Engine::Brute`).
pub fn is_kappa_stable_with(
    i: &Interpretation,
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<bool> {
    crate::instrument::semantic();
    let inst = single(i, kappa, pi, dom)?;
    let truth = inst.truth_of(i);
    match engine {
        Engine::Reduct => Ok(inst.components[0].reduct_stable(&truth)),
        Engine::Brute => {
            let local: Vec<usize> = (0..inst.len()).filter(|&a| truth[a]).collect();
            if local.len() > 64 {
                return Err(Error::Capacity {
                    engine: "brute",
                    size: local.len(),
                    cap: options.cap.min(64),
                });
            }
            let bc = BruteComponent::new(&inst, &inst.components[0], &local);
            let all = if local.len() == 64 { u64::MAX } else { (1u64 << local.len()) - 1 };
            let free = bc.free_atoms(all) as usize;
            if free > options.cap {
                return Err(Error::Capacity {
                    engine: "brute",
                    size: free,
                    cap: options.cap,
                });
            }
            Ok(bc.stable(all))
        }
        other => Err(Error::EngineNotApplicable {
            engine: other.name(),
            reason: "membership is checked with the brute or reduct engine".into(),
        }),
    }
}

/// All κ-stable models of `Π` whose atoms lie in the relevant base.
pub fn enumerate_kappa_stable(
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
    engine: Engine,
) -> Result<Vec<Interpretation>> {
    enumerate_kappa_stable_with(kappa, pi, dom, engine, Options::default())
}

pub fn enumerate_kappa_stable_with(
    kappa: &IntensionalityStatement,
    pi: &Program,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<Vec<Interpretation>> {
    enumerate_over(kappa, pi, &union_signature(kappa, pi), dom, engine, options)
}

pub(crate) fn enumerate_over(
    kappa: &IntensionalityStatement,
    pi: &Program,
    signature: &BTreeSet<Predicate>,
    dom: &Domain,
    engine: Engine,
    options: Options,
) -> Result<Vec<Interpretation>> {
    if engine == Engine::Fixpoint {
        if pi.has_negation() {
            return Err(Error::EngineNotApplicable {
                engine: "fixpoint",
                reason: "the program uses negation".into(),
            });
        }
        if let Some(p) = signature.iter().find(|p| !kappa.is_purely_intensional(p)) {
            return Err(Error::EngineNotApplicable {
                engine: "fixpoint",
                reason: format!("{p} is not purely intensional"),
            });
        }
    }
    let inst = Instance::build(&[Part { program: pi, kappa }], kappa, false, signature, dom, &[])?;
    match engine {
        Engine::Fixpoint => {
            crate::instrument::semantic();
            Ok(fixpoint::least_model(&inst)
                .map(|m| inst.interpretation(&m))
                .into_iter()
                .collect())
        }
        Engine::Topo => Err(Error::EngineNotApplicable {
            engine: "topo",
            reason: "topological evaluation needs a modular program".into(),
        }),
        _ => enumerate_instance(&inst, engine, options),
    }
}

/// Brute or reduct enumeration over a prepared instance.
pub(crate) fn enumerate_instance(
    inst: &Instance,
    engine: Engine,
    options: Options,
) -> Result<Vec<Interpretation>> {
    crate::instrument::semantic();
    let models: Vec<Vec<bool>> = match engine {
        Engine::Reduct => search::enumerate(inst, &[]),
        Engine::Brute => {
            let n = inst.base.len();
            if n > options.cap || n > 63 {
                return Err(Error::Capacity {
                    engine: "brute",
                    size: n,
                    cap: options.cap.min(63),
                });
            }
            let comps: Vec<BruteComponent> = inst
                .components
                .iter()
                .map(|c| BruteComponent::new(inst, c, &inst.base))
                .collect();
            let forced: u64 = inst
                .base
                .iter()
                .enumerate()
                .filter(|(_, &a)| inst.forced_false[a])
                .fold(0, |m, (j, _)| m | 1 << j);
            let mut out = Vec::new();
            for mask in 0..(1u64 << n) {
                if mask & forced != 0 {
                    continue;
                }
                if comps.iter().all(|c| c.stable(mask)) {
                    let mut truth = vec![false; inst.len()];
                    for (j, &a) in inst.base.iter().enumerate() {
                        truth[a] = mask >> j & 1 == 1;
                    }
                    out.push(truth);
                }
            }
            out
        }
        other => {
            return Err(Error::EngineNotApplicable {
                engine: other.name(),
                reason: "not an enumeration engine for this input".into(),
            })
        }
    };
    let mut out: Vec<Interpretation> = models.iter().map(|m| inst.interpretation(m)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intensional::Pattern;
    use crate::syntax::Term;
    use crate::text::parse_rules;

    fn q(a: i64, b: i64) -> PredAtom {
        PredAtom::new("q", vec![Term::num(a), Term::num(b)])
    }

    fn kappa1() -> IntensionalityStatement {
        let mut k = IntensionalityStatement::new();
        for v in [1, 2] {
            k.insert(
                Predicate::new("q", 2),
                Pattern::new(vec![Term::var("X"), Term::num(v)]).unwrap(),
            )
            .unwrap();
        }
        k
    }

    fn gamma1() -> Program {
        parse_rules("q(X,1) :- q(X,0). q(X,2) :- q(X,1).").unwrap()
    }

    fn interp(atoms: &[PredAtom]) -> Interpretation {
        Interpretation::new(atoms.iter().cloned()).unwrap()
    }

    #[test]
    fn gamma1_membership_both_checks() {
        let dom = Domain::new(0, 3).unwrap();
        for engine in [Engine::Reduct, Engine::Brute] {
            let check = |atoms: &[PredAtom]| {
                is_kappa_stable_with(&interp(atoms), &kappa1(), &gamma1(), &dom, engine, Options::default())
                    .unwrap()
            };
            assert!(check(&[q(1, 3)]), "{engine}");
            assert!(check(&[q(0, 0), q(0, 1), q(0, 2)]), "{engine}");
            assert!(!check(&[q(0, 1)]), "{engine}");
            assert!(!check(&[q(0, 0)]), "{engine}");
        }
    }

    #[test]
    fn gamma1_enumeration_agrees() {
        let dom = Domain::new(0, 3).unwrap();
        let brute = enumerate_kappa_stable(&kappa1(), &gamma1(), &dom, Engine::Brute).unwrap();
        let reduct = enumerate_kappa_stable(&kappa1(), &gamma1(), &dom, Engine::Reduct).unwrap();
        assert_eq!(brute, reduct);
        assert!(brute.contains(&interp(&[q(1, 3)])));
        assert!(brute.contains(&interp(&[q(0, 0), q(0, 1), q(0, 2)])));
        assert!(!brute.contains(&interp(&[q(0, 1)])));
        // Eight free extensional atoms.
        assert_eq!(brute.len(), 256);
    }

    #[test]
    fn empty_program_has_the_empty_model() {
        let pi = Program::new();
        let k = IntensionalityStatement::purely_intensional([&Predicate::new("q", 2)]);
        let dom = Domain::new(0, 2).unwrap();
        for engine in [Engine::Brute, Engine::Reduct, Engine::Fixpoint] {
            let models = enumerate_kappa_stable(&k, &pi, &dom, engine).unwrap();
            assert_eq!(models, vec![Interpretation::default()], "{engine}");
        }
    }

    #[test]
    fn fixpoint_admissibility() {
        let dom = Domain::new(0, 3).unwrap();
        assert!(matches!(
            enumerate_kappa_stable(&kappa1(), &gamma1(), &dom, Engine::Fixpoint),
            Err(Error::EngineNotApplicable { .. })
        ));
        let neg = parse_rules("a :- not b.").unwrap();
        let k = IntensionalityStatement::purely_intensional(&neg.predicates());
        assert!(enumerate_kappa_stable(&k, &neg, &dom, Engine::Fixpoint).is_err());
    }

    #[test]
    fn constraints_and_negation() {
        let pi = parse_rules("a :- not b. b :- not a. :- a.").unwrap();
        let k = IntensionalityStatement::purely_intensional(&pi.predicates());
        let dom = Domain::new(0, 0).unwrap();
        let b = PredAtom::new("b", vec![]);
        for engine in [Engine::Brute, Engine::Reduct] {
            let models = enumerate_kappa_stable(&k, &pi, &dom, engine).unwrap();
            assert_eq!(models, vec![interp(std::slice::from_ref(&b))], "{engine}");
        }
    }

    #[test]
    fn double_negation_keeps_choices() {
        // a :- not not a. has stable models {} and {a}.
        let pi = parse_rules("a :- not not a.").unwrap();
        let k = IntensionalityStatement::purely_intensional(&pi.predicates());
        let dom = Domain::new(0, 0).unwrap();
        for engine in [Engine::Brute, Engine::Reduct] {
            assert_eq!(enumerate_kappa_stable(&k, &pi, &dom, engine).unwrap().len(), 2, "{engine}");
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let pi = Program::new();
        let k = IntensionalityStatement::new();
        let dom = Domain::new(0, 4).unwrap();
        let pi2 = pi.clone();
        let mut k2 = k.clone();
        k2.insert(Predicate::new("q", 2), Pattern::new(vec![Term::num(9), Term::num(9)]).unwrap())
            .unwrap();
        let err = enumerate_kappa_stable_with(&k2, &pi2, &dom, Engine::Brute, Options { cap: 24 })
            .unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn outside_domain_is_an_error() {
        let dom = Domain::new(0, 3).unwrap();
        let r = is_kappa_stable(&interp(&[q(9, 9)]), &kappa1(), &gamma1(), &dom);
        assert!(matches!(r, Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn support_witnesses() {
        let dom = Domain::new(0, 3).unwrap();
        let i = interp(&[q(0, 0), q(0, 1), q(0, 2)]);
        assert!(check_support(&i, &kappa1(), &gamma1(), &q(0, 1), &dom).unwrap());
        let j = interp(&[q(0, 1)]);
        assert!(!check_support(&j, &kappa1(), &gamma1(), &q(0, 1), &dom).unwrap());
        assert!(matches!(
            check_support(&i, &kappa1(), &gamma1(), &q(0, 0), &dom),
            Err(Error::NotIntensional(_))
        ));
        let facts = parse_rules("q(0,1).").unwrap();
        assert!(check_support(&Interpretation::default(), &kappa1(), &facts, &q(0, 1), &dom).unwrap());
    }
}
