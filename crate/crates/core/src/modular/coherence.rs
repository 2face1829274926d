use std::fmt;

use super::graph::DependencyGraph;
use crate::instantiate::{ModularProgram, Module};
use crate::intensional::{pattern_match, patterns_unify};
use crate::syntax::PredAtom;

/// The first head atom of a module that no pattern of its statement
/// matches, if any.
pub fn simple_module_witness(m: &Module) -> Option<PredAtom> {
    for rule in m.pi.rules() {
        let Some(head) = rule.head.atom() else { continue };
        let matched = m
            .kappa
            .patterns(&head.predicate())
            .iter()
            .any(|u| pattern_match(u, &head.args).is_some());
        if !matched {
            return Some(head.clone());
        }
    }
    None
}

pub fn is_simple_module(m: &Module) -> bool {
    simple_module_witness(m).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    ModuleNotSimple,
    SccSpansModules,
    TuplesUnify,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::ModuleNotSimple => "module-not-simple",
            ViolationKind::SccSpansModules => "scc-spans-modules",
            ViolationKind::TuplesUnify => "tuples-unify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coherent {
            return writeln!(f, "coherent");
        }
        writeln!(f, "not coherent")?;
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Simple modules, strongly connected components inside single modules,
/// and no two modules with unifying patterns for the same predicate. Purely
/// syntactic.
pub fn is_coherent(p: &ModularProgram) -> CoherenceReport {
    let mut violations = Vec::new();
    for (i, m) in p.modules.iter().enumerate() {
        if let Some(atom) = simple_module_witness(m) {
            violations.push(Violation {
                kind: ViolationKind::ModuleNotSimple,
                detail: format!("module {i} ({}): no pattern matches head {atom}", m.label),
            });
        }
    }
    let graph = DependencyGraph::new(p);
    for comp in graph.sccs() {
        let first = graph.vertices[comp[0]].module;
        if comp.iter().any(|&v| graph.vertices[v].module != first) {
            let vs: Vec<String> = comp.iter().map(|&v| graph.vertices[v].to_string()).collect();
            violations.push(Violation {
                kind: ViolationKind::SccSpansModules,
                detail: format!("{{{}}}", vs.join(", ")),
            });
        }
    }
    for pred in p.signature() {
        for (i, mi) in p.modules.iter().enumerate() {
            for (j, mj) in p.modules.iter().enumerate().skip(i + 1) {
                for u in mi.kappa.patterns(pred) {
                    for w in mj.kappa.patterns(pred) {
                        if patterns_unify(u, w).is_some() {
                            violations.push(Violation {
                                kind: ViolationKind::TuplesUnify,
                                detail: format!("{pred}: {u} of module {i} and {w} of module {j}"),
                            });
                        }
                    }
                }
            }
        }
    }
    CoherenceReport {
        coherent: violations.is_empty(),
        violations,
    }
}
