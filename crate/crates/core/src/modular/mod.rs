//! Modular programs: answer sets, the dependency graph, coherence, and the
//! comparison with the union of all module rules.

mod coherence;
mod compare;
mod graph;
mod semantics;
mod topo;

pub use coherence::{is_coherent, is_simple_module, simple_module_witness, CoherenceReport, Violation, ViolationKind};
pub use compare::{theorem1_check, theorem1_check_with, ComparisonReport};
pub use graph::{DependencyGraph, Vertex};
pub use semantics::{
    closure_holds, is_model_of_module, is_modular_answer_set, is_modular_answer_set_with, modular_answer_sets,
    modular_answer_sets_with,
};
pub use topo::{evaluation_order, is_admissible};

pub use crate::instantiate::ModularProgram;

/// The union of all module rules.
pub fn union_program(p: &ModularProgram) -> crate::syntax::Program {
    p.union_program()
}

pub fn dependency_graph(p: &ModularProgram) -> DependencyGraph {
    DependencyGraph::new(p)
}
