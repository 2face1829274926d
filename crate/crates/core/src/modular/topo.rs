//! Module-by-module evaluation. Modules are solved in dependency order, each
//! one seeing the atoms decided by the modules it depends on as fixed input.
//! Every resulting candidate is checked against the definition before it is
//! returned.

use std::collections::BTreeSet;

use super::coherence::is_coherent;
use super::graph::{tarjan, DependencyGraph};
use super::semantics::instance;
use crate::engine::compiled::Instance;
use crate::engine::search;
use crate::engine::{Domain, Interpretation, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::instantiate::ModularProgram;

/// The evaluation order (dependencies first) when the program is coherent
/// and its module-level dependency graph is acyclic.
pub fn evaluation_order(p: &ModularProgram) -> std::result::Result<Vec<usize>, String> {
    let report = is_coherent(p);
    if !report.coherent {
        return Err(format!("not coherent ({})", report.violations[0]));
    }
    let graph = DependencyGraph::new(p);
    let n = p.modules.len();
    let mut succ = vec![BTreeSet::new(); n];
    for &(a, b) in &graph.edges {
        let (i, j) = (graph.vertices[a].module, graph.vertices[b].module);
        if i != j {
            succ[i].insert(j);
        }
    }
    let succ: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();
    let mut order = Vec::with_capacity(n);
    for comp in tarjan(&succ) {
        if comp.len() > 1 {
            return Err(format!("modules {comp:?} depend on each other"));
        }
        order.push(comp[0]);
    }
    Ok(order)
}

pub fn is_admissible(p: &ModularProgram) -> bool {
    evaluation_order(p).is_ok()
}

fn module_view(inst: &Instance, m: usize) -> Instance {
    let comp = &inst.components[m];
    let mut mark = comp.intensional.clone();
    for r in &comp.rules {
        for a in r.head.iter().chain(&r.pos).chain(&r.neg).chain(&r.negneg) {
            mark[*a] = true;
        }
    }
    Instance {
        atoms: inst.atoms.clone(),
        base: (0..inst.len()).filter(|&a| mark[a]).collect(),
        components: vec![comp.clone()],
        forced_false: inst.forced_false.clone(),
    }
}

pub fn answer_sets(p: &ModularProgram, dom: &Domain) -> Result<Vec<Interpretation>> {
    let order = evaluation_order(p).map_err(|reason| Error::EngineNotApplicable {
        engine: "topo",
        reason,
    })?;
    crate::instrument::semantic();
    let inst = instance(p, dom, &[])?;
    let n = inst.len();
    let mut partials: Vec<Vec<Option<bool>>> = vec![vec![None; n]];
    for m in order {
        let view = module_view(&inst, m);
        let mut next = Vec::new();
        for partial in &partials {
            for truth in search::enumerate(&view, partial) {
                let mut decided = partial.clone();
                for &a in &view.base {
                    decided[a] = Some(truth[a]);
                }
                next.push(decided);
            }
        }
        partials = next;
    }
    let mut out = BTreeSet::new();
    for partial in &partials {
        // Extensional atoms that no module mentions.
        let free: Vec<usize> = inst
            .base
            .iter()
            .copied()
            .filter(|&a| partial[a].is_none() && !inst.forced_false[a])
            .collect();
        if free.len() > DEFAULT_CAP {
            return Err(Error::Capacity {
                engine: "topo",
                size: free.len(),
                cap: DEFAULT_CAP,
            });
        }
        for mask in 0u64..1 << free.len() {
            let mut truth: Vec<bool> = partial.iter().map(|v| v.unwrap_or(false)).collect();
            for (j, &a) in free.iter().enumerate() {
                truth[a] = mask >> j & 1 == 1;
            }
            let closed = (0..n).all(|a| !(truth[a] && inst.forced_false[a]));
            if closed && inst.components.iter().all(|c| c.reduct_stable(&truth)) {
                out.insert(inst.interpretation(&truth));
            }
        }
    }
    Ok(out.into_iter().collect())
}
