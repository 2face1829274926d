use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::instantiate::ModularProgram;
use crate::intensional::{may_unify, IntensionalityStatement};
use crate::syntax::{Predicate, Term};

/// A vertex `(p, i)`: predicate `p` as defined by module `i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub predicate: Predicate,
    pub module: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.predicate.name, self.module)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    pub vertices: Vec<Vertex>,
    /// Pairs of indices into `vertices`.
    pub edges: BTreeSet<(usize, usize)>,
}

/// Modules whose statement has a pattern for `pred` that may unify with the
/// rule tuple `args`.
fn owners<'a>(
    kappas: &'a [IntensionalityStatement],
    pred: &'a Predicate,
    args: &'a [Term],
) -> impl Iterator<Item = usize> + 'a {
    kappas
        .iter()
        .enumerate()
        .filter(move |(_, k)| k.patterns(pred).iter().any(|u| may_unify(u, args)))
        .map(|(i, _)| i)
}

impl DependencyGraph {
    /// Vertices are all pairs of a signature predicate and a module index.
    /// For every rule in any module, every head tuple and positive body
    /// tuple that may be instances of patterns of modules `i` and `j` yield
    /// an edge from the head vertex to the body vertex. Loops are left out.
    pub fn new(p: &ModularProgram) -> DependencyGraph {
        let n = p.modules.len();
        let mut vertices = Vec::new();
        let mut index = BTreeMap::new();
        for pred in p.signature() {
            for module in 0..n {
                index.insert((pred.clone(), module), vertices.len());
                vertices.push(Vertex {
                    predicate: pred.clone(),
                    module,
                });
            }
        }
        let kappas: Vec<IntensionalityStatement> = p.module_kappas();
        let mut edges = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for m in &p.modules {
            for rule in m.pi.rules() {
                let Some(head) = rule.head.atom() else { continue };
                let hp = head.predicate();
                let heads: Vec<usize> = owners(&kappas, &hp, &head.args).collect();
                if heads.is_empty() {
                    continue;
                }
                for lit in &rule.body {
                    let Some(b) = lit.positive_pred() else { continue };
                    // Rules repeated across modules add nothing new.
                    if !seen.insert((head.clone(), b.clone())) {
                        continue;
                    }
                    let bp = b.predicate();
                    for j in owners(&kappas, &bp, &b.args) {
                        for &i in &heads {
                            let from = index[&(hp.clone(), i)];
                            let to = index[&(bp.clone(), j)];
                            if from != to {
                                edges.insert((from, to));
                            }
                        }
                    }
                }
            }
        }
        DependencyGraph { vertices, edges }
    }

    pub fn edge_list(&self) -> Vec<(&Vertex, &Vertex)> {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.vertices[a], &self.vertices[b]))
            .collect()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        succ
    }

    /// Strongly connected components by Tarjan's algorithm, each as sorted
    /// vertex indices, in reverse topological order of the condensation.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        tarjan(&self.successors())
    }
}

impl fmt::Display for DependencyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(Vertex::to_string).collect();
        writeln!(f, "vertices {}", vs.join(" "))?;
        for (a, b) in self.edge_list() {
            writeln!(f, "edge {a} -> {b}")?;
        }
        Ok(())
    }
}

/// Iterative Tarjan, linear in vertices plus edges.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // Frames of (vertex, next successor position).
        let mut frames = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("vertex on stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}
