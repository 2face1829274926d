//! Backtracking enumeration of stable models with propagation, every leaf
//! verified by the reduct test of each component.
//!
//! Propagation only removes assignments that cannot be stable: stable models
//! are classical models, and a true intensional atom needs a rule with that
//! head whose body is true.

use super::compiled::{CRule, Component, Instance};

const UNKNOWN: i8 = -1;

fn lit_value(vals: &[i8], atom: usize, positive: bool) -> i8 {
    match vals[atom] {
        UNKNOWN => UNKNOWN,
        v if positive => v,
        v => 1 - v,
    }
}

/// Literals of a rule body as (atom, polarity). `not not a` has the polarity
/// of `a`.
fn body(r: &CRule) -> impl Iterator<Item = (usize, bool)> + '_ {
    r.pos
        .iter()
        .map(|&a| (a, true))
        .chain(r.neg.iter().map(|&a| (a, false)))
        .chain(r.negneg.iter().map(|&a| (a, true)))
}

struct Search<'a> {
    inst: &'a Instance,
    results: Vec<Vec<bool>>,
}

fn set(vals: &mut [i8], atom: usize, value: bool, changed: &mut bool) -> bool {
    let v = value as i8;
    match vals[atom] {
        UNKNOWN => {
            vals[atom] = v;
            *changed = true;
            true
        }
        old => old == v,
    }
}

fn propagate_component(c: &Component, vals: &mut [i8], changed: &mut bool) -> bool {
    for r in &c.rules {
        let mut unknown = None;
        let mut unknowns = 0;
        let mut falsified = false;
        for (a, pol) in body(r) {
            match lit_value(vals, a, pol) {
                0 => {
                    falsified = true;
                    break;
                }
                UNKNOWN => {
                    unknowns += 1;
                    unknown = Some((a, pol));
                }
                _ => {}
            }
        }
        if falsified {
            continue;
        }
        let head = r.head.map_or(0, |h| vals[h]);
        if unknowns == 0 {
            match r.head {
                None => return false,
                Some(h) => {
                    if !set(vals, h, true, changed) {
                        return false;
                    }
                }
            }
        } else if unknowns == 1 && head == 0 {
            let (a, pol) = unknown.expect("one unknown literal");
            if !set(vals, a, !pol, changed) {
                return false;
            }
        }
    }
    for a in 0..vals.len() {
        if !c.intensional[a] || vals[a] == 0 {
            continue;
        }
        let mut support = c.by_head[a]
            .iter()
            .filter(|&&i| body(&c.rules[i]).all(|(b, pol)| lit_value(vals, b, pol) != 0));
        let first = support.next();
        let second = support.next();
        match (first, second) {
            (None, _) => {
                if !set(vals, a, false, changed) {
                    return false;
                }
            }
            (Some(&i), None) if vals[a] == 1 => {
                for (b, pol) in body(&c.rules[i]) {
                    if !set(vals, b, pol, changed) {
                        return false;
                    }
                }
            }
            _ => {}
        }
    }
    true
}

impl Search<'_> {
    fn propagate(&self, vals: &mut [i8]) -> bool {
        loop {
            let mut changed = false;
            for c in &self.inst.components {
                if !propagate_component(c, vals, &mut changed) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, mut vals: Vec<i8>) {
        if !self.propagate(&mut vals) {
            return;
        }
        match self.inst.base.iter().find(|&&a| vals[a] == UNKNOWN) {
            Some(&a) => {
                let mut t = vals.clone();
                t[a] = 1;
                self.run(t);
                vals[a] = 0;
                self.run(vals);
            }
            None => {
                let truth: Vec<bool> = vals.iter().map(|&v| v == 1).collect();
                if self.inst.components.iter().all(|c| c.reduct_stable(&truth)) {
                    self.results.push(truth);
                }
            }
        }
    }
}

/// All assignments over the instance's atoms that are stable for every
/// component, respect `forced_false`, and agree with `fixed`. Atoms outside
/// the base are false unless `fixed` says otherwise.
pub(crate) fn enumerate(inst: &Instance, fixed: &[Option<bool>]) -> Vec<Vec<bool>> {
    let mut vals = vec![0i8; inst.len()];
    for &a in &inst.base {
        vals[a] = UNKNOWN;
    }
    for (a, f) in fixed.iter().enumerate() {
        if let Some(v) = f {
            vals[a] = *v as i8;
        }
    }
    for (a, &forced) in inst.forced_false.iter().enumerate() {
        if forced {
            if vals[a] == 1 {
                return Vec::new();
            }
            vals[a] = 0;
        }
    }
    let mut s = Search {
        inst,
        results: Vec::new(),
    };
    s.run(vals);
    s.results
}
