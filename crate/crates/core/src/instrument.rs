//! Per-thread operation counters, used to assert that syntactic analyses never
//! touch the semantics and to measure how their cost scales.

use std::cell::Cell;

thread_local! {
    static SEMANTIC: Cell<u64> = const { Cell::new(0) };
    static UNIFY: Cell<u64> = const { Cell::new(0) };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Interpretations built, programs grounded, stability or closure checks.
    pub semantic_evaluations: u64,
    /// Pattern matching and unification calls.
    pub unification_steps: u64,
}

pub fn reset() {
    SEMANTIC.with(|c| c.set(0));
    UNIFY.with(|c| c.set(0));
}

pub fn snapshot() -> Counters {
    Counters {
        semantic_evaluations: SEMANTIC.with(Cell::get),
        unification_steps: UNIFY.with(Cell::get),
    }
}

pub(crate) fn semantic() {
    SEMANTIC.with(|c| c.set(c.get() + 1));
}

pub(crate) fn unification() {
    UNIFY.with(|c| c.set(c.get() + 1));
}
