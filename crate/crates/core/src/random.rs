//! Seeded generators of small programs for property tests, the acceptance
//! suite and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::engine::{relevant_base, Domain};
use crate::instantiate::{ModularProgram, Module};
use crate::intensional::{IntensionalityStatement, Pattern};
use crate::modular::is_coherent;
use crate::syntax::{Predicate, Program, Term};
use crate::text::parse_rules;

/// A single program with its statement and domain.
#[derive(Clone, Debug)]
pub struct Case {
    pub kappa: IntensionalityStatement,
    pub pi: Program,
    pub dom: Domain,
}

fn pattern(elems: Vec<Term>) -> Pattern {
    Pattern::new(elems).expect("generated patterns are linear")
}

fn var(i: usize) -> Term {
    Term::var(crate::intensional::position_var(i))
}

fn literal(rng: &mut impl Rng, atom: &str) -> String {
    match rng.gen_range(0..6) {
        0..=2 => atom.to_string(),
        3 | 4 => format!("not {atom}"),
        _ => format!("not not {atom}"),
    }
}

/// Rules over `p/1`, `r/1` and `a/0` with numerals from `0..=hi`, using
/// every kind of body literal and constraints. The domain is `0..=hi`, so
/// the relevant base has at most `2 * (hi + 1) + 1` atoms.
pub fn ground_case(rng: &mut impl Rng, hi: i64) -> Case {
    let atom = |rng: &mut dyn rand::RngCore| -> String {
        match rng.gen_range(0..5) {
            0 => "a".to_string(),
            1 | 2 => format!("p({})", rng.gen_range(0..=hi)),
            _ => format!("r({})", rng.gen_range(0..=hi)),
        }
    };
    let mut text = String::new();
    for _ in 0..rng.gen_range(0..7) {
        let head = if rng.gen_bool(0.15) { String::new() } else { atom(rng) };
        let body: Vec<String> = (0..rng.gen_range(0..4))
            .map(|_| {
                let a = atom(rng);
                literal(rng, &a)
            })
            .collect();
        if head.is_empty() && body.is_empty() {
            continue;
        }
        if body.is_empty() {
            text.push_str(&format!("{head}.\n"));
        } else {
            text.push_str(&format!("{head} :- {}.\n", body.join(", ")));
        }
    }
    if rng.gen_bool(0.3) {
        text.push_str("p(X) :- r(X), not a.\n");
    }
    let pi = parse_rules(&text).expect("generated text parses");
    let mut kappa = IntensionalityStatement::new();
    for name in ["p", "r"] {
        let pred = Predicate::new(name, 1);
        match rng.gen_range(0..4) {
            0 => {
                kappa.insert(pred, pattern(vec![var(0)])).expect("arity 1");
            }
            1 => {}
            _ => {
                for c in 0..=hi {
                    if rng.gen_bool(0.5) {
                        kappa.insert(pred.clone(), pattern(vec![Term::num(c)])).expect("arity 1");
                    }
                }
            }
        }
    }
    if rng.gen_bool(0.6) {
        kappa.insert(Predicate::new("a", 0), pattern(vec![])).expect("arity 0");
    }
    Case {
        kappa,
        pi,
        dom: Domain::new(0, hi).expect("0 <= hi"),
    }
}

/// A global statement and module statements for one predicate, built from
/// patterns over the variables and the constants `0, 1, 2, a`.
pub fn pattern_configuration(
    rng: &mut impl Rng,
) -> (IntensionalityStatement, Vec<IntensionalityStatement>, Predicate) {
    let arity = rng.gen_range(1..=2);
    let pred = Predicate::new("q", arity);
    let pool = [Term::num(0), Term::num(1), Term::num(2), Term::sym("a")];
    let random_pattern = |rng: &mut dyn rand::RngCore| {
        pattern(
            (0..arity)
                .map(|i| {
                    if rng.gen_bool(0.35) {
                        var(i)
                    } else {
                        pool.choose(rng).expect("nonempty").clone()
                    }
                })
                .collect(),
        )
    };
    let statement = |rng: &mut dyn rand::RngCore, max: usize| {
        let mut k = IntensionalityStatement::new();
        for _ in 0..rng.gen_range(0..=max) {
            k.insert(pred.clone(), random_pattern(rng)).expect("arity matches");
        }
        k
    };
    let global = statement(rng, 4);
    let modules = (0..rng.gen_range(1..=3)).map(|_| statement(rng, 2)).collect();
    (global, modules, pred)
}

/// A random coherent modular program over at most two predicates and the
/// domain `0..=3`, with a relevant base of at most `max_base` atoms on the
/// union side. Retries until one is found.
pub fn coherent_modular(rng: &mut impl Rng, max_base: usize) -> (ModularProgram, Domain) {
    loop {
        if let Some(found) = try_coherent_modular(rng, max_base) {
            return found;
        }
    }
}

fn try_coherent_modular(rng: &mut impl Rng, max_base: usize) -> Option<(ModularProgram, Domain)> {
    let dom = Domain::new(0, 3).expect("valid");
    let n = rng.gen_range(1..=3);
    let preds: Vec<Predicate> = if rng.gen_bool(0.5) {
        vec![Predicate::new("p", 1), Predicate::new("q", 1)]
    } else {
        vec![Predicate::new("p", 1), Predicate::new("q", 2)]
    };
    let mut global = IntensionalityStatement::new();
    let mut locals = vec![IntensionalityStatement::new(); n];
    for pred in &preds {
        // Split the defined region among the modules: either one module owns
        // the whole predicate, or modules own disjoint constants in the last
        // position.
        if rng.gen_bool(0.3) {
            let owner = rng.gen_range(0..n);
            let all = Pattern::all_variables(pred.arity);
            global.insert(pred.clone(), all.clone()).ok()?;
            locals[owner].insert(pred.clone(), all).ok()?;
            continue;
        }
        for c in 0..=3 {
            let mut elems: Vec<Term> = (0..pred.arity - 1).map(var).collect();
            elems.push(Term::num(c));
            let u = pattern(elems);
            match rng.gen_range(0..4) {
                0 => {}
                1 => {
                    global.insert(pred.clone(), u).ok()?;
                }
                _ => {
                    global.insert(pred.clone(), u.clone()).ok()?;
                    locals[rng.gen_range(0..n)].insert(pred.clone(), u).ok()?;
                }
            }
        }
    }
    let arg = |rng: &mut dyn rand::RngCore, vars: bool| -> String {
        if vars && rng.gen_bool(0.4) {
            "X".to_string()
        } else {
            rng.gen_range(0..=3).to_string()
        }
    };
    let atom_of = |rng: &mut dyn rand::RngCore, pred: &Predicate, vars: bool| -> String {
        let args: Vec<String> = (0..pred.arity).map(|_| arg(rng, vars)).collect();
        format!("{}({})", pred.name, args.join(","))
    };
    let mut modules = Vec::with_capacity(n);
    for (i, kappa) in locals.into_iter().enumerate() {
        let mut text = String::new();
        let owned: Vec<(&Predicate, &Pattern)> = kappa
            .iter()
            .flat_map(|(p, us)| us.iter().map(move |u| (p, u)))
            .collect();
        for _ in 0..rng.gen_range(0..4) {
            let Some(&(pred, u)) = owned.choose(rng) else { break };
            let uses_var = rng.gen_bool(0.5);
            let head_args: Vec<String> = u
                .elems()
                .iter()
                .map(|t| match t {
                    Term::Var(_) if uses_var && rng.gen_bool(0.6) => "X".to_string(),
                    Term::Var(_) => rng.gen_range(0..=3).to_string(),
                    t => t.to_string(),
                })
                .collect();
            let head = format!("{}({})", pred.name, head_args.join(","));
            let mut body = Vec::new();
            if head.contains('X') {
                // Binds X for safety.
                let pred = preds.choose(rng).expect("nonempty");
                let rest: Vec<String> = (1..pred.arity).map(|_| arg(rng, false)).collect();
                let args: Vec<String> = std::iter::once("X".to_string()).chain(rest).collect();
                body.push(format!("{}({})", pred.name, args.join(",")));
            }
            for _ in 0..rng.gen_range(0..3) {
                let pred = preds.choose(rng).expect("nonempty");
                let a = atom_of(rng, pred, false);
                body.push(literal(rng, &a));
            }
            if body.is_empty() {
                text.push_str(&format!("{head}.\n"));
            } else {
                text.push_str(&format!("{head} :- {}.\n", body.join(", ")));
            }
        }
        let pi = parse_rules(&text).ok()?;
        modules.push(Module::new(format!("m{i}"), kappa, pi));
    }
    let p = ModularProgram::new(global, modules).ok()?;
    if !is_coherent(&p).coherent {
        return None;
    }
    if relevant_base(&p.kappa, &p.union_program(), &dom).ok()?.len() > max_base {
        return None;
    }
    Some((p, dom))
}

/// `modules` modules of `rules` rules each over `q/2`: module `i` defines
/// the tuples `⟨X, i⟩` from module `i - 1`. Coherent by construction.
pub fn chain_program(modules: usize, rules: usize) -> ModularProgram {
    let pred = Predicate::new("q", 2);
    let mut global = IntensionalityStatement::new();
    global.insert(pred.clone(), Pattern::all_variables(2)).expect("arity 2");
    let mut out = Vec::with_capacity(modules);
    for i in 0..modules {
        let mut kappa = IntensionalityStatement::new();
        kappa
            .insert(pred.clone(), pattern(vec![var(0), Term::num(i as i64)]))
            .expect("arity 2");
        let mut text = String::new();
        for j in 0..rules {
            if i == 0 {
                text.push_str(&format!("q({j},0).\n"));
            } else {
                match j % 3 {
                    0 => text.push_str(&format!("q(X,{i}) :- q(X,{}).\n", i - 1)),
                    1 => text.push_str(&format!("q({j},{i}) :- q({j},{}), not q({},{}).\n", i - 1, j + 1, i - 1)),
                    _ => text.push_str(&format!("q(X,{i}) :- q(X,{}), q({j},{}).\n", i - 1, i - 1)),
                }
            }
        }
        let pi = parse_rules(&text).expect("generated text parses");
        out.push(Module::new(format!("m{i}"), kappa, pi));
    }
    ModularProgram::new(global, out).expect("module patterns are covered")
}
