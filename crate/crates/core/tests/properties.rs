use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use parmod_core::engine::{
    check_support, enumerate_kappa_stable, enumerate_kappa_stable_with, ht_satisfies, is_kappa_stable,
    relevant_base, Domain, Engine, Formula, HtInterpretation, Interpretation, Options,
};
use parmod_core::instantiate::{collective_modular, collective_union};
use parmod_core::intensional::{check_requirement, patterns_unify, IntensionalityStatement, Pattern};
use parmod_core::modular::{is_admissible, modular_answer_sets, theorem1_check};
use parmod_core::random;
use parmod_core::{
    parse_control, parse_program, parse_rules, ArithOp, Atom, Comparison, Head, Literal, PredAtom,
    Program, Relation, Rule, Term,
};

fn int_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (-9i64..10).prop_map(Term::num),
        prop::sample::select(vec!["N", "M"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (
            prop::sample::select(vec![ArithOp::Add, ArithOp::Sub, ArithOp::Mul]),
            inner.clone(),
            inner,
        )
            .prop_map(|(op, l, r)| Term::arith(op, l, r))
    })
}

fn general_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        int_term(),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::sym),
        prop::sample::select(vec!["X", "Y"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop::collection::vec(inner, 1..3).prop_map(|args| Term::func("f", args))
    })
}

fn pred_atom() -> impl Strategy<Value = PredAtom> {
    (
        prop::sample::select(vec!["p", "q", "r"]),
        prop::collection::vec(general_term(), 0..3),
    )
        .prop_map(|(name, args)| PredAtom::new(name, args))
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        3 => (pred_atom(), 0u8..3).prop_map(|(a, n)| Literal::new(Atom::Pred(a), n).unwrap()),
        1 => (
            prop::sample::select(vec![
                Relation::Eq, Relation::Ne, Relation::Lt, Relation::Le, Relation::Gt, Relation::Ge,
            ]),
            general_term(),
            general_term(),
            0u8..2,
        )
            .prop_map(|(rel, l, r, n)| Literal::new(Atom::Cmp(Comparison::new(rel, l, r)), n).unwrap()),
    ]
}

fn rule() -> impl Strategy<Value = Option<Rule>> {
    (
        prop::option::weighted(0.85, pred_atom()),
        prop::collection::vec(literal(), 0..4),
    )
        .prop_map(|(head, body)| {
            let head = head.map_or(Head::Falsity, Head::Atom);
            if head == Head::Falsity && body.is_empty() {
                return None;
            }
            Rule::new(head, body).ok()
        })
}

fn ground_arith() -> impl Strategy<Value = Term> {
    let leaf = (-50i64..50).prop_map(Term::num);
    leaf.prop_recursive(4, 16, 2, |inner| {
        (
            prop::sample::select(vec![ArithOp::Add, ArithOp::Sub, ArithOp::Mul]),
            inner.clone(),
            inner,
        )
            .prop_map(|(op, l, r)| Term::arith(op, l, r))
    })
}

fn precomputed() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (-5i64..6).prop_map(Term::num),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::sym),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        (
            prop::sample::select(vec!["f", "g"]),
            prop::collection::vec(inner, 1..3),
        )
            .prop_map(|(n, args)| Term::func(n, args))
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grid of argument values: every pattern constant plus values no pattern
/// mentions.
fn grid(arity: usize) -> Vec<Vec<Term>> {
    let values: Vec<Term> = (-2..=2)
        .map(Term::num)
        .chain([Term::sym("a"), Term::sym("b")])
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every interpretation over `base` that satisfies `formulas` classically
/// and is ⊆-minimal among them.
fn minimal_models(base: &[PredAtom], formulas: &[Formula<PredAtom>]) -> Vec<BTreeSet<PredAtom>> {
    let models: Vec<BTreeSet<PredAtom>> = (0u32..1 << base.len())
        .map(|mask| {
            base.iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect::<BTreeSet<_>>()
        })
        .filter(|m| formulas.iter().all(|f| f.classical(&|a: &PredAtom| m.contains(a))))
        .collect();
    models
        .iter()
        .filter(|m| !models.iter().any(|n| n != *m && n.is_subset(m)))
        .cloned()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rules_survive_printing_and_parsing(r in rule()) {
        let Some(r) = r else { return Ok(()) };
        let text = r.to_string();
        let parsed = parse_rules(&text).unwrap();
        prop_assert_eq!(parsed.rules().next().unwrap(), &r, "{}", text);
    }

    #[test]
    fn simplification_is_idempotent_and_keeps_the_value(t in ground_arith()) {
        let s = t.simplify();
        prop_assert_eq!(s.simplify(), s.clone());
        match (t.eval_ground(), s.eval_ground()) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn simplification_keeps_variables_symbolic(t in int_term()) {
        let s = t.simplify();
        prop_assert_eq!(s.variables(), t.variables());
        if t.variables().is_empty() {
            prop_assert!(s.is_precomputed() || s.eval_ground().is_err());
        }
    }

    #[test]
    fn term_order_is_total(a in precomputed(), b in precomputed(), c in precomputed()) {
        use std::cmp::Ordering;
        let ab = a.compare(&b).unwrap();
        prop_assert_eq!(ab.reverse(), b.compare(&a).unwrap());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && b.compare(&c).unwrap() != Ordering::Greater {
            prop_assert_ne!(a.compare(&c).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn integers_precede_symbols_and_symbols_precede_functions(
        n in -100i64..100, m in -100i64..100, s in "[a-z]{1,3}", t in precomputed(),
    ) {
        use std::cmp::Ordering;
        prop_assert_eq!(Term::num(n).compare(&Term::num(m)).unwrap(), n.cmp(&m));
        prop_assert_eq!(Term::num(n).compare(&Term::sym(s.clone())).unwrap(), Ordering::Less);
        let f = Term::func("f", vec![t]);
        prop_assert_eq!(Term::sym(s).compare(&f).unwrap(), Ordering::Less);
    }

    #[test]
    fn lambda_agrees_with_its_formula(seed in any::<u64>()) {
        let (global, _, pred) = random::pattern_configuration(&mut rng(seed));
        let lambda = global.lambda(&pred);
        for args in grid(pred.arity) {
            let atom = PredAtom::new(pred.name.clone(), args.clone());
            let f: Formula<PredAtom> = lambda.instantiate(&args);
            prop_assert_eq!(global.lambda_holds(&atom), f.classical(&|_: &PredAtom| false));
            prop_assert_eq!(lambda.holds(&args), global.lambda_holds(&atom));
        }
    }

    #[test]
    fn requirement_check_agrees_with_the_grid(seed in any::<u64>()) {
        let (global, modules, pred) = random::pattern_configuration(&mut rng(seed));
        let valid = grid(pred.arity).iter().all(|args| {
            let atom = PredAtom::new(pred.name.clone(), args.clone());
            modules.iter().all(|k| !k.lambda_holds(&atom) || global.lambda_holds(&atom))
        });
        prop_assert_eq!(check_requirement(&global, &modules).is_ok(), valid);
    }

    #[test]
    fn pattern_unification_is_symmetric_and_sound(seed in any::<u64>()) {
        let (a, b, pred) = random::pattern_configuration(&mut rng(seed));
        let mut pats: Vec<Pattern> = a.patterns(&pred).iter().cloned().collect();
        for k in &b {
            pats.extend(k.patterns(&pred).iter().cloned());
        }
        for u in &pats {
            for w in &pats {
                let uw = patterns_unify(u, w);
                prop_assert_eq!(uw.is_some(), patterns_unify(w, u).is_some());
                if let Some(theta) = uw {
                    prop_assert_eq!(u.apply(&theta.left), w.apply(&theta.right));
                }
                // A common ground instance on the grid exists iff they unify.
                let common = grid(pred.arity).iter().any(|g| u.matches_ground(g) && w.matches_ground(g));
                prop_assert_eq!(common, patterns_unify(u, w).is_some());
            }
        }
    }

    #[test]
    fn ht_models_are_classical_models(
        f in formula(), here_mask in any::<u8>(), there_mask in any::<u8>(),
    ) {
        let atoms = atom_pool();
        let there: Vec<PredAtom> =
            atoms.iter().enumerate().filter(|(j, _)| there_mask >> j & 1 == 1).map(|(_, a)| a.clone()).collect();
        let here: Vec<PredAtom> = there
            .iter()
            .enumerate()
            .filter(|(j, _)| here_mask >> j & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        let i = Interpretation::new(there).unwrap();
        let hi = HtInterpretation::new(here, i.clone()).unwrap();
        if ht_satisfies(&hi, &f) {
            prop_assert!(i.satisfies(&f));
        }
        prop_assert_eq!(ht_satisfies(&HtInterpretation::total(i.clone()), &f), i.satisfies(&f));
    }
}

fn atom_pool() -> Vec<PredAtom> {
    ["a", "b", "c", "d"].iter().map(|n| PredAtom::new(*n, vec![])).collect()
}

fn formula() -> impl Strategy<Value = Formula<PredAtom>> {
    let leaf = prop_oneof![
        Just(Formula::Bot),
        Just(Formula::Top),
        prop::sample::select(atom_pool()).prop_map(Formula::Atom),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::Or),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engines_agree_on_small_programs(seed in any::<u64>()) {
        let case = random::ground_case(&mut rng(seed), 2);
        let brute = enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Brute).unwrap();
        let reduct = enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Reduct).unwrap();
        prop_assert_eq!(&brute, &reduct, "{}\n{}", case.kappa, case.pi);
        if let Ok(fix) = enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Fixpoint) {
            prop_assert_eq!(fix, brute);
        }
    }

    #[test]
    fn membership_agrees_with_enumeration(seed in any::<u64>()) {
        let case = random::ground_case(&mut rng(seed), 1);
        let models = enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Reduct).unwrap();
        let base: Vec<PredAtom> = relevant_base(&case.kappa, &case.pi, &case.dom).unwrap().into_iter().collect();
        for mask in 0u32..1 << base.len() {
            let i = Interpretation::new(
                base.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, a)| a.clone()),
            )
            .unwrap();
            let member = is_kappa_stable(&i, &case.kappa, &case.pi, &case.dom).unwrap();
            prop_assert_eq!(member, models.contains(&i), "{}", i);
        }
    }

    #[test]
    fn true_intensional_atoms_are_supported(seed in any::<u64>()) {
        let case = random::ground_case(&mut rng(seed), 2);
        for i in enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Reduct).unwrap() {
            for a in i.atoms() {
                if case.kappa.lambda_holds(a) {
                    prop_assert!(check_support(&i, &case.kappa, &case.pi, a, &case.dom).unwrap(), "{} in {}", a, i);
                }
            }
        }
    }

    #[test]
    fn extensional_atoms_are_free_choices(seed in any::<u64>()) {
        // The models with a given extensional part are the ordinary stable
        // models of the program plus that part as facts, restricted to those
        // that do not derive further extensional atoms.
        let case = random::ground_case(&mut rng(seed), 1);
        let models = enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, Engine::Brute).unwrap();
        let mut sig = case.pi.predicates();
        sig.extend(case.kappa.predicates().cloned());
        let all = IntensionalityStatement::purely_intensional(&sig);
        let choices: Vec<PredAtom> = relevant_base(&case.kappa, &case.pi, &case.dom)
            .unwrap()
            .into_iter()
            .filter(|a| !case.kappa.lambda_holds(a))
            .collect();
        for mask in 0u32..1 << choices.len() {
            let chosen: BTreeSet<PredAtom> =
                choices.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, a)| a.clone()).collect();
            let mut pi = case.pi.clone();
            for a in &chosen {
                pi.insert(Rule::fact(a.clone()).unwrap());
            }
            let expected: BTreeSet<Interpretation> = enumerate_kappa_stable(&all, &pi, &case.dom, Engine::Brute)
                .unwrap()
                .into_iter()
                .filter(|i| i.atoms().iter().filter(|a| !case.kappa.lambda_holds(a)).cloned().collect::<BTreeSet<_>>() == chosen)
                .collect();
            let got: BTreeSet<Interpretation> = models
                .iter()
                .filter(|i| i.atoms().iter().filter(|a| !case.kappa.lambda_holds(a)).cloned().collect::<BTreeSet<_>>() == chosen)
                .cloned()
                .collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn positive_programs_have_their_least_model(seed in any::<u64>()) {
        let case = random::ground_case(&mut rng(seed), 2);
        let positive: Program = case
            .pi
            .rules()
            .filter(|r| r.body.iter().all(|l| l.negations == 0))
            .cloned()
            .collect();
        let all = IntensionalityStatement::purely_intensional(&positive.predicates());
        let fix = enumerate_kappa_stable(&all, &positive, &case.dom, Engine::Fixpoint).unwrap();
        let g = parmod_core::engine::ground(&positive, &case.dom).unwrap();
        let base: Vec<PredAtom> = g.relevant_base().into_iter().collect();
        let formulas: Vec<Formula<PredAtom>> = g.rules.iter().map(|r| r.to_formula()).collect();
        let minimal = minimal_models(&base, &formulas);
        prop_assert!(minimal.len() <= 1);
        let expected: Vec<Interpretation> =
            minimal.into_iter().map(|m| Interpretation::new(m).unwrap()).collect();
        prop_assert_eq!(fix, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coherent_programs_match_their_union(seed in any::<u64>()) {
        let (p, dom) = random::coherent_modular(&mut rng(seed), 12);
        let report = theorem1_check(&p, &dom, Engine::Brute).unwrap();
        prop_assert!(report.equal, "{}\n{}", p, report);
    }

    #[test]
    fn topological_evaluation_matches_the_definition(seed in any::<u64>()) {
        let (p, dom) = random::coherent_modular(&mut rng(seed), 12);
        prop_assume!(is_admissible(&p));
        let topo = modular_answer_sets(&p, &dom, Engine::Topo).unwrap();
        let brute = modular_answer_sets(&p, &dom, Engine::Brute).unwrap();
        prop_assert_eq!(topo, brute, "{}", p);
    }

    #[test]
    fn instantiation_commutes_with_union(n in 0i64..8, extra in prop::collection::vec(-3i64..10, 0..4)) {
        let r = parse_program(
            "#program base. q(0,0).\n#program property(k). q(N,k+1) :- q(N-1,k).\n#program twice(k,m). p(k*m) :- q(k,m).",
        )
        .unwrap();
        let mut overrides = BTreeMap::new();
        overrides.insert("n".to_string(), n);
        let mut text = String::from("const n = 0. use base. use property(k) for k in 0..n-1 allow empty.");
        for (i, e) in extra.iter().enumerate() {
            text.push_str(&format!(" use twice({e},{i})."));
        }
        let plan = parse_control(&text, &r, &overrides).unwrap();
        let union = collective_union(&r, &plan.specs).unwrap();
        let modular = collective_modular(&r, &plan).unwrap();
        prop_assert_eq!(modular.union_program(), union);
    }
}

#[test]
fn brute_engine_reports_capacity() {
    let case = random::ground_case(&mut rng(1), 20);
    let r = enumerate_kappa_stable_with(&case.kappa, &case.pi, &case.dom, Engine::Brute, Options { cap: 4 });
    let base = relevant_base(&case.kappa, &case.pi, &case.dom).unwrap();
    if base.len() > 4 {
        assert!(r.unwrap_err().is_capacity());
    }
}

#[test]
fn symbolic_constants_extend_the_general_domain() {
    let pi = parse_rules("p(a). q(X) :- p(X).").unwrap();
    let k = IntensionalityStatement::purely_intensional(&pi.predicates());
    let dom = Domain::for_program(0, 1, &pi).unwrap();
    let models = enumerate_kappa_stable(&k, &pi, &dom, Engine::Reduct).unwrap();
    let expected = Interpretation::new([
        PredAtom::new("p", vec![Term::sym("a")]),
        PredAtom::new("q", vec![Term::sym("a")]),
    ])
    .unwrap();
    assert_eq!(models, vec![expected]);
}
