use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use parmod_core::engine::{enumerate_kappa_stable, Domain};
use parmod_core::instantiate::{collective_union, plan_kappa};
use parmod_core::modular::is_coherent;
use parmod_core::random::{chain_program, ground_case};
use parmod_core::{parse_control, parse_program, Engine};

const PROPERTY: &str = include_str!("../../../programs/property.lp");
const PROPERTY_CTL: &str = include_str!("../../../programs/property.ctl");

fn property(c: &mut Criterion) {
    let program = parse_program(PROPERTY).unwrap();
    let mut group = c.benchmark_group("property_fixpoint");
    for n in [25i64, 50, 100] {
        let overrides = BTreeMap::from([("n".to_string(), n)]);
        let plan = parse_control(PROPERTY_CTL, &program, &overrides).unwrap();
        let pi = collective_union(&program, &plan.specs).unwrap();
        let kappa = plan_kappa(&plan, &pi).unwrap();
        let (lo, hi) = plan.domain.unwrap();
        let dom = Domain::for_program(lo, hi, &pi).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| enumerate_kappa_stable(&kappa, &pi, &dom, Engine::Fixpoint).unwrap())
        });
    }
    group.finish();
}

fn coherence(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherence_chain");
    for modules in [25usize, 50, 100] {
        let p = chain_program(modules, 2);
        group.bench_with_input(BenchmarkId::from_parameter(modules), &p, |b, p| {
            b.iter(|| black_box(is_coherent(p)))
        });
    }
    group.finish();
}

fn engines(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases: Vec<_> = (0..20).map(|_| ground_case(&mut rng, 4)).collect();
    let mut group = c.benchmark_group("random_ground");
    for engine in [Engine::Brute, Engine::Reduct] {
        group.bench_function(engine.name(), |b| {
            b.iter(|| {
                for case in &cases {
                    black_box(enumerate_kappa_stable(&case.kappa, &case.pi, &case.dom, engine).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, property, coherence, engines);
criterion_main!(benches);
