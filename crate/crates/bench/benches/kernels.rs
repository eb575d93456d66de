use brokerage_bench::fixture;
use brokerage_core::dynamics::{run_ip, IpRun};
use brokerage_core::experiment::fig1;
use brokerage_core::generators::{Generator, Model, ModelParams};
use brokerage_core::graph::{betweenness_indexed, Eccentricities};
use brokerage_core::{RsetMode, TacticKind, VertexId};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn centers(c: &mut Criterion) {
    let mut group = c.benchmark_group("eccentricities");
    for n in [200, 500, 1000] {
        let g = fixture(Model::Ba, n, 1);
        group.bench_with_input(BenchmarkId::new("bounded", n), &g, |b, g| {
            b.iter(|| Eccentricities::compute(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("exhaustive", n), &g, |b, g| {
            b.iter(|| Eccentricities::compute_exhaustive(black_box(g)))
        });
    }
    group.finish();
}

fn betweenness(c: &mut Criterion) {
    let mut group = c.benchmark_group("betweenness");
    for n in [200, 500] {
        let g = fixture(Model::Onion, n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| betweenness_indexed(black_box(g)))
        });
    }
    group.finish();
}

fn integration(c: &mut Criterion) {
    c.bench_function("reference_scenario", |b| b.iter(|| fig1(RsetMode::Example).unwrap()));

    let params = ModelParams::new(Model::RichClub, 6).size(500).seed(3);
    let mut gen = Generator::new(params).unwrap();
    let g = gen.build_initial().unwrap();
    let u = VertexId(g.max_id().unwrap().0 + 1);
    let mut group = c.benchmark_group("ip_richclub_500");
    group.sample_size(10);
    for tactic in [TacticKind::RMax, TacticKind::RBtw, TacticKind::Muf] {
        group.bench_function(tactic.to_string(), |b| {
            b.iter(|| {
                let mut trace = Generator::new(params.seed(4)).unwrap();
                run_ip(&IpRun::new(g.clone(), u, tactic), &mut trace).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, centers, betweenness, integration);
criterion_main!(benches);
