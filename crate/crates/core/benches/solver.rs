use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use avalanche_dg::dg::rhs;
use avalanche_dg::limiter::LimiterParams;
use avalanche_dg::stopping::StoppingParams;
use avalanche_dg::{
    run_cases, CellFlags, Discretization, Execution, InitialPile, Mesh, PhysicalParams, PileShape, RunConfig, Solver,
    StageSettings,
};

const SIZES: [usize; 3] = [256, 1024, 4096];

fn modes() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    if Execution::best_available().is_parallel() {
        v.push(("parallel", Execution::best_available()));
    }
    v
}

/// Case I chute with the pile spread over the incline, so every pass has
/// wet and dry cells.
fn setup(n: usize) -> (Discretization, avalanche_dg::ModalField) {
    let mesh = Mesh::uniform(30.0, n).unwrap();
    let disc = Discretization::new(mesh, PhysicalParams::from_degrees(35.0, 30.0, 30.0).unwrap(), 2).unwrap();
    let pile = InitialPile {
        shape: PileShape::CircularCap,
        radius: 4.0,
        center: 12.0,
    };
    (disc, pile.project(&mesh, 2).unwrap())
}

fn bench_rhs(c: &mut Criterion) {
    let mut group = c.benchmark_group("rhs");
    for n in SIZES {
        let (disc, field) = setup(n);
        let flags = vec![CellFlags::wet_flowing(); n];
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| rhs(black_box(&disc), black_box(&field), &flags, exec))
            });
        }
    }
    group.finish();
}

fn bench_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("ssp_rk3_step");
    for n in SIZES {
        for (name, exec) in modes() {
            let (disc, field) = setup(n);
            let settings = StageSettings {
                limiter: LimiterParams::default(),
                stopping: StoppingParams::default(),
                exec,
            };
            let solver = Solver::new(disc, field, settings);
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter_batched(
                    || solver.clone(),
                    |mut s| {
                        s.step(1e-4, 1e-4);
                        s
                    },
                    criterion::BatchSize::LargeInput,
                )
            });
        }
    }
    group.finish();
}

fn bench_cases(c: &mut Criterion) {
    let configs: Vec<(String, RunConfig)> = (1..=4u8)
        .map(|k| {
            let mut cfg = RunConfig::case(k).unwrap();
            cfg.numerical.time.t_end = 0.5;
            cfg.output.snapshot_times.clear();
            (format!("case {k}"), cfg)
        })
        .collect();
    let mut group = c.benchmark_group("four_cases_to_t0.5");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| b.iter(|| run_cases(black_box(&configs), exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_rhs, bench_step, bench_cases);
criterion_main!(benches);
