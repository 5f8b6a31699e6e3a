use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pbt_core::figures::merit_report;
use pbt_core::repcore::Partition;
use pbt_core::simulator::{young_projector, Limits, Simulator};
use pbt_core::{Execution, ProtocolVariant};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn projector(c: &mut Criterion) {
    let mut g = c.benchmark_group("young_projector");
    g.sample_size(10);
    let limits = Limits::default();
    let lambda = Partition::new(vec![4, 3]).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "[4,3] d=2"), |b| {
            b.iter(|| young_projector(black_box(&lambda), 2, exec, &limits).unwrap())
        });
    }
    g.finish();
}

fn povms(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_povms");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "dpbt N=5 d=2"), |b| {
            b.iter(|| {
                let sim = Simulator::with_config(5, 2, exec, Limits::default()).unwrap();
                sim.build_povms(ProtocolVariant::DeterministicNonOpt, None).unwrap()
            })
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("merits_sweep");
    let ports: Vec<usize> = (2..=60).collect();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "ppbt N=2..60 d=3"), |b| {
            b.iter(|| {
                exec.map(&ports, |&n| {
                    merit_report(ProtocolVariant::ProbabilisticNonOpt, n, 3, None).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, projector, povms, sweep);
criterion_main!(benches);
