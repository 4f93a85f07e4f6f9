use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use enumera_core::{kummer, tetra, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tetra_scans(c: &mut Criterion) {
    let config = tetra::build_config(0).unwrap();
    let mut g = c.benchmark_group("tetra");
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("genericity", name), &exec, |b, &exec| {
            b.iter(|| tetra::verify_genericity_with(&config, exec))
        });
        g.bench_with_input(BenchmarkId::new("ledger_delta3", name), &exec, |b, &exec| {
            b.iter(|| tetra::enumerate_ledger(&config, 3, exec).unwrap())
        });
    }
    g.finish();
}

fn kummer_stabilizers(c: &mut Criterion) {
    let inc = kummer::build_theta_model();
    let group = kummer::automorphism_group(&inc).unwrap();
    let mut g = c.benchmark_group("kummer");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("trope_stabilizers", name), &exec, |b, &exec| {
            b.iter(|| kummer::all_trope_stabilizers(&inc, &group, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tetra_scans, kummer_stabilizers);
criterion_main!(benches);
