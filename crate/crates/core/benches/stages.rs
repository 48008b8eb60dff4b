use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hammock::exec::Exec;
use hammock::fixtures;
use hammock::hammock::HammockStage;
use hammock::oracle::Closure;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn ladders(c: &mut Criterion) {
    let rel = Arc::new(fixtures::cylfix());
    let a = rel.cat().object("A").unwrap();
    let b = rel.cat().object("B").unwrap();
    let mut g = c.benchmark_group("ladders L_5(A,B)");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| {
                // A fresh stage each time; ladders are cached per stage.
                let s = HammockStage::with_exec(exec, &rel, a, b, 5).unwrap();
                black_box(s.ladders().len())
            })
        });
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let rel = fixtures::para();
    let x = rel.cat().object("A").unwrap();
    let mut g = c.benchmark_group("word closure PARA(A,A) bound 6");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(Closure::compute_with(exec, &rel, x, x, 6).class_count()))
        });
    }
    g.finish();
}

criterion_group!(benches, ladders, closure);
criterion_main!(benches);
