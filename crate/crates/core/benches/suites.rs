use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordalg::exec::Exec;
use ordalg::verify;

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (suite, size) in [
        ("coinserter-universal", 3),
        ("rci-products", 3),
        ("coequalizer-universal", 3),
        ("hsp", 2),
    ] {
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(suite, label), &exec, |b, &exec| {
                b.iter(|| verify::run(suite, size, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
