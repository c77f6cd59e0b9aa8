use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperoct::complexes::build_gz_complex;
use hyperoct::homology::homology;
use hyperoct_bench::cyclic_fixtures;

fn assembly_and_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("complexes");
    group.sample_size(10);
    for top in [2, 3] {
        for fx in cyclic_fixtures(2, 1) {
            group.bench_with_input(BenchmarkId::new(format!("assemble/{}", fx.name), top), &top, |b, &top| {
                b.iter(|| build_gz_complex(fx.category.table(), &fx.functor, fx.ring, top, u64::MAX).unwrap())
            });
            let gz = build_gz_complex(fx.category.table(), &fx.functor, fx.ring, top, u64::MAX).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("homology/{}", fx.name), top), &gz, |b, gz| {
                b.iter(|| homology(&gz.complex).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, assembly_and_homology);
criterion_main!(benches);
