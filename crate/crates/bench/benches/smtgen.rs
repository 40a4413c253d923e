use criterion::{criterion_group, criterion_main, Criterion};

use cpgraph::smtgen::{emit, task, Mode};

fn emission(c: &mut Criterion) {
    let step = task("part2_step5a").unwrap();
    let small = task("5vertices_weakC").unwrap();
    c.bench_function("emit/step5a/quantified", |b| b.iter(|| emit(&step, Mode::Quantified)));
    c.bench_function("emit/5vertices_weakC/instantiated", |b| b.iter(|| emit(&small, Mode::Instantiated)));
}

criterion_group!(benches, emission);
criterion_main!(benches);
