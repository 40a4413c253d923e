use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};

use cpgraph::geometry::{intersection_point, intersects, left, Point};

fn quads(n: usize, extent: i64) -> Vec<[Point; 4]> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut p = || Point::new(rng.gen_range(-extent..=extent), rng.gen_range(-extent..=extent));
    (0..n).map(|_| [p(), p(), p(), p()]).collect()
}

fn predicates(c: &mut Criterion) {
    let small = quads(1024, 1000);
    let huge = quads(1024, i64::MAX / 2);
    c.bench_function("left/small", |b| b.iter(|| small.iter().filter(|q| left(q[0], q[1], q[2])).count()));
    c.bench_function("left/huge", |b| b.iter(|| huge.iter().filter(|q| left(q[0], q[1], q[2])).count()));
    c.bench_function("intersects/small", |b| {
        b.iter(|| small.iter().filter(|q| intersects(q[0], q[1], q[2], q[3])).count())
    });
    c.bench_function("intersection_point/small", |b| {
        b.iter(|| small.iter().filter_map(|q| intersection_point(q[0], q[1], q[2], q[3]).ok()).count())
    });
}

criterion_group!(benches, predicates);
criterion_main!(benches);
