use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubemedian::{DefiningGraph, DEFAULT_VERTEX_CAP};

fn normalize(c: &mut Criterion) {
    let g = DefiningGraph::cycle(5).unwrap();
    let word: Vec<_> = (0..64u8).map(|i| (i * 3 + i / 5) % 5).collect();
    c.bench_function("normalize/pentagon/64", |b| b.iter(|| g.normalize(black_box(&word)).unwrap()));
    let x = g.normalize(&word).unwrap();
    let y = g.parse_element("acebdacebd").unwrap();
    c.bench_function("distance/pentagon", |b| b.iter(|| g.distance(black_box(&x), black_box(&y))));
}

fn balls(c: &mut Criterion) {
    let g = DefiningGraph::cycle(5).unwrap();
    let mut group = c.benchmark_group("ball/pentagon");
    for radius in [4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, &r| {
            b.iter(|| g.ball(r, DEFAULT_VERTEX_CAP).unwrap().len())
        });
    }
    group.finish();
    c.bench_function("ball_size/pentagon/18", |b| b.iter(|| g.ball_size(black_box(18)).unwrap()));
}

criterion_group!(benches, normalize, balls);
criterion_main!(benches);
