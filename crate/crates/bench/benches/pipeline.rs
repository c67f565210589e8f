use criterion::{black_box, criterion_group, criterion_main, Criterion};
use magicpoly::arith::rref;
use magicpoly::{
    build_constraints, enumerate_vertices, reconstruct, LatticeCounter, SampleCache, Sampler,
    SquareClass, VertexOptions,
};

fn vertices(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertices");
    g.sample_size(10);
    for class in [
        SquareClass::magic(3),
        SquareClass::magic(4),
        SquareClass::pandiagonal(4),
    ] {
        let cs = build_constraints(&class);
        g.bench_function(class.label(), |b| {
            b.iter(|| enumerate_vertices(black_box(&cs), VertexOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("count");
    g.sample_size(10);
    for (class, t) in [
        (SquareClass::magic(3), 300),
        (SquareClass::magic(4), 12),
        (SquareClass::hypercube(3, 3).unwrap(), 8),
    ] {
        let counter = LatticeCounter::new(&class).unwrap();
        g.bench_function(format!("{}({t})", class.label()), |b| {
            b.iter(|| counter.count(black_box(t), false).unwrap())
        });
    }
    g.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let m = build_constraints(&SquareClass::magic(6)).matrix;
    c.bench_function("rref M_6", |b| b.iter(|| rref(black_box(&m))));
}

fn end_to_end(c: &mut Criterion) {
    let mut g = c.benchmark_group("reconstruct");
    g.sample_size(10);
    g.bench_function("M_3", |b| {
        b.iter(|| {
            let sampler = Sampler::new(SampleCache::in_memory());
            reconstruct(&SquareClass::magic(3), &sampler, VertexOptions::default()).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, vertices, counting, linear_algebra, end_to_end);
criterion_main!(benches);
