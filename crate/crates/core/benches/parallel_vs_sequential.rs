use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use layerset::numtheory;
use layerset::raster::{self, GridSpec};
use layerset::setlang::{self, Backend, Context};
use layerset::{Execution, Point};

const FIG1: &str = include_str!("../examples/fig1.setl");

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn raster_modes(c: &mut Criterion) {
    let program = setlang::parse_program(FIG1).unwrap();
    let ctx = Context::<Point>::new(&program, Backend::Tomography).unwrap();
    let query = ctx.query(&program.queries[0]).unwrap();
    let spec = GridSpec::new(-3.75, -3.75, 3.0, 3.0, 200, 200).unwrap();
    let mut group = c.benchmark_group("raster_200");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(raster::rasterize(&query, &spec, exec)))
        });
    }
    group.finish();
}

fn prime_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("prime_count_2000");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(numtheory::prime_count_with(black_box(2000), exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, raster_modes, prime_modes);
criterion_main!(benches);
