use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matconvex::dilation::flip_dilation;
use matconvex::frames::{symmetry_group, theta, DEFAULT_SYMMETRY_CAP};
use matconvex::linalg::herm_eig;
use matconvex::sdp::DykstraParams;
use matconvex::sets::{cube, wmin_member};
use matconvex_bench::{contractions, cube_compression, hermitian};

fn eig(c: &mut Criterion) {
    let mut g = c.benchmark_group("herm_eig");
    for n in [8, 32, 64] {
        let m = hermitian(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| herm_eig(black_box(m)).unwrap()));
    }
    g.finish();
}

fn flip(c: &mut Criterion) {
    let mut g = c.benchmark_group("flip_dilation");
    for d in [2, 3, 4] {
        let x = contractions(d, 4, 2);
        g.bench_with_input(BenchmarkId::from_parameter(d), &x, |b, x| b.iter(|| flip_dilation(black_box(x)).unwrap()));
    }
    g.finish();
}

fn wmin(c: &mut Criterion) {
    let x = cube_compression(2, 3, 3);
    let p = cube(2);
    c.bench_function("wmin_cube_d2_n3", |b| b.iter(|| wmin_member(black_box(&x), &p, DykstraParams::default()).unwrap()));
}

fn symmetry(c: &mut Criterion) {
    let f = theta();
    c.bench_function("symmetry_group_theta", |b| b.iter(|| symmetry_group(black_box(&f), DEFAULT_SYMMETRY_CAP).unwrap()));
}

criterion_group!(benches, eig, flip, wmin, symmetry);
criterion_main!(benches);
