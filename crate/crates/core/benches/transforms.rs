use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbwave::continuous::{meyer_sample, orbital_field_hh_with, Grid1D, MeyerKind};
use orbwave::dwt::{decompose_with, reconstruct_with};
use orbwave::filters::get_filter;
use orbwave::orbital::orbital_decompose_with;
use orbwave::{Matrix, Parallelism};
use std::hint::black_box;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("rayon", Parallelism::Rayon),
];

fn test_image(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |r, c| {
        ((r * 31 + c * 17) % 251) as f64 + (r as f64 * 0.01).sin()
    })
}

fn discrete(c: &mut Criterion) {
    let fb = get_filter("sym4").unwrap();
    let mut group = c.benchmark_group("decompose_sym4_l3");
    for n in [256, 512] {
        let img = test_image(n);
        for (name, par) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &img, |b, img| {
                b.iter(|| decompose_with(black_box(img), &fb, 3, par).unwrap())
            });
        }
    }
    group.finish();

    let img = test_image(512);
    let p = decompose_with(&img, &fb, 3, Parallelism::Sequential).unwrap();
    let mut group = c.benchmark_group("reconstruct_sym4_l3");
    for (name, par) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| reconstruct_with(black_box(&p), &fb, par).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("orbital_decompose_sym4_l3");
    for (name, par) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| orbital_decompose_with(black_box(&img), &fb, 3, par).unwrap())
        });
    }
    group.finish();
}

fn fields(c: &mut Criterion) {
    let g = Grid1D::symmetric(16.0, 1.0 / 32.0).unwrap();
    let w = meyer_sample(MeyerKind::Wavelet, &g).unwrap();
    let mut group = c.benchmark_group("orbital_field_hh_1024");
    group.sample_size(20);
    for (name, par) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| orbital_field_hh_with(black_box(&w), 1.0, 2.0, 0.0, &g, par).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, discrete, fields);
criterion_main!(benches);
