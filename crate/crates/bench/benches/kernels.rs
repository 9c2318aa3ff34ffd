use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pnev_core::geometry::{intersection_points, noether_decompose};
use pnev_core::nevanlinna::{fmt_verify, order_function};
use pnev_core::smt::{line_conic_check, n_hypersurfaces_check};
use pnev_core::{int, Hypersurface, Poly, Prime, ProjectiveCurve, SmtConfig, TruncatedSeries};

fn series(c: &mut Criterion) {
    let p = Prime::new(2).unwrap();
    let coeffs = (0..60).map(|i| int(((i * 7919) % 23) as i64 - 11) * int(2).pow(i % 5)).collect();
    let s = TruncatedSeries::polynomial(coeffs, p);
    c.bench_function("gauss_norm/deg59", |b| b.iter(|| black_box(&s).gauss_norm().unwrap()));
    c.bench_function("counting_pl/deg59", |b| b.iter(|| black_box(&s).counting_pl().unwrap()));
}

fn nevanlinna(c: &mut Criterion) {
    let p = Prime::new(3).unwrap();
    let f = ProjectiveCurve::parse(
        &["1 + 3*z - 2/9*z^2 + z^6", "z - 27*z^3 + 4/3*z^5", "2 - z^2 + 9*z^6", "7/3*z + z^4"],
        p,
    )
    .unwrap();
    let d = Hypersurface::parse("D", "x0^3 - 2*x1*x2^2 + x3^3 + x0*x1*x2 - 3*x1^2*x3", 3).unwrap();
    c.bench_function("order_function/P3", |b| b.iter(|| order_function(black_box(&f)).unwrap()));
    c.bench_function("fmt_verify/P3_cubic", |b| b.iter(|| fmt_verify(black_box(&f), &d).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let cubic = Poly::parse("x0*x1^2 + x0^2*x2 - x0*x2^2 + x1^3 + x1*x2^2", 3).unwrap();
    let line = Poly::parse("x1", 3).unwrap();
    let tangents: Vec<Poly> = ["x2", "x0 - x1", "x0 + x1 - x2"]
        .iter()
        .map(|s| Poly::parse(s, 3).unwrap())
        .collect();
    c.bench_function("intersection/line_cubic", |b| {
        b.iter(|| intersection_points(black_box(&[line.clone(), cubic.clone()])).unwrap())
    });
    c.bench_function("noether/cubic", |b| {
        b.iter(|| noether_decompose(black_box(&tangents), &[(cubic.clone(), 1), (line.clone(), 2)]).unwrap())
    });
}

fn checks(c: &mut Criterion) {
    let p = Prime::new(2).unwrap();
    let cfg = SmtConfig::default();
    let f = ProjectiveCurve::parse(&["1", "z", "z^3"], p).unwrap();
    let l = Hypersurface::parse("L", "x1", 2).unwrap();
    let conic = Hypersurface::parse("C", "x1^2 - x0*x2", 2).unwrap();
    c.bench_function("line_conic_check", |b| {
        b.iter(|| line_conic_check(black_box(&f), &l, &conic, &cfg).unwrap())
    });
    let g = ProjectiveCurve::parse(&["1", "z", "z^2", "z^3"], p).unwrap();
    let ds: Vec<Hypersurface> = [("H", "x3"), ("Q1", "x0^2 - x2^2 + x1*x3"), ("Q2", "x1^2 - x2^2 + x0*x3")]
        .iter()
        .map(|(n, s)| Hypersurface::parse(*n, s, 3).unwrap())
        .collect();
    c.bench_function("n_hypersurfaces_check/P3", |b| {
        b.iter(|| n_hypersurfaces_check(black_box(&g), &ds, &cfg).unwrap())
    });
}

criterion_group!(benches, series, nevanlinna, geometry, checks);
criterion_main!(benches);
