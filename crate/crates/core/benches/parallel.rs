//! Parallel vs sequential comparison for the two data-parallel hot paths:
//! exhaustive torsion-code distance search and the cross-method agreement
//! sweep. Build with default features to get the rayon-backed variants;
//! `*_seq` entry points are the sequential fallbacks either way.

use criterion::{criterion_group, criterion_main, Criterion};

use ringcodes::metrics::{torsion_min_weight, torsion_min_weight_seq};
use ringcodes::parse::parse_ring_spec;
use ringcodes::poly::Poly;
use ringcodes::reversibility::{method_agreement_sweep, method_agreement_sweep_seq};
use ringcodes::Caps;

fn bench_distance_search(c: &mut Criterion) {
    // <(z-1)^8> over F4, n = 16: 4^8 = 65536 multiples per scan
    let field = parse_ring_spec("F4[u]/u^1", None).unwrap();
    let h = Poly::z_minus_one(&field).pow(8);
    let cap = 1 << 22;

    let mut group = c.benchmark_group("torsion_min_weight");
    group.sample_size(20);
    group.bench_function("seq", |b| {
        b.iter(|| torsion_min_weight_seq(&h, 16, cap).unwrap())
    });
    group.bench_function("par", |b| {
        b.iter(|| torsion_min_weight(&h, 16, cap).unwrap())
    });
    group.finish();
}

fn bench_agreement_sweep(c: &mut Criterion) {
    // every admissible family tuple over F2[u]/u^2 at n = 8, all four
    // reversibility methods plus cardinality and distance cross-checks
    let ring = parse_ring_spec("F2[u]/u^2", None).unwrap();
    let caps = Caps {
        codeword_enum: 1 << 14,
        ..Caps::default()
    };

    let mut group = c.benchmark_group("agreement_sweep");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| method_agreement_sweep_seq(&ring, 3, &caps).unwrap())
    });
    group.bench_function("par", |b| {
        b.iter(|| method_agreement_sweep(&ring, 3, &caps).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_distance_search, bench_agreement_sweep);
criterion_main!(benches);
