use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use relnet_bench::random_profiles;
use relnet_core::{all_pairs_mi, joint_entropy, mutual_information, LogBase};

fn bench_pair_kernels(c: &mut Criterion) {
    let profiles = random_profiles(2, 20, 6, 3);
    c.bench_function("mutual_information_m20_b6", |b| {
        b.iter(|| {
            mutual_information(
                black_box(&profiles[0]),
                black_box(&profiles[1]),
                LogBase::Bits,
            )
        })
    });
    c.bench_function("joint_entropy_m20_b6", |b| {
        b.iter(|| {
            joint_entropy(
                black_box(&profiles[0]),
                black_box(&profiles[1]),
                LogBase::Bits,
            )
        })
    });
}

fn bench_all_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs_mi");
    group.sample_size(10);
    for genes in [101usize, 500, 2000] {
        let profiles = random_profiles(genes, 20, 6, 7);
        let pairs = (genes * (genes - 1) / 2) as u64;
        group.throughput(Throughput::Elements(pairs));
        group.bench_with_input(BenchmarkId::from_parameter(genes), &profiles, |b, p| {
            b.iter(|| all_pairs_mi(black_box(p), LogBase::Bits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pair_kernels, bench_all_pairs);
criterion_main!(benches);
