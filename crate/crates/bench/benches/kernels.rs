use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fairshare_core::allocator::{find_fair_allocation, DEFAULT_NODE_BUDGET};
use fairshare_core::dist::exact_distribution;
use fairshare_core::extremal::{max_min_cross_dependent, shadow, SetFamily};
use fairshare_core::random::{random_monotone_table, random_zero_one};
use fairshare_core::shares::{mc_quantile_bracket, mms, rmms, thinned_quantile_share};
use fairshare_core::valuation::Valuation;

fn distribution_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("distribution");
    g.sample_size(20);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let table = random_monotone_table(16, &mut rng);
    g.bench_function("enumerated_table_m16", |b| {
        b.iter(|| exact_distribution(black_box(&table), black_box(0.25)).unwrap())
    });
    let units = Valuation::cardinality(240);
    g.bench_function("binomial_dp_m240", |b| {
        b.iter(|| exact_distribution(black_box(&units), black_box(0.25)).unwrap())
    });
    g.finish();
}

fn share_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("shares");
    g.sample_size(20);
    let twelve = Valuation::cardinality(12);
    g.bench_function("mms_m12_n2", |b| b.iter(|| mms(black_box(&twelve), 2).unwrap()));
    let six = Valuation::cardinality(6);
    g.bench_function("rmms_m6_n2", |b| b.iter(|| rmms(black_box(&six), 2).unwrap()));
    let v = Valuation::nonempty(2).unwrap();
    g.bench_function("mc_bracket_1060_samples", |b| {
        b.iter(|| mc_quantile_bracket(black_box(&v), 3, 1.0, 0.5, 0.05, 0.01, 0, 1).unwrap())
    });
    g.finish();
}

fn allocation_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("allocation");
    g.sample_size(20);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let profile: Vec<Valuation> = (0..3)
        .map(|_| random_zero_one(8, &mut rng).to_valuation().unwrap())
        .collect();
    let c_param: f64 = 1.0 / 250.0;
    let thresholds: Vec<f64> = profile
        .iter()
        .map(|v| thinned_quantile_share(v, 3, c_param, (-c_param).exp()).unwrap().value)
        .collect();
    g.bench_function("backtracking_m8_n3", |b| {
        b.iter(|| {
            find_fair_allocation(black_box(&profile), black_box(&thresholds), DEFAULT_NODE_BUDGET)
                .unwrap()
        })
    });
    g.finish();
}

fn extremal_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("extremal");
    g.sample_size(20);
    let family = SetFamily::complete(12, 4).unwrap();
    g.bench_function("shadow_c12_4_t2", |b| {
        b.iter(|| shadow(black_box(&family), black_box(2)).unwrap())
    });
    g.bench_function("maxmin_n2_k2_m5", |b| {
        b.iter(|| max_min_cross_dependent(black_box(2), black_box(2), black_box(5)).unwrap())
    });
    g.finish();
}

criterion_group!(
    kernels,
    distribution_kernels,
    share_kernels,
    allocation_kernels,
    extremal_kernels
);
criterion_main!(kernels);
