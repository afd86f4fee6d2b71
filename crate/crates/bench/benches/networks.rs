use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use relaybounds::multi::{cut_table, gdof_lp, max_weight_matching};
use relaybounds_bench::{dense_network, two_relay_network};

fn networks(c: &mut Criterion) {
    let weights: Vec<Vec<f64>> = (0..8)
        .map(|i| (0..8).map(|j| ((i * 5 + j * 3) % 11) as f64).collect())
        .collect();
    c.bench_function("matching_8x8", |b| {
        b.iter(|| max_weight_matching(black_box(&weights)))
    });
    let two = two_relay_network();
    c.bench_function("gdof_lp_two_relays", |b| b.iter(|| gdof_lp(black_box(&two))));
    let eight = dense_network(8);
    c.bench_function("cut_table_8_nodes", |b| b.iter(|| cut_table(black_box(&eight))));
    let mut slow = c.benchmark_group("large");
    slow.sample_size(10);
    slow.bench_function("gdof_lp_8_nodes", |b| b.iter(|| gdof_lp(black_box(&eight))));
    slow.finish();
}

criterion_group!(benches, networks);
criterion_main!(benches);
