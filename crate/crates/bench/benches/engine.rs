use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rootstack_gw::potential::ProductTable;
use rootstack_gw::series::{Monomial, Series, TruncationOrder};
use rootstack_gw::verify::{cross_sweep, wdvv_sweep};
use rootstack_gw::{invariant, GeometryConfig, InvariantKey, MemoStore, Rational};

fn cold_invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariant_cold");
    let cases = [
        ("quartic_416", 1, InvariantKey { d: 4, n2: 7, n3: 0, n4: 4 }),
        ("line_lambda8", 1, InvariantKey { d: 1, n2: 0, n3: 8, n4: 11 }),
        ("conic_lambda8", 2, InvariantKey { d: 2, n2: 0, n3: 8, n4: 14 }),
        ("cubic_delta3", 3, InvariantKey { d: 3, n2: 3, n3: 2, n4: 3 }),
    ];
    for (name, delta, key) in cases {
        let cfg = GeometryConfig::new(delta).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                let store = MemoStore::new();
                black_box(invariant(&store, cfg, black_box(key)).unwrap())
            })
        });
    }
    group.finish();
}

fn warm_lookup(c: &mut Criterion) {
    let cfg = GeometryConfig::new(1).unwrap();
    let key = InvariantKey { d: 4, n2: 7, n3: 0, n4: 4 };
    let store = MemoStore::new();
    invariant(&store, cfg, key).unwrap();
    c.bench_function("invariant_warm_416", |b| b.iter(|| invariant(&store, cfg, black_box(key)).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for (q, y) in [(2, 3), (2, 5)] {
        let order = TruncationOrder::new(q, y);
        group.bench_with_input(BenchmarkId::new("wdvv_delta1", format!("{q}x{y}")), &order, |b, &order| {
            b.iter(|| {
                let store = MemoStore::new();
                wdvv_sweep(&store, &[1], order).unwrap()
            })
        });
    }
    group.bench_function("product_table_delta3_2x5", |b| {
        let cfg = GeometryConfig::new(3).unwrap();
        b.iter(|| {
            let store = MemoStore::new();
            ProductTable::new(&store, cfg, TruncationOrder::new(2, 5)).unwrap()
        })
    });
    group.bench_function("cross_delta123", |b| {
        b.iter(|| {
            let store = MemoStore::new();
            cross_sweep(&store, &[1, 2, 3], 3, 6, 8).unwrap()
        })
    });
    group.finish();
}

fn dense(order: TruncationOrder, seed: i64) -> Series {
    let mut s = Series::zero(order);
    for q in 0..=order.q_max {
        for a in 0..=order.y_max {
            for b in 0..=order.y_max - a {
                for c in 0..=order.y_max - a - b {
                    let v = seed + (q + 3 * a + 5 * b + 7 * c) as i64;
                    s.add_term(Monomial::new(q, a, b, c), Rational::new(v.into(), (1 + c as i64).into()));
                }
            }
        }
    }
    s
}

fn series_multiply(c: &mut Criterion) {
    let order = TruncationOrder::new(2, 5);
    let (x, y) = (dense(order, 1), dense(order, -4));
    c.bench_function("series_mul_dense_2x5", |b| b.iter(|| black_box(&x) * black_box(&y)));
}

criterion_group!(benches, cold_invariants, warm_lookup, sweeps, series_multiply);
criterion_main!(benches);
