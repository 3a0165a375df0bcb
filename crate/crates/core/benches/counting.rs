//! Sequential against parallel evaluation of the main counting workloads.
//! Build with `--no-default-features` to measure the sequential fallback
//! for both rows.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kflow::{corpus, count_nowhere_zero_kvec, interpolate_piece, par, CapacityVector, PieceAtlas};

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn caps(v: &[u64]) -> CapacityVector {
    CapacityVector::new(v.to_vec()).unwrap()
}

fn bench(c: &mut Criterion) {
    let prism = corpus::prism();
    let k4 = corpus::k4();
    let three_k2 = corpus::three_k2();
    let prism_k = caps(&[9, 11, 13, 15, 17, 19, 21, 23, 25]);
    let k4_k = caps(&[5, 9, 13, 17, 21, 25]);
    let atlas = PieceAtlas::new(&prism).unwrap();

    let mut group = c.benchmark_group("counting");
    group.sample_size(10);
    for (label, jobs) in [("sequential", 1), ("parallel", threads())] {
        group.bench_with_input(BenchmarkId::new("prism_count", label), &jobs, |b, &jobs| {
            b.iter(|| {
                par::with_jobs(jobs, || {
                    count_nowhere_zero_kvec(black_box(&prism), &prism_k).unwrap()
                })
            })
        });
        group.bench_with_input(
            BenchmarkId::new("prism_closed_orientation_sum", label),
            &jobs,
            |b, &jobs| {
                b.iter(|| {
                    par::with_jobs(jobs, || {
                        atlas.closed_orientation_sum(black_box(&prism_k)).unwrap()
                    })
                })
            },
        );
        group.bench_with_input(BenchmarkId::new("k4_count", label), &jobs, |b, &jobs| {
            b.iter(|| {
                par::with_jobs(jobs, || {
                    count_nowhere_zero_kvec(black_box(&k4), &k4_k).unwrap()
                })
            })
        });
        group.bench_with_input(
            BenchmarkId::new("3k2_interpolate", label),
            &jobs,
            |b, &jobs| {
                b.iter(|| {
                    par::with_jobs(jobs, || {
                        interpolate_piece(black_box(&three_k2), &caps(&[5, 6, 8])).unwrap()
                    })
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
