use chainstab::chamber::matrix_determinant_identity;
use chainstab::git::correspondence_check;
use chainstab::stability::{is_semistable, is_stable_fast};
use chainstab::{build_cone, sampling, CurveContext, WallSet};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn cone(c: &mut Criterion) {
    let mut group = c.benchmark_group("cone");
    for n in [2usize, 4, 6] {
        let mut rng = sampling::seeded(n as u64);
        let t = sampling::large_degree_type(&mut rng, n, 1);
        let cone = build_cone(&t);
        let alphas: Vec<_> = (0..64).map(|_| sampling::alpha(&mut rng, &cone)).collect();
        group.bench_with_input(BenchmarkId::new("build", n), &t, |b, t| b.iter(|| build_cone(black_box(t))));
        group.bench_with_input(BenchmarkId::new("determinant", n), &t, |b, t| {
            b.iter(|| matrix_determinant_identity(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("classify", n), &alphas, |b, alphas| {
            b.iter(|| {
                for a in alphas {
                    black_box(cone.classify(a).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn stability(c: &mut Criterion) {
    let mut group = c.benchmark_group("stability");
    for n in [2usize, 5, 8] {
        let mut rng = sampling::seeded(100 + n as u64);
        let chain = sampling::rank_one_chain(&mut rng, n, 10);
        let cone = build_cone(&chain.chain_type());
        let alpha = sampling::alpha(&mut rng, &cone);
        group.bench_with_input(BenchmarkId::new("fast", n), &alpha, |b, a| {
            b.iter(|| is_stable_fast(black_box(&chain), a).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &alpha, |b, a| {
            b.iter(|| is_semistable(black_box(&chain), a).unwrap())
        });
    }
    group.finish();
}

fn correspondence(c: &mut Criterion) {
    let mut rng = sampling::seeded(7);
    let t = sampling::large_degree_type(&mut rng, 4, 2);
    let cone = build_cone(&t);
    let walls = WallSet::from([2, 3]);
    let k = sampling::character(&mut rng, 4, &walls);
    let alpha = sampling::wall_point(&mut rng, &cone, &walls);
    c.bench_function("correspondence_check n=4", |b| {
        b.iter(|| correspondence_check(black_box(&t), CurveContext::new(2), &k, &alpha).unwrap())
    });
}

criterion_group!(benches, cone, stability, correspondence);
criterion_main!(benches);
