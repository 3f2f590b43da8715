use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use operad_forge::algebra_lab::{universal_cheese_discrete, AssocAlgebra, DiscreteOperad, Fp, OKind};
use operad_forge::geometry::{compose, validate_config};
use operad_forge::operad_core::DiscOperad;
use operad_forge::schinf::{chain_from_le, word_normalize};
use operad_forge::trees::{normalize_le, normalize_le_random, normalize_w};
use operad_forge_bench::{level_sequences, mixed_instances, wtrees};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

fn geometry(c: &mut Criterion) {
    for d in [1, 2, 3] {
        let instances = mixed_instances(SEED, 64, d);
        c.bench_function(&format!("compose SC{d}, 64 instances"), |b| {
            b.iter(|| {
                for (x, ys) in &instances {
                    black_box(compose(x, ys).unwrap());
                }
            })
        });
        let composites: Vec<_> = instances.iter().map(|(x, ys)| compose(x, ys).unwrap()).collect();
        c.bench_function(&format!("validate SC{d} composites"), |b| {
            b.iter(|| composites.iter().all(|x| validate_config(black_box(x)).is_ok()))
        });
    }
}

fn rewriting(c: &mut Criterion) {
    let trees = wtrees(SEED, 32, 2);
    let op = DiscOperad { d: 2 };
    c.bench_function("normalize_w, 32 trees over SC2", |b| {
        b.iter(|| trees.iter().map(|t| normalize_w(&op, black_box(t)).unwrap().vertex_count()).sum::<usize>())
    });

    let seqs = level_sequences(SEED, 32, 2, 5);
    c.bench_function("normalize_le, 32 sequences of 5 levels", |b| {
        b.iter(|| seqs.iter().map(|s| normalize_le(black_box(s)).unwrap().labels.len()).sum::<usize>())
    });
    c.bench_function("normalize_le, random rule order", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(SEED),
            |mut rng| seqs.iter().map(|s| normalize_le_random(s, &mut rng).unwrap().labels.len()).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
    let words: Vec<_> = seqs.iter().map(chain_from_le).collect();
    c.bench_function("word_normalize, 32 chain words", |b| {
        b.iter(|| words.iter().map(|w| word_normalize(black_box(w)).unwrap()).count())
    });
}

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("discrete");
    group.sample_size(10);
    group.bench_function("pi0_sc1 table, cutoff 4", |b| b.iter(|| DiscreteOperad::pi0_sc1(black_box(4)).len()));
    let f = Fp::new(2).unwrap();
    let algebras = AssocAlgebra::enumerate_unital(f, 2, 1 << 24).unwrap();
    group.bench_function("universal property, dim B = dim A = 2", |b| {
        b.iter(|| universal_cheese_discrete(OKind::Assoc, &algebras[0], &[1, 0], 3, 1 << 24).unwrap().report())
    });
    group.finish();
}

criterion_group!(kernels, geometry, rewriting, algebra);
criterion_main!(kernels);
