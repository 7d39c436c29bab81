use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use respcheck_core::fixtures::{fixture, FixtureName};
use respcheck_core::gen::{random_formula, random_game, FormulaParams, GenParams};
use respcheck_core::{eval_gap, parse_formula, truth_set, GapKind};

fn chain_games(c: &mut Criterion) {
    let mut group = c.benchmark_group("truth_set/gn");
    let phi = parse_formula("S[a] p & !C[b] S[a] p").unwrap();
    for n in [10, 100, 1000, 10_000] {
        let g = fixture(FixtureName::Gn, Some(n)).unwrap();
        group.throughput(Throughput::Elements(g.node_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| truth_set(g, &phi)));
    }
    group.finish();
}

fn random_games(c: &mut Criterion) {
    let mut group = c.benchmark_group("truth_set/random");
    for depth in [4, 6, 8] {
        // Largest of the first few hundred seeds.
        let g = (0..500)
            .map(|seed| random_game(&GenParams::new(seed, depth, 3, &["a", "b", "c"], &["p", "q"])).unwrap())
            .max_by_key(|g| g.node_count())
            .unwrap();
        let params = FormulaParams::new(g.agents(), g.props(), 3, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let formulas: Vec<_> = (0..32).map(|_| random_formula(&mut rng, &params)).collect();
        group.throughput(Throughput::Elements(g.node_count() as u64));
        group.bench_with_input(BenchmarkId::new("depth", depth), &g, |b, g| {
            b.iter(|| formulas.iter().map(|f| truth_set(g, f).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn gap_family(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_gap/hog");
    let p = parse_formula("p").unwrap();
    for i in [2, 5, 20] {
        let g = fixture(FixtureName::Hog, Some(i)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(i), &g, |b, g| b.iter(|| eval_gap(g, &p, GapKind::Both, i)));
    }
    group.finish();
}

criterion_group!(benches, chain_games, random_games, gap_family);
criterion_main!(benches);
