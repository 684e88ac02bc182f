use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sykgraph_core::enumerate::EnumerationOptions;
use sykgraph_core::generate::random_melonic_with;
use sykgraph_core::verify::tally_graphs;
use sykgraph_core::{canonical_key, face_count, is_melonic, random_graph, trace_faces, StrandedGraph};

fn melonic(q: usize, v: usize) -> StrandedGraph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    random_melonic_with(&StrandedGraph::g_min(q).unwrap(), v, &mut rng)
}

fn faces(c: &mut Criterion) {
    let mut group = c.benchmark_group("faces");
    for v in [4, 20, 100] {
        let g = random_graph(4, v, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("trace_faces", v), &g, |b, g| {
            b.iter(|| trace_faces(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("face_count", v), &g, |b, g| {
            b.iter(|| face_count(black_box(g)))
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_melonic");
    for v in [8, 20, 50] {
        let g = melonic(4, v);
        group.bench_with_input(BenchmarkId::from_parameter(v), &g, |b, g| {
            b.iter(|| is_melonic(black_box(g)))
        });
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_key");
    for v in [4, 8] {
        let m = melonic(4, v);
        let r = random_graph(4, v, 5).unwrap();
        group.bench_with_input(BenchmarkId::new("melonic", v), &m, |b, g| {
            b.iter(|| canonical_key(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("random", v), &r, |b, g| {
            b.iter(|| canonical_key(black_box(g)))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    for (q, v) in [(2, 4), (3, 4), (2, 6)] {
        group.bench_function(format!("q{q}_v{v}"), |b| {
            b.iter(|| tally_graphs(q, v, &EnumerationOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, faces, reduction, canonical, enumeration);
criterion_main!(benches);
