//! Melonic graphs from insertion histories.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{GraphError, Result};
use crate::graph::StrandedGraph;
use crate::melonic::insert_oriented;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerationMode {
    /// Every labeled melonic graph on `V` vertices, each once, in sorted order.
    Exhaustive,
    /// An endless, seeded stream of random insertion histories with random labels.
    Random { seed: u64 },
}

pub fn generate_melonic(
    q: usize,
    v: usize,
    mode: GenerationMode,
) -> Result<Box<dyn Iterator<Item = StrandedGraph> + Send>> {
    if v < 2 || !v.is_multiple_of(2) {
        return Err(GraphError::VertexCount(v));
    }
    let base = StrandedGraph::g_min(q)?;
    Ok(match mode {
        GenerationMode::Exhaustive => Box::new(exhaustive_labeled(&base, v).into_iter()),
        GenerationMode::Random { seed } => Box::new(RandomMelonic {
            base,
            v,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }),
    })
}

/// Distinct labeled graphs reached by insertion histories of length
/// `(v - 2) / 2`, with new vertices always appended.
pub fn insertion_histories(q: usize, v: usize) -> Result<BTreeSet<StrandedGraph>> {
    if v < 2 || !v.is_multiple_of(2) {
        return Err(GraphError::VertexCount(v));
    }
    let mut level = BTreeSet::from([StrandedGraph::g_min(q)?]);
    for _ in 0..(v - 2) / 2 {
        level = level.iter().flat_map(one_step).collect();
    }
    Ok(level)
}

fn one_step(g: &StrandedGraph) -> Vec<StrandedGraph> {
    let mut out = Vec::with_capacity(g.line_count() * g.q());
    for line in g.lines() {
        for k in 0..g.q() {
            out.push(insert_oriented(g, line.lo(), line.hi(), k));
        }
    }
    out
}

fn exhaustive_labeled(base: &StrandedGraph, v: usize) -> Vec<StrandedGraph> {
    let q = base.q();
    let histories = insertion_histories(q, v).expect("sizes checked by caller");
    // One representative per isomorphism class keeps the relabeling closure small.
    let mut classes: Vec<StrandedGraph> = Vec::new();
    let mut keys: HashSet<CanonicalKey> = HashSet::new();
    for g in histories {
        match canonical_key(&g) {
            Ok(key) => {
                if keys.insert(key) {
                    classes.push(g);
                }
            }
            Err(_) => classes.push(g),
        }
    }
    let mut all = BTreeSet::new();
    let identity: Vec<usize> = (0..q).collect();
    let position_perms = permutations(q);
    for g in &classes {
        for_each_permutation(v, &mut |vertex_map| {
            // Position permutations are chosen per disorder line of g.
            let lines: Vec<usize> = g.disorder_lines().map(|d| d.a).collect();
            let mut choice = vec![0usize; lines.len()];
            loop {
                let mut maps = vec![identity.clone(); v];
                for (i, &a) in lines.iter().enumerate() {
                    let p = &position_perms[choice[i]];
                    maps[a] = p.clone();
                    maps[g.disorder_partner(a)] = p.clone();
                }
                all.insert(g.relabel(vertex_map, &maps).expect("consistent relabeling"));
                // Odometer over per-line choices.
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < position_perms.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        });
    }
    all.into_iter().collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_permutation(n, &mut |p| out.push(p.to_vec()));
    out
}

/// Heap's algorithm.
fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub struct RandomMelonic {
    base: StrandedGraph,
    v: usize,
    rng: ChaCha8Rng,
}

impl Iterator for RandomMelonic {
    type Item = StrandedGraph;

    fn next(&mut self) -> Option<StrandedGraph> {
        Some(random_melonic_with(&self.base, self.v, &mut self.rng))
    }
}

/// A random insertion history from `base` up to `v` vertices, followed by a
/// uniformly random relabeling.
pub fn random_melonic_with<R: Rng>(base: &StrandedGraph, v: usize, rng: &mut R) -> StrandedGraph {
    let q = base.q();
    let mut g = base.clone();
    while g.vertex_count() < v {
        let line = g.lines().nth(rng.gen_range(0..g.line_count())).expect("in range");
        let k = rng.gen_range(0..q);
        let (x, y) = if rng.gen::<bool>() {
            line.ends()
        } else {
            (line.hi(), line.lo())
        };
        g = insert_oriented(&g, x, y, k);
    }
    random_relabel(&g, rng)
}

pub fn random_relabel<R: Rng>(g: &StrandedGraph, rng: &mut R) -> StrandedGraph {
    let (q, v) = (g.q(), g.vertex_count());
    let mut vertex_map: Vec<usize> = (0..v).collect();
    vertex_map.shuffle(rng);
    let mut maps = vec![Vec::new(); v];
    for d in g.disorder_lines() {
        let mut p: Vec<usize> = (0..q).collect();
        p.shuffle(rng);
        maps[d.a] = p.clone();
        maps[d.b] = p;
    }
    g.relabel(&vertex_map, &maps).expect("consistent relabeling")
}
