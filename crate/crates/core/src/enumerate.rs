//! Exhaustive and random generation of labeled graphs at fixed `(q, V)`.
//!
//! Fermionic matchings are built by always pairing the smallest unmatched
//! slot next, so the first few pairing decisions partition the search space
//! into independent pieces. A rollback union-find over vertices tracks how
//! many unmatched slots each G0 component still has; a branch dies as soon
//! as a component is closed off while others remain.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GraphError, Result};
use crate::graph::StrandedGraph;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

const NONE: usize = usize::MAX;

/// `n!!` for odd `n` (1 for `n <= 0`).
pub fn double_factorial(n: u64) -> u128 {
    let mut acc: u128 = 1;
    let mut k = n;
    while k > 1 {
        acc *= k as u128;
        k -= 2;
    }
    acc
}

/// Number of (fermionic, disorder) matching pairs before the connectivity filter.
pub fn raw_structure_count(q: usize, v: usize) -> u128 {
    double_factorial((q * v) as u64 - 1) * double_factorial(v as u64 - 1)
}

pub fn check_budget(q: usize, v: usize, budget: u128) -> Result<u128> {
    if q < 2 {
        return Err(GraphError::StrandCount(q));
    }
    if v < 2 || !v.is_multiple_of(2) {
        return Err(GraphError::VertexCount(v));
    }
    let required = raw_structure_count(q, v);
    if required > budget {
        return Err(GraphError::BudgetExceeded { required, budget });
    }
    Ok(required)
}

/// Rollback union-find over vertices carrying the number of unmatched slots
/// of each component.
#[derive(Clone, Debug)]
struct SlotForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    free: Vec<usize>,
    components: usize,
}

#[derive(Clone, Copy, Debug)]
struct Undo {
    roots: (usize, usize),
    merged: Option<(usize, usize)>,
}

impl SlotForest {
    fn new(q: usize, v: usize) -> Self {
        SlotForest {
            parent: (0..v).collect(),
            size: vec![1; v],
            free: vec![q; v],
            components: v,
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Records a fermionic line between two vertices. Returns the undo token
    /// and whether the configuration can still become connected.
    fn join(&mut self, a: usize, b: usize) -> (Undo, bool) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.free[ra] -= 1;
        self.free[rb] -= 1;
        let mut merged = None;
        let mut root = ra;
        if ra != rb {
            let (big, small) = if self.size[ra] >= self.size[rb] {
                (ra, rb)
            } else {
                (rb, ra)
            };
            self.parent[small] = big;
            self.size[big] += self.size[small];
            self.free[big] += self.free[small];
            self.components -= 1;
            merged = Some((small, big));
            root = big;
        }
        let alive = self.free[root] > 0 || self.components == 1;
        (
            Undo {
                roots: (ra, rb),
                merged,
            },
            alive,
        )
    }

    fn undo(&mut self, token: Undo) {
        if let Some((small, big)) = token.merged {
            self.free[big] -= self.free[small];
            self.size[big] -= self.size[small];
            self.parent[small] = small;
            self.components += 1;
        }
        self.free[token.roots.0] += 1;
        self.free[token.roots.1] += 1;
    }
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    slot: usize,
    candidate: usize,
    undo: Option<Undo>,
}

/// Fermionic perfect matchings on `q * v` slots, as involution arrays, in
/// lexicographic order. With `connected_only`, only matchings whose G0 is
/// connected are produced.
pub struct FermionicMatchings {
    q: usize,
    alpha: Vec<usize>,
    forest: SlotForest,
    stack: Vec<Frame>,
    connected_only: bool,
    started: bool,
    dead: bool,
}

impl FermionicMatchings {
    pub fn new(q: usize, v: usize, connected_only: bool) -> Self {
        Self::with_prefix(q, v, connected_only, &[])
    }

    /// Completions of a fixed set of initial pairs.
    pub fn with_prefix(q: usize, v: usize, connected_only: bool, prefix: &[(usize, usize)]) -> Self {
        let mut it = FermionicMatchings {
            q,
            alpha: vec![NONE; q * v],
            forest: SlotForest::new(q, v),
            stack: Vec::with_capacity(q * v / 2),
            connected_only,
            started: false,
            dead: false,
        };
        for &(i, j) in prefix {
            it.alpha[i] = j;
            it.alpha[j] = i;
            let (_, alive) = it.forest.join(i / q, j / q);
            if connected_only && !alive {
                it.dead = true;
            }
        }
        it
    }

    fn next_unmatched(&self, from: usize) -> Option<usize> {
        (from..self.alpha.len()).find(|&s| self.alpha[s] == NONE)
    }
}

impl Iterator for FermionicMatchings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.dead {
            return None;
        }
        if !self.started {
            self.started = true;
            match self.next_unmatched(0) {
                Some(slot) => self.stack.push(Frame {
                    slot,
                    candidate: slot,
                    undo: None,
                }),
                None => {
                    self.dead = true;
                    return Some(self.alpha.clone());
                }
            }
        }
        let q = self.q;
        loop {
            let top = self.stack.last_mut()?;
            let i = top.slot;
            if let Some(undo) = top.undo.take() {
                let j = top.candidate;
                self.alpha[i] = NONE;
                self.alpha[j] = NONE;
                self.forest.undo(undo);
            }
            let top = self.stack.last_mut().expect("nonempty");
            let next = (top.candidate + 1..self.alpha.len()).find(|&s| self.alpha[s] == NONE);
            let Some(j) = next else {
                self.stack.pop();
                continue;
            };
            top.candidate = j;
            self.alpha[i] = j;
            self.alpha[j] = i;
            let (undo, alive) = self.forest.join(i / q, j / q);
            self.stack.last_mut().expect("nonempty").undo = Some(undo);
            if self.connected_only && !alive {
                continue;
            }
            match self.next_unmatched(i + 1) {
                Some(slot) => self.stack.push(Frame {
                    slot,
                    candidate: slot,
                    undo: None,
                }),
                None => return Some(self.alpha.clone()),
            }
        }
    }
}

/// All perfect matchings of `v` vertices as involution arrays.
pub fn disorder_matchings(v: usize) -> Vec<Vec<usize>> {
    fn rec(mu: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = mu.iter().position(|&x| x == NONE) else {
            out.push(mu.clone());
            return;
        };
        for j in i + 1..mu.len() {
            if mu[j] == NONE {
                mu[i] = j;
                mu[j] = i;
                rec(mu, out);
                mu[i] = NONE;
                mu[j] = NONE;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![NONE; v], &mut out);
    out
}

/// Initial pairings of depth `depth`, pruned like the full search.
pub fn partition_prefixes(q: usize, v: usize, depth: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        q: usize,
        alpha: &mut Vec<usize>,
        forest: &mut SlotForest,
        prefix: &mut Vec<(usize, usize)>,
        depth: usize,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(i) = alpha.iter().position(|&x| x == NONE) else {
            out.push(prefix.clone());
            return;
        };
        if prefix.len() == depth {
            out.push(prefix.clone());
            return;
        }
        for j in i + 1..alpha.len() {
            if alpha[j] != NONE {
                continue;
            }
            alpha[i] = j;
            alpha[j] = i;
            let (undo, alive) = forest.join(i / q, j / q);
            if alive {
                prefix.push((i, j));
                rec(q, alpha, forest, prefix, depth, out);
                prefix.pop();
            }
            forest.undo(undo);
            alpha[i] = NONE;
            alpha[j] = NONE;
        }
    }
    let mut out = Vec::new();
    rec(
        q,
        &mut vec![NONE; q * v],
        &mut SlotForest::new(q, v),
        &mut Vec::new(),
        depth,
        &mut out,
    );
    out
}

/// Every labeled graph in the class at `(q, v)`: each fermionic matching with
/// connected G0 combined with each disorder matching, exactly once.
pub fn enumerate_graphs(q: usize, v: usize, budget: u128) -> Result<impl Iterator<Item = StrandedGraph>> {
    check_budget(q, v, budget)?;
    let disorder = disorder_matchings(v);
    Ok(FermionicMatchings::new(q, v, true).flat_map(move |alpha| {
        disorder
            .clone()
            .into_iter()
            .map(move |mu| StrandedGraph::from_parts(q, alpha.clone(), mu))
    }))
}

/// Counts the raw structures by walking all matchings without the connectivity filter.
pub fn count_raw_structures(q: usize, v: usize, budget: u128) -> Result<u128> {
    check_budget(q, v, budget)?;
    let fermionic = FermionicMatchings::new(q, v, false).count() as u128;
    Ok(fermionic * disorder_matchings(v).len() as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u128,
    pub workers: usize,
    /// Number of leading pairing decisions used to split the work.
    pub partition_depth: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            partition_depth: 2,
        }
    }
}

/// Folds over every labeled graph at `(q, v)`, splitting the work by the
/// first pairing decisions. With one worker the pieces run in order on the
/// calling thread. Results are combined with `merge`, which must be
/// associative for the outcome not to depend on the worker count.
pub fn fold_graphs<A, I, F, M>(
    q: usize,
    v: usize,
    options: &EnumerationOptions,
    init: I,
    fold: F,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &StrandedGraph) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    check_budget(q, v, options.budget)?;
    let disorder = disorder_matchings(v);
    let prefixes = partition_prefixes(q, v, options.partition_depth);
    let run_piece = |prefix: &Vec<(usize, usize)>| {
        let mut acc = init();
        for alpha in FermionicMatchings::with_prefix(q, v, true, prefix) {
            for mu in &disorder {
                let g = StrandedGraph::from_parts(q, alpha.clone(), mu.clone());
                acc = fold(acc, &g);
            }
        }
        acc
    };
    if options.workers <= 1 {
        return Ok(prefixes.iter().map(run_piece).fold(init(), &merge));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| GraphError::Format(e.to_string()))?;
    Ok(pool.install(|| prefixes.par_iter().map(run_piece).reduce(&init, &merge)))
}

/// A uniformly random labeled graph with connected G0, by rejection.
pub fn random_graph(q: usize, v: usize, seed: u64) -> Result<StrandedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(q, v, &mut rng)
}

pub fn random_graph_with<R: Rng>(q: usize, v: usize, rng: &mut R) -> Result<StrandedGraph> {
    if q < 2 {
        return Err(GraphError::StrandCount(q));
    }
    if v < 2 || !v.is_multiple_of(2) {
        return Err(GraphError::VertexCount(v));
    }
    loop {
        let fermionic = random_involution(q * v, rng);
        let disorder = random_involution(v, rng);
        let g = StrandedGraph::from_parts(q, fermionic, disorder);
        if g.is_connected_g0() {
            return Ok(g);
        }
    }
}

/// Uniform fixed-point-free involution: shuffle, then pair neighbours.
fn random_involution<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut inv = vec![0; n];
    for pair in order.chunks_exact(2) {
        inv[pair[0]] = pair[1];
        inv[pair[1]] = pair[0];
    }
    inv
}
