//! The stranded graph data model.
//!
//! A graph on `V` vertices with `q` strands per disorder line has `q * V`
//! slots. Slot `(v, m)` is stored densely at index `v * q + m`. The fermionic
//! lines form a fixed-point-free involution on slots, the disorder lines a
//! fixed-point-free involution on vertices. Strands are kept in identity
//! normal form: strand `m` of the disorder line at `v` joins `(v, m)` to
//! `(mu(v), m)`, so no strand map is stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{GraphError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub vertex: usize,
    pub position: usize,
}

impl Slot {
    pub fn new(vertex: usize, position: usize) -> Self {
        Slot { vertex, position }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.position)
    }
}

/// A fermionic line, stored as the pair of dense slot indices it joins with
/// the smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FermionicLine {
    lo: usize,
    hi: usize,
}

impl FermionicLine {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            FermionicLine { lo: a, hi: b }
        } else {
            FermionicLine { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn touches(&self, slot: usize) -> bool {
        self.lo == slot || self.hi == slot
    }
}

impl fmt::Display for FermionicLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line[{}-{}]", self.lo, self.hi)
    }
}

/// A disorder line, stored with the smaller vertex first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DisorderLine {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandedGraph {
    q: usize,
    fermionic: Vec<usize>,
    disorder: Vec<usize>,
}

impl StrandedGraph {
    /// Builds and validates a graph from explicit pairing lists.
    ///
    /// Connectivity of G0 is not required here; see [`StrandedGraph::is_connected_g0`].
    pub fn build(q: usize, v: usize, fermionic: &[(Slot, Slot)], disorder: &[(usize, usize)]) -> Result<Self> {
        check_sizes(q, v)?;
        let n = q * v;
        let mut alpha = vec![usize::MAX; n];
        for &(s, t) in fermionic {
            for slot in [s, t] {
                if slot.vertex >= v || slot.position >= q {
                    return Err(GraphError::SlotOutOfRange(slot));
                }
            }
            if s == t {
                return Err(GraphError::SlotFixedPoint(s));
            }
            let (i, j) = (s.vertex * q + s.position, t.vertex * q + t.position);
            for (idx, slot) in [(i, s), (j, t)] {
                if alpha[idx] != usize::MAX {
                    return Err(GraphError::SlotCoveredTwice(slot));
                }
            }
            alpha[i] = j;
            alpha[j] = i;
        }
        if let Some(i) = alpha.iter().position(|&x| x == usize::MAX) {
            return Err(GraphError::SlotUncovered(Slot::new(i / q, i % q)));
        }
        let mut mu = vec![usize::MAX; v];
        for &(a, b) in disorder {
            for x in [a, b] {
                if x >= v {
                    return Err(GraphError::VertexOutOfRange(x));
                }
            }
            if a == b {
                return Err(GraphError::VertexFixedPoint(a));
            }
            for x in [a, b] {
                if mu[x] != usize::MAX {
                    return Err(GraphError::VertexCoveredTwice(x));
                }
            }
            mu[a] = b;
            mu[b] = a;
        }
        if let Some(x) = mu.iter().position(|&y| y == usize::MAX) {
            return Err(GraphError::VertexUncovered(x));
        }
        Ok(StrandedGraph {
            q,
            fermionic: alpha,
            disorder: mu,
        })
    }

    /// Builds a graph from the involution arrays directly, validating them.
    pub fn from_involutions(q: usize, fermionic: Vec<usize>, disorder: Vec<usize>) -> Result<Self> {
        let v = disorder.len();
        check_sizes(q, v)?;
        if fermionic.len() != q * v {
            return Err(GraphError::Format(format!(
                "fermionic array has length {}, expected {}",
                fermionic.len(),
                q * v
            )));
        }
        for (i, &j) in fermionic.iter().enumerate() {
            let slot = Slot::new(i / q, i % q);
            if j >= fermionic.len() {
                return Err(GraphError::SlotOutOfRange(slot));
            }
            if j == i {
                return Err(GraphError::SlotFixedPoint(slot));
            }
            if fermionic[j] != i {
                return Err(GraphError::SlotCoveredTwice(Slot::new(j / q, j % q)));
            }
        }
        for (x, &y) in disorder.iter().enumerate() {
            if y >= v {
                return Err(GraphError::VertexOutOfRange(y));
            }
            if y == x {
                return Err(GraphError::VertexFixedPoint(x));
            }
            if disorder[y] != x {
                return Err(GraphError::VertexCoveredTwice(y));
            }
        }
        Ok(StrandedGraph { q, fermionic, disorder })
    }

    /// Skips validation. Callers guarantee both arrays are fixed-point-free involutions.
    pub(crate) fn from_parts(q: usize, fermionic: Vec<usize>, disorder: Vec<usize>) -> Self {
        debug_assert_eq!(fermionic.len(), q * disorder.len());
        debug_assert!(fermionic.iter().enumerate().all(|(i, &j)| j != i && fermionic[j] == i));
        debug_assert!(disorder.iter().enumerate().all(|(i, &j)| j != i && disorder[j] == i));
        StrandedGraph { q, fermionic, disorder }
    }

    /// The two-vertex graph whose fermionic lines run parallel to the strands.
    pub fn g_min(q: usize) -> Result<Self> {
        check_sizes(q, 2)?;
        let fermionic = (0..2 * q).map(|i| if i < q { i + q } else { i - q }).collect();
        Ok(StrandedGraph::from_parts(q, fermionic, vec![1, 0]))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.disorder.len()
    }

    pub fn slot_count(&self) -> usize {
        self.fermionic.len()
    }

    pub fn slot_index(&self, slot: Slot) -> usize {
        slot.vertex * self.q + slot.position
    }

    pub fn slot(&self, index: usize) -> Slot {
        Slot::new(index / self.q, index % self.q)
    }

    pub fn vertex_of(&self, index: usize) -> usize {
        index / self.q
    }

    /// Fermionic partner of a slot.
    pub fn partner(&self, index: usize) -> usize {
        self.fermionic[index]
    }

    pub fn disorder_partner(&self, vertex: usize) -> usize {
        self.disorder[vertex]
    }

    /// The slot at the other end of the strand leaving `index`.
    pub fn strand_end(&self, index: usize) -> usize {
        self.disorder[index / self.q] * self.q + index % self.q
    }

    pub fn fermionic_involution(&self) -> &[usize] {
        &self.fermionic
    }

    pub fn disorder_involution(&self) -> &[usize] {
        &self.disorder
    }

    /// Fermionic lines ordered by their smaller slot.
    pub fn lines(&self) -> impl Iterator<Item = FermionicLine> + '_ {
        self.fermionic
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| FermionicLine { lo: i, hi: j })
    }

    pub fn line_count(&self) -> usize {
        self.fermionic.len() / 2
    }

    /// The line through a slot.
    pub fn line_at(&self, index: usize) -> FermionicLine {
        FermionicLine::new(index, self.fermionic[index])
    }

    pub fn has_line(&self, line: FermionicLine) -> bool {
        line.hi < self.fermionic.len() && line.lo != line.hi && self.fermionic[line.lo] == line.hi
    }

    pub(crate) fn check_line(&self, line: FermionicLine) -> Result<()> {
        if self.has_line(line) {
            Ok(())
        } else {
            Err(GraphError::NotALine(line))
        }
    }

    /// Disorder lines ordered by their smaller vertex.
    pub fn disorder_lines(&self) -> impl Iterator<Item = DisorderLine> + '_ {
        self.disorder
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| DisorderLine { a, b })
    }

    /// Fermionic lines as slot pairs, smaller slot first.
    pub fn fermionic_pairs(&self) -> Vec<(Slot, Slot)> {
        self.lines().map(|l| (self.slot(l.lo), self.slot(l.hi))).collect()
    }

    pub fn disorder_pairs(&self) -> Vec<(usize, usize)> {
        self.disorder_lines().map(|d| (d.a, d.b)).collect()
    }

    pub fn underlying_g0(&self) -> UnderlyingGraph {
        UnderlyingGraph {
            vertex_count: self.vertex_count(),
            edges: self
                .lines()
                .map(|l| (self.vertex_of(l.lo), self.vertex_of(l.hi)))
                .collect(),
        }
    }

    /// Fermionic and (unstranded) disorder lines together.
    pub fn underlying_full(&self) -> UnderlyingGraph {
        let mut g = self.underlying_g0();
        g.edges.extend(self.disorder_lines().map(|d| (d.a, d.b)));
        g
    }

    pub fn is_connected_g0(&self) -> bool {
        self.g0_components().components() == 1
    }

    pub(crate) fn g0_components(&self) -> DisjointSets {
        let mut dsu = DisjointSets::new(self.vertex_count());
        for (i, &j) in self.fermionic.iter().enumerate() {
            if i < j {
                dsu.union(i / self.q, j / self.q);
            }
        }
        dsu
    }

    /// Applies a relabeling: vertex `x` becomes `vertex_map[x]` and slot
    /// `(x, m)` becomes `(vertex_map[x], position_maps[x][m])`.
    ///
    /// The position maps of two disorder partners must agree so that the
    /// strands stay in identity normal form.
    pub fn relabel(&self, vertex_map: &[usize], position_maps: &[Vec<usize>]) -> Result<Self> {
        let (q, v) = (self.q, self.vertex_count());
        if vertex_map.len() != v || position_maps.len() != v {
            return Err(GraphError::Format("relabeling has the wrong size".into()));
        }
        check_permutation(vertex_map, v)?;
        for (x, pm) in position_maps.iter().enumerate() {
            if pm.len() != q {
                return Err(GraphError::Format("position map has the wrong size".into()));
            }
            check_permutation(pm, q)?;
            if *pm != position_maps[self.disorder[x]] {
                return Err(GraphError::Format(format!(
                    "position maps of disorder partners {} and {} differ",
                    x, self.disorder[x]
                )));
            }
        }
        let map_slot = |i: usize| vertex_map[i / q] * q + position_maps[i / q][i % q];
        let mut fermionic = vec![0; q * v];
        for (i, &j) in self.fermionic.iter().enumerate() {
            fermionic[map_slot(i)] = map_slot(j);
        }
        let mut disorder = vec![0; v];
        for (x, &y) in self.disorder.iter().enumerate() {
            disorder[vertex_map[x]] = vertex_map[y];
        }
        Ok(StrandedGraph::from_parts(q, fermionic, disorder))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub(crate) fn disjoint_union(&self, other: &StrandedGraph) -> StrandedGraph {
        debug_assert_eq!(self.q, other.q);
        let slot_shift = self.slot_count();
        let vertex_shift = self.vertex_count();
        let mut fermionic = self.fermionic.clone();
        fermionic.extend(other.fermionic.iter().map(|&j| j + slot_shift));
        let mut disorder = self.disorder.clone();
        disorder.extend(other.disorder.iter().map(|&y| y + vertex_shift));
        StrandedGraph::from_parts(self.q, fermionic, disorder)
    }
}

fn check_sizes(q: usize, v: usize) -> Result<()> {
    if q < 2 {
        return Err(GraphError::StrandCount(q));
    }
    if v < 2 || !v.is_multiple_of(2) {
        return Err(GraphError::VertexCount(v));
    }
    Ok(())
}

fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(GraphError::Format("relabeling is not a permutation".into()));
        }
    }
    Ok(())
}

/// G0 (fermionic lines only) or G (fermionic plus disorder lines) as a plain multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderlyingGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UnderlyingGraph {
    /// Vertex degrees, with a self-loop counting twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    pub fn self_loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        dsu.components() == 1
    }
}
