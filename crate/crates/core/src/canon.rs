//! Canonical forms up to relabeling.
//!
//! Two graphs are isomorphic when one is obtained from the other by a
//! vertex permutation together with, for each disorder line, one permutation
//! of positions applied at both of its endpoints (so strands stay in identity
//! normal form). In canonical labels disorder line `i` joins vertices `2i` and
//! `2i + 1`, so the form is determined by the relabeled fermionic involution;
//! the canonical form is the lexicographically smallest one over a search
//! tree of labelings.
//!
//! A labeling is grown from a root strand by processing labeled strands in
//! order and following the fermionic lines at both of their ends. A line
//! reached for the first time is oriented so that the reached endpoint comes
//! first. When the queue runs dry with strands still unlabeled the search
//! branches. Root and branch candidates are restricted to those minimising a
//! face-length invariant, and strands forming a closed parallel pair (the
//! fermionic line at one end runs straight back along the strand) are
//! interchangeable, so only one of them is tried.

use crate::error::{GraphError, Result};
use crate::faces::trace_faces;
use crate::graph::StrandedGraph;

pub const CANONICAL_MAX_V: usize = 8;
pub const CANONICAL_MAX_Q: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    q: usize,
    v: usize,
    fermionic: Vec<usize>,
}

impl CanonicalKey {
    /// The graph in canonical labels.
    pub fn to_graph(&self) -> StrandedGraph {
        let disorder = (0..self.v).map(|x| x ^ 1).collect();
        StrandedGraph::from_parts(self.q, self.fermionic.clone(), disorder)
    }
}

/// Canonical key, refused outside the brute-force regime `V <= 8`, `q <= 4`.
pub fn canonical_key(g: &StrandedGraph) -> Result<CanonicalKey> {
    if g.vertex_count() > CANONICAL_MAX_V || g.q() > CANONICAL_MAX_Q {
        return Err(GraphError::CanonicalSizeGuard {
            max_v: CANONICAL_MAX_V,
            max_q: CANONICAL_MAX_Q,
        });
    }
    Ok(canonical_form(g))
}

/// Canonical key without the size guard. The search is exponential in the
/// worst case.
pub fn canonical_form(g: &StrandedGraph) -> CanonicalKey {
    Search::new(g).run()
}

pub fn is_isomorphic(g: &StrandedGraph, h: &StrandedGraph) -> bool {
    g.q() == h.q()
        && g.vertex_count() == h.vertex_count()
        && crate::faces::face_count(g) == crate::faces::face_count(h)
        && canonical_form(g) == canonical_form(h)
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    g: &'a StrandedGraph,
    /// Disorder line index of each vertex.
    line_of: Vec<usize>,
    /// Endpoints of each disorder line, smaller vertex first.
    ends: Vec<[usize; 2]>,
    /// Face-orbit lengths of the crossing starting at each slot.
    orbit_len: Vec<usize>,
    best: Option<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    /// New index of each disorder line.
    line_label: Vec<usize>,
    /// For each labeled line, which old endpoint (0 or 1) becomes the first.
    first_end: Vec<usize>,
    /// New position of each strand, indexed by line * q + old position.
    position: Vec<usize>,
    next_position: Vec<usize>,
    next_line: usize,
    /// Labeled strands in labeling order, as (line, old position).
    order: Vec<(usize, usize)>,
    cursor: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a StrandedGraph) -> Self {
        let v = g.vertex_count();
        let mut line_of = vec![NONE; v];
        let mut ends = Vec::with_capacity(v / 2);
        for d in g.disorder_lines() {
            line_of[d.a] = ends.len();
            line_of[d.b] = ends.len();
            ends.push([d.a, d.b]);
        }
        let faces = trace_faces(g);
        let mut orbit_len = vec![0; g.slot_count()];
        for orbit in faces.orbits() {
            for &s in orbit {
                orbit_len[s] = orbit.len();
            }
        }
        Search {
            g,
            line_of,
            ends,
            orbit_len,
            best: None,
        }
    }

    fn run(mut self) -> CanonicalKey {
        let lines = self.ends.len();
        let q = self.g.q();
        let empty = State {
            line_label: vec![NONE; lines],
            first_end: vec![NONE; lines],
            position: vec![NONE; lines * q],
            next_position: vec![0; lines],
            next_line: 0,
            order: Vec::with_capacity(lines * q),
            cursor: 0,
        };
        self.branch_fresh_line(&empty);
        CanonicalKey {
            q,
            v: self.g.vertex_count(),
            fermionic: self.best.expect("search visits at least one leaf"),
        }
    }

    /// Invariant of a strand traversed from the given endpoint.
    fn strand_invariant(&self, line: usize, end: usize, m: usize) -> (usize, usize) {
        let q = self.g.q();
        let [u, w] = self.ends[line];
        let (from, to) = if end == 0 { (u, w) } else { (w, u) };
        (self.orbit_len[from * q + m], self.orbit_len[to * q + m])
    }

    fn is_closed_parallel(&self, line: usize, m: usize) -> bool {
        let q = self.g.q();
        let [u, w] = self.ends[line];
        self.g.partner(u * q + m) == w * q + m
    }

    /// Starts a new component at an unlabeled line.
    fn branch_fresh_line(&mut self, state: &State) {
        let q = self.g.q();
        let mut candidates = Vec::new();
        for line in 0..self.ends.len() {
            if state.line_label[line] != NONE {
                continue;
            }
            for end in 0..2 {
                for m in 0..q {
                    candidates.push((self.strand_invariant(line, end, m), line, end, m));
                }
            }
        }
        let Some(min) = candidates.iter().map(|c| c.0).min() else {
            return;
        };
        for &(inv, line, end, m) in &candidates {
            if inv != min {
                continue;
            }
            let mut next = state.clone();
            next.line_label[line] = next.next_line;
            next.next_line += 1;
            next.first_end[line] = end;
            self.label_strand(&mut next, line, m);
            self.extend(next);
        }
    }

    fn label_strand(&self, state: &mut State, line: usize, m: usize) {
        let q = self.g.q();
        state.position[line * q + m] = state.next_position[line];
        state.next_position[line] += 1;
        state.order.push((line, m));
    }

    /// Propagates labels along fermionic lines, then branches if needed.
    fn extend(&mut self, mut state: State) {
        let q = self.g.q();
        while state.cursor < state.order.len() {
            let (line, m) = state.order[state.cursor];
            state.cursor += 1;
            let [u, w] = self.ends[line];
            let ordered = if state.first_end[line] == 0 { [u, w] } else { [w, u] };
            for vertex in ordered {
                let p = self.g.partner(vertex * q + m);
                let (pv, pm) = (p / q, p % q);
                let pl = self.line_of[pv];
                if state.line_label[pl] == NONE {
                    state.line_label[pl] = state.next_line;
                    state.next_line += 1;
                    state.first_end[pl] = usize::from(self.ends[pl][0] != pv);
                }
                if state.position[pl * q + pm] == NONE {
                    self.label_strand(&mut state, pl, pm);
                }
            }
        }
        if state.order.len() == self.ends.len() * q {
            self.finish(&state);
            return;
        }
        // Lowest labeled line with unlabeled strands.
        let mut pending = (0..self.ends.len())
            .filter(|&l| state.line_label[l] != NONE && state.next_position[l] < q)
            .collect::<Vec<_>>();
        pending.sort_by_key(|&l| state.line_label[l]);
        let Some(&line) = pending.first() else {
            self.branch_fresh_line(&state);
            return;
        };
        let end = state.first_end[line];
        let unlabeled: Vec<usize> = (0..q).filter(|&m| state.position[line * q + m] == NONE).collect();
        let min = unlabeled
            .iter()
            .map(|&m| self.strand_invariant(line, end, m))
            .min()
            .expect("line has unlabeled strands");
        let mut tried_closed = false;
        for m in unlabeled {
            if self.strand_invariant(line, end, m) != min {
                continue;
            }
            if self.is_closed_parallel(line, m) {
                if tried_closed {
                    continue;
                }
                tried_closed = true;
            }
            let mut next = state.clone();
            self.label_strand(&mut next, line, m);
            self.extend(next);
        }
    }

    fn finish(&mut self, state: &State) {
        let q = self.g.q();
        let new_slot = |s: usize| {
            let vertex = s / q;
            let line = self.line_of[vertex];
            let end = usize::from(self.ends[line][0] != vertex);
            let new_vertex = 2 * state.line_label[line] + usize::from(end != state.first_end[line]);
            new_vertex * q + state.position[line * q + s % q]
        };
        let mut fermionic = vec![0; self.g.slot_count()];
        for (s, &t) in self.g.fermionic_involution().iter().enumerate() {
            fermionic[new_slot(s)] = new_slot(t);
        }
        if self.best.as_ref().is_none_or(|b| fermionic < *b) {
            self.best = Some(fermionic);
        }
    }
}
