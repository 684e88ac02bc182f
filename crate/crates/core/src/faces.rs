//! Faces and the 1/N degree.
//!
//! A directed crossing is a traversal of one strand, identified by the slot
//! it starts from: crossing `s` runs from `s` to `sigma(s)`, where `sigma`
//! moves a slot along its strand. After a crossing the face continues along
//! the fermionic line at `sigma(s)`, so the successor of crossing `s` is
//! `alpha(sigma(s))`. Every face is traced once in each direction, which
//! gives two orbits per face.

use serde::{Deserialize, Serialize};

use crate::graph::{FermionicLine, StrandedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    /// Directed orbits, each a cyclic sequence of crossing start slots.
    orbits: Vec<Vec<usize>>,
    /// Orbit index of each crossing.
    orbit_of: Vec<usize>,
    /// Face index of each orbit.
    face_of_orbit: Vec<usize>,
    /// One representative orbit per face.
    representatives: Vec<usize>,
}

impl FaceSet {
    pub fn face_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// One directed orbit per face, in order of face index.
    pub fn faces(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.representatives.iter().map(|&o| self.orbits[o].as_slice())
    }

    /// Face containing the crossing that starts at `slot`.
    pub fn face_of_crossing(&self, slot: usize) -> usize {
        self.face_of_orbit[self.orbit_of[slot]]
    }

    /// Face containing a fermionic line. Each line lies on exactly one face.
    pub fn face_of_line(&self, line: FermionicLine) -> usize {
        self.face_of_crossing(line.lo())
    }

    /// The fermionic lines on each face, in traversal order.
    pub fn lines_by_face(&self, g: &StrandedGraph) -> Vec<Vec<FermionicLine>> {
        self.faces()
            .map(|orbit| orbit.iter().map(|&s| g.line_at(g.strand_end(s))).collect())
            .collect()
    }
}

pub fn trace_faces(g: &StrandedGraph) -> FaceSet {
    let n = g.slot_count();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut s = start;
        loop {
            orbit_of[s] = id;
            orbit.push(s);
            s = g.partner(g.strand_end(s));
            if s == start {
                break;
            }
        }
        orbits.push(orbit);
    }
    // The reverse of the orbit through s passes through sigma(s).
    let mut face_of_orbit = vec![usize::MAX; orbits.len()];
    let mut representatives = Vec::with_capacity(orbits.len() / 2);
    for (o, orbit) in orbits.iter().enumerate() {
        if face_of_orbit[o] != usize::MAX {
            continue;
        }
        let reverse = orbit_of[g.strand_end(orbit[0])];
        debug_assert_ne!(reverse, o);
        face_of_orbit[o] = representatives.len();
        face_of_orbit[reverse] = representatives.len();
        representatives.push(o);
    }
    FaceSet {
        orbits,
        orbit_of,
        face_of_orbit,
        representatives,
    }
}

/// Face count without materialising the orbits.
pub fn face_count(g: &StrandedGraph) -> usize {
    let n = g.slot_count();
    // Small graphs dominate enumeration sweeps; keep them off the heap.
    let mut stack = [false; 64];
    let mut heap = Vec::new();
    let seen: &mut [bool] = if n <= stack.len() {
        &mut stack[..n]
    } else {
        heap.resize(n, false);
        &mut heap
    };
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            s = g.partner(g.strand_end(s));
        }
    }
    orbits / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub faces: usize,
    pub vertices: usize,
    pub q: usize,
    pub delta: i64,
    /// Exponent of N in the weight of the graph.
    pub weight_exponent: i64,
}

/// `F - (q - 1) V / 2` for a face count at given `q` and `V`.
pub fn delta_of(faces: usize, q: usize, vertices: usize) -> i64 {
    faces as i64 - ((q - 1) * vertices / 2) as i64
}

pub fn degree(g: &StrandedGraph) -> DegreeReport {
    let faces = face_count(g);
    let delta = delta_of(faces, g.q(), g.vertex_count());
    DegreeReport {
        faces,
        vertices: g.vertex_count(),
        q: g.q(),
        delta,
        weight_exponent: delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Slot;

    fn crossing_q2() -> StrandedGraph {
        StrandedGraph::build(
            2,
            2,
            &[(Slot::new(0, 0), Slot::new(1, 1)), (Slot::new(0, 1), Slot::new(1, 0))],
            &[(0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn g_min_has_q_faces() {
        for q in 2..=10 {
            let g = StrandedGraph::g_min(q).unwrap();
            let faces = trace_faces(&g);
            assert_eq!(faces.face_count(), q);
            assert_eq!(face_count(&g), q);
            assert_eq!(degree(&g).delta, 1);
        }
    }

    #[test]
    fn crossing_pairing_has_one_face() {
        let g = crossing_q2();
        let faces = trace_faces(&g);
        assert_eq!(faces.face_count(), 1);
        assert_eq!(faces.orbit_count(), 2);
        let report = degree(&g);
        assert_eq!(report.delta, 0);
        assert_eq!(report.weight_exponent, 0);
    }

    #[test]
    fn g_min_q3_delta() {
        let r = degree(&StrandedGraph::g_min(3).unwrap());
        assert_eq!((r.faces, r.delta), (3, 1));
    }

    #[test]
    fn every_line_on_one_face() {
        let g = crossing_q2();
        let faces = trace_faces(&g);
        let by_face = faces.lines_by_face(&g);
        assert_eq!(by_face.len(), 1);
        let mut lines = by_face[0].clone();
        lines.sort();
        assert_eq!(lines, g.lines().collect::<Vec<_>>());
    }
}
