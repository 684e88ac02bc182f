//! Melonic moves, melon search and removal, reduction certificates and the
//! star gluing of two graphs cut open on one line each.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{FermionicLine, Slot, StrandedGraph};
use crate::io::GraphFile;

/// An elementary melon: the disorder partners `a`, `b` whose slots at every
/// position other than `k` are joined by fermionic lines parallel to the
/// strands. The slots `(a, k)` and `(b, k)` carry the external legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MelonSite {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

/// Inserts an elementary melon on `line`. The new vertices are `V` and
/// `V + 1`; the lower slot of the line is attached to `(V, k)`.
pub fn melonic_insert(g: &StrandedGraph, line: FermionicLine, k: usize) -> Result<StrandedGraph> {
    g.check_line(line)?;
    if k >= g.q() {
        return Err(GraphError::PositionOutOfRange { position: k, q: g.q() });
    }
    Ok(insert_oriented(g, line.lo(), line.hi(), k))
}

/// Splits the line `x`-`y` into `x`-`(a, k)` and `(b, k)`-`y` with `a = V`, `b = V + 1`.
pub(crate) fn insert_oriented(g: &StrandedGraph, x: usize, y: usize, k: usize) -> StrandedGraph {
    debug_assert_eq!(g.partner(x), y);
    let (q, v) = (g.q(), g.vertex_count());
    let (a, b) = (v, v + 1);
    let mut fermionic = g.fermionic_involution().to_vec();
    fermionic.resize(q * (v + 2), 0);
    for m in 0..q {
        if m != k {
            fermionic[a * q + m] = b * q + m;
            fermionic[b * q + m] = a * q + m;
        }
    }
    let (ak, bk) = (a * q + k, b * q + k);
    fermionic[x] = ak;
    fermionic[ak] = x;
    fermionic[y] = bk;
    fermionic[bk] = y;
    let mut disorder = g.disorder_involution().to_vec();
    disorder.push(b);
    disorder.push(a);
    StrandedGraph::from_parts(q, fermionic, disorder)
}

fn is_site(g: &StrandedGraph, a: usize, b: usize, k: usize) -> bool {
    let q = g.q();
    g.disorder_partner(a) == b
        && g.partner(a * q + k) != b * q + k
        && (0..q).all(|m| m == k || g.partner(a * q + m) == b * q + m)
}

/// All elementary melons. A two-vertex graph is terminal and reports none.
pub fn find_melons(g: &StrandedGraph) -> Vec<MelonSite> {
    if g.vertex_count() <= 2 {
        return Vec::new();
    }
    let q = g.q();
    let mut sites = Vec::new();
    for line in g.disorder_lines() {
        let (a, b) = (line.a, line.b);
        // The parallel internal lines leave at most one candidate position.
        let mut twisted = (0..q).filter(|&m| g.partner(a * q + m) != b * q + m);
        if let (Some(k), None) = (twisted.next(), twisted.next()) {
            sites.push(MelonSite { a, b, k });
        }
    }
    sites
}

/// The outcome of removing one melon: the smaller graph, and the line that
/// rejoins the two external legs, oriented as (partner of `(a, k)`, partner of `(b, k)`).
#[derive(Clone, Debug)]
pub struct Removal {
    pub graph: StrandedGraph,
    pub rejoined: (usize, usize),
}

pub fn remove_melon(g: &StrandedGraph, site: MelonSite) -> Result<StrandedGraph> {
    remove_melon_traced(g, site).map(|r| r.graph)
}

pub fn remove_melon_traced(g: &StrandedGraph, site: MelonSite) -> Result<Removal> {
    let MelonSite { a, b, k } = site;
    let (q, v) = (g.q(), g.vertex_count());
    if a >= v || b >= v || k >= q || !is_site(g, a, b, k) {
        return Err(GraphError::InvalidMelonSite { a, b, k });
    }
    if v < 4 {
        return Err(GraphError::TooSmallForRemoval);
    }
    let shift = |x: usize| x - usize::from(x > a) - usize::from(x > b);
    let map_slot = |s: usize| shift(s / q) * q + s % q;
    let x = g.partner(a * q + k);
    let y = g.partner(b * q + k);
    let mut fermionic = vec![0; q * (v - 2)];
    for (s, &t) in g.fermionic_involution().iter().enumerate() {
        let w = s / q;
        if w == a || w == b {
            continue;
        }
        let t = if s == x {
            y
        } else if s == y {
            x
        } else {
            t
        };
        fermionic[map_slot(s)] = map_slot(t);
    }
    let disorder = g
        .disorder_involution()
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != a && w != b)
        .map(|(_, &u)| shift(u))
        .collect();
    Ok(Removal {
        graph: StrandedGraph::from_parts(q, fermionic, disorder),
        rejoined: (map_slot(x), map_slot(y)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    #[serde(flatten)]
    pub site: MelonSite,
    /// The line joining the external legs after removal, in the labels of the
    /// reduced graph: first the former partner of `(a, k)`, then of `(b, k)`.
    pub rejoined: [Slot; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub melonic: bool,
    pub steps: Vec<ReductionStep>,
    pub terminal: StrandedGraph,
}

impl ReductionCertificate {
    /// Re-inserts the removed melons in reverse order, restoring the
    /// original vertex labels at every step.
    pub fn replay(&self) -> Result<StrandedGraph> {
        let mut g = self.terminal.clone();
        for step in self.steps.iter().rev() {
            let (x, y) = (g.slot_index(step.rejoined[0]), g.slot_index(step.rejoined[1]));
            let line = FermionicLine::new(x, y);
            g.check_line(line)?;
            let MelonSite { a, b, k } = step.site;
            let v = g.vertex_count();
            if k >= g.q() || a.max(b) >= v + 2 || a == b {
                return Err(GraphError::InvalidMelonSite { a, b, k });
            }
            let grown = insert_oriented(&g, x, y, k);
            let rest: Vec<usize> = (0..v + 2).filter(|&w| w != a && w != b).collect();
            let mut vertex_map = vec![0; v + 2];
            for (old, &new) in rest.iter().enumerate() {
                vertex_map[old] = new;
            }
            vertex_map[v] = a;
            vertex_map[v + 1] = b;
            let identity: Vec<usize> = (0..g.q()).collect();
            g = grown.relabel(&vertex_map, &vec![identity; v + 2])?;
        }
        Ok(g)
    }

    pub fn terminal_file(&self) -> GraphFile {
        GraphFile::from(&self.terminal)
    }
}

/// Reduces by removing melons until none remain, choosing which melon to
/// remove with `choose` (an index into the current site list).
pub fn reduce_with<F>(g: &StrandedGraph, mut choose: F) -> ReductionCertificate
where
    F: FnMut(&[MelonSite]) -> usize,
{
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        let sites = find_melons(&current);
        if sites.is_empty() {
            break;
        }
        let site = sites[choose(&sites)];
        let removal = remove_melon_traced(&current, site).expect("found sites are removable");
        steps.push(ReductionStep {
            site,
            rejoined: [
                removal.graph.slot(removal.rejoined.0),
                removal.graph.slot(removal.rejoined.1),
            ],
        });
        current = removal.graph;
    }
    // Two vertices with identity strands: only the parallel pairing is G_min.
    let melonic = current.vertex_count() == 2 && is_parallel(&current);
    ReductionCertificate {
        melonic,
        steps,
        terminal: current,
    }
}

fn is_parallel(g: &StrandedGraph) -> bool {
    (0..g.slot_count()).all(|s| g.partner(s) == g.strand_end(s))
}

/// Greedy reduction, always removing the first melon found.
pub fn is_melonic(g: &StrandedGraph) -> ReductionCertificate {
    reduce_with(g, |_| 0)
}

/// Verdict-only reduction used on hot paths.
pub fn melonic_verdict(g: &StrandedGraph) -> bool {
    let mut current = g.clone();
    while current.vertex_count() > 2 {
        match find_melons(&current).first() {
            Some(&site) => current = remove_melon(&current, site).expect("found sites are removable"),
            None => return false,
        }
    }
    is_parallel(&current)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlueOrientation {
    /// Lower ends joined together, upper ends joined together.
    Straight,
    /// Each lower end joined to the other graph's upper end.
    Crossed,
}

impl GlueOrientation {
    pub const BOTH: [GlueOrientation; 2] = [GlueOrientation::Straight, GlueOrientation::Crossed];
}

/// Cuts `e1` in `g1` and `e2` in `g2` and joins the four half-lines across
/// the two graphs. The vertices of `g2` follow those of `g1`.
pub fn star_glue(
    g1: &StrandedGraph,
    e1: FermionicLine,
    g2: &StrandedGraph,
    e2: FermionicLine,
    orientation: GlueOrientation,
) -> Result<StrandedGraph> {
    if g1.q() != g2.q() {
        return Err(GraphError::StrandCountMismatch(g1.q(), g2.q()));
    }
    g1.check_line(e1)?;
    g2.check_line(e2)?;
    let union = g1.disjoint_union(g2);
    let shift = g1.slot_count();
    let (x1, y1) = e1.ends();
    let (x2, y2) = (e2.lo() + shift, e2.hi() + shift);
    let (p, r) = match orientation {
        GlueOrientation::Straight => (x2, y2),
        GlueOrientation::Crossed => (y2, x2),
    };
    let mut fermionic = union.fermionic_involution().to_vec();
    fermionic[x1] = p;
    fermionic[p] = x1;
    fermionic[y1] = r;
    fermionic[r] = y1;
    Ok(StrandedGraph::from_parts(
        g1.q(),
        fermionic,
        union.disorder_involution().to_vec(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::{degree, face_count};

    fn gmin(q: usize) -> StrandedGraph {
        StrandedGraph::g_min(q).unwrap()
    }

    #[test]
    fn insert_on_g_min_q4() {
        let g = gmin(4);
        for line in g.lines() {
            for k in 0..4 {
                let h = melonic_insert(&g, line, k).unwrap();
                let d = degree(&h);
                assert_eq!((h.vertex_count(), d.faces, d.delta), (4, 7, 1));
                assert!(h.is_connected_g0());
                assert!(h.underlying_g0().is_regular(4));
                assert!(find_melons(&h).contains(&MelonSite { a: 2, b: 3, k }));
            }
        }
    }

    #[test]
    fn insert_rejects_bad_arguments() {
        let g = gmin(3);
        assert!(matches!(
            melonic_insert(&g, FermionicLine::new(0, 1), 0),
            Err(GraphError::NotALine(_))
        ));
        assert!(matches!(
            melonic_insert(&g, FermionicLine::new(0, 3), 3),
            Err(GraphError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn g_min_is_terminal() {
        for q in 2..6 {
            assert!(find_melons(&gmin(q)).is_empty());
            let cert = is_melonic(&gmin(q));
            assert!(cert.melonic);
            assert!(cert.steps.is_empty());
        }
    }

    #[test]
    fn crossing_pairing_has_no_melon_and_is_not_melonic() {
        // q = 4, V = 2, slot (0, m) paired with (1, m + 1 mod 4).
        let pairs: Vec<_> = (0..4).map(|m| (Slot::new(0, m), Slot::new(1, (m + 1) % 4))).collect();
        let g = StrandedGraph::build(4, 2, &pairs, &[(0, 1)]).unwrap();
        assert!(find_melons(&g).is_empty());
        assert!(!is_melonic(&g).melonic);
        assert!(!melonic_verdict(&g));
    }

    #[test]
    fn insert_then_remove_round_trip() {
        let g = melonic_insert(&gmin(3), FermionicLine::new(1, 4), 2).unwrap();
        for line in g.lines() {
            for k in 0..3 {
                let h = melonic_insert(&g, line, k).unwrap();
                let site = MelonSite { a: 4, b: 5, k };
                let back = remove_melon(&h, site).unwrap();
                assert_eq!(back, g);
                assert_eq!(face_count(&back), face_count(&h) - 2);
            }
        }
    }

    #[test]
    fn two_step_history_reduces_to_g_min() {
        let g = melonic_insert(&gmin(4), FermionicLine::new(0, 4), 1).unwrap();
        let sites = find_melons(&g);
        assert_eq!(sites.len(), 2, "both disorder lines of a V=4 melonic graph are melons");
        for site in sites {
            assert_eq!(remove_melon(&g, site).unwrap(), gmin(4));
        }
    }

    #[test]
    fn twisted_insertion_is_not_melonic() {
        // Start from a melonic V=4 graph and twist two internal lines of the inserted pair.
        let g = melonic_insert(&gmin(4), FermionicLine::new(0, 4), 0).unwrap();
        let mut f = g.fermionic_involution().to_vec();
        let (a1, a2, b1, b2) = (2 * 4 + 1, 2 * 4 + 2, 3 * 4 + 1, 3 * 4 + 2);
        f[a1] = b2;
        f[b2] = a1;
        f[a2] = b1;
        f[b1] = a2;
        let t = StrandedGraph::from_involutions(4, f, g.disorder_involution().to_vec()).unwrap();
        assert!(t.is_connected_g0());
        assert!(!is_melonic(&t).melonic);
        assert!(degree(&t).delta < 1);
    }

    #[test]
    fn remove_rejects_invalid_sites() {
        let g = melonic_insert(&gmin(4), FermionicLine::new(0, 4), 1).unwrap();
        assert!(remove_melon(&g, MelonSite { a: 2, b: 3, k: 0 }).is_err());
        assert!(remove_melon(&g, MelonSite { a: 0, b: 2, k: 1 }).is_err());
        assert!(matches!(
            remove_melon(&gmin(4), MelonSite { a: 0, b: 1, k: 0 }),
            Err(GraphError::InvalidMelonSite { .. })
        ));
    }

    #[test]
    fn certificate_replays_exactly() {
        let mut g = gmin(3);
        let picks = [(0usize, 1usize), (3, 0), (5, 2), (2, 1)];
        for &(li, k) in &picks {
            let line = g.lines().nth(li % g.line_count()).unwrap();
            g = melonic_insert(&g, line, k).unwrap();
        }
        // Scramble labels so removal has to shift indices.
        let v = g.vertex_count();
        let vertex_map: Vec<usize> = (0..v).map(|x| (x * 3 + 1) % v).collect();
        let g = g.relabel(&vertex_map, &vec![vec![0, 1, 2]; v]).unwrap();
        let cert = is_melonic(&g);
        assert!(cert.melonic);
        assert_eq!(cert.steps.len(), v / 2 - 1);
        assert_eq!(cert.replay().unwrap(), g);
    }

    #[test]
    fn star_glue_of_two_g_min_is_melonic() {
        for q in 2..5 {
            let g = gmin(q);
            for e1 in g.lines() {
                for e2 in g.lines() {
                    for o in GlueOrientation::BOTH {
                        let h = star_glue(&g, e1, &g, e2, o).unwrap();
                        assert_eq!(h.vertex_count(), 4);
                        assert!(h.is_connected_g0());
                        assert!(is_melonic(&h).melonic);
                        assert_eq!(face_count(&h), 2 * q - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn star_glue_requires_matching_q() {
        let e = FermionicLine::new(0, 2);
        assert_eq!(
            star_glue(
                &gmin(2),
                e,
                &gmin(3),
                FermionicLine::new(0, 3),
                GlueOrientation::Straight
            ),
            Err(GraphError::StrandCountMismatch(2, 3))
        );
    }
}
