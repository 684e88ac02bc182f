//! 2-cuts and the cut-and-reglue surgeries that show a graph is not face-maximal.
//!
//! "2-cut in G" uses fermionic lines plus unstranded disorder lines; "2-cut in
//! G0" uses fermionic lines only.

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{GraphError, Result};
use crate::faces::{face_count, trace_faces};
use crate::graph::{DisorderLine, FermionicLine, Slot, StrandedGraph};
use crate::melonic::melonic_insert;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommonFacePair {
    pub e1: FermionicLine,
    pub e2: FermionicLine,
    /// Face index in [`trace_faces`] order.
    pub face: usize,
}

/// Every unordered pair of distinct lines lying on a common face.
///
/// Each line lies on exactly one face, so pairs are grouped by face.
pub fn common_face_pairs(g: &StrandedGraph) -> Vec<CommonFacePair> {
    let faces = trace_faces(g);
    let mut pairs = Vec::new();
    for (face, mut lines) in faces.lines_by_face(g).into_iter().enumerate() {
        lines.sort();
        for (i, &e1) in lines.iter().enumerate() {
            for &e2 in &lines[i + 1..] {
                pairs.push(CommonFacePair { e1, e2, face });
            }
        }
    }
    pairs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub e1: FermionicLine,
    pub e2: FermionicLine,
    /// Removing both lines disconnects G.
    pub cut_in_g: bool,
    /// Removing both lines disconnects G0.
    pub cut_in_g0: bool,
    /// When `cut_in_g0`: the G0 component of the lower end of `e1`, and the rest.
    pub sides: Option<(Vec<usize>, Vec<usize>)>,
}

fn components_without(g: &StrandedGraph, e1: FermionicLine, e2: FermionicLine, with_disorder: bool) -> DisjointSets {
    let q = g.q();
    let mut dsu = DisjointSets::new(g.vertex_count());
    for line in g.lines() {
        if line != e1 && line != e2 {
            dsu.union(line.lo() / q, line.hi() / q);
        }
    }
    if with_disorder {
        for d in g.disorder_lines() {
            dsu.union(d.a, d.b);
        }
    }
    dsu
}

/// Whether removing the two lines disconnects G (fermionic plus disorder lines).
pub fn is_two_cut_in_g(g: &StrandedGraph, e1: FermionicLine, e2: FermionicLine) -> bool {
    components_without(g, e1, e2, true).components() > 1
}

pub fn analyze_cut(g: &StrandedGraph, e1: FermionicLine, e2: FermionicLine) -> Result<CutReport> {
    g.check_line(e1)?;
    g.check_line(e2)?;
    if e1 == e2 {
        return Err(GraphError::SameLine);
    }
    let cut_in_g = is_two_cut_in_g(g, e1, e2);
    let mut g0 = components_without(g, e1, e2, false);
    let cut_in_g0 = g0.components() > 1;
    let sides = cut_in_g0.then(|| {
        let root = g0.find(g.vertex_of(e1.lo()));
        (0..g.vertex_count()).partition(|&x| g0.find(x) == root)
    });
    Ok(CutReport {
        e1,
        e2,
        cut_in_g,
        cut_in_g0,
        sides,
    })
}

/// Cuts both lines and reconnects their halves. `straight` joins the lower
/// ends together and the upper ends together; otherwise lower to upper.
fn reconnect(g: &StrandedGraph, e1: FermionicLine, e2: FermionicLine, straight: bool) -> StrandedGraph {
    let (x1, y1) = e1.ends();
    let (p, r) = if straight { e2.ends() } else { (e2.hi(), e2.lo()) };
    let mut fermionic = g.fermionic_involution().to_vec();
    fermionic[x1] = p;
    fermionic[p] = x1;
    fermionic[y1] = r;
    fermionic[r] = y1;
    StrandedGraph::from_parts(g.q(), fermionic, g.disorder_involution().to_vec())
}

fn check_pair(g: &StrandedGraph, pair: &CommonFacePair) -> Result<()> {
    g.check_line(pair.e1)?;
    g.check_line(pair.e2)?;
    if pair.e1 == pair.e2 {
        return Err(GraphError::SameLine);
    }
    Ok(())
}

/// The reconnection of a common-face pair that splits their face in two.
///
/// Refused with [`GraphError::CutInG0`] when that reconnection leaves G0
/// disconnected. This cannot happen when the pair is not a 2-cut in G0; for a
/// pair that is, the reconnection may still reconnect G0 (two vertices joined
/// only by the pair, for instance).
pub fn reglue_gain_face(g: &StrandedGraph, pair: &CommonFacePair) -> Result<StrandedGraph> {
    check_pair(g, pair)?;
    let h = gaining_reconnection(g, pair.e1, pair.e2, face_count(g))?;
    if h.is_connected_g0() {
        Ok(h)
    } else {
        Err(GraphError::CutInG0)
    }
}

/// The face through `e1` is walked in the direction that leaves along `e1`
/// from its lower end; rejoining each line's entry end to the other line's
/// exit end splits that face (and its reverse) in two.
fn gaining_reconnection(
    g: &StrandedGraph,
    e1: FermionicLine,
    e2: FermionicLine,
    before: usize,
) -> Result<StrandedGraph> {
    let start = g.strand_end(e1.lo());
    let (x2, y2) = e2.ends();
    let mut straight = None;
    let mut s = start;
    loop {
        let t = g.strand_end(s);
        if t == x2 {
            straight = Some(false);
            break;
        }
        if t == y2 {
            straight = Some(true);
            break;
        }
        s = g.partner(t);
        if s == start {
            break;
        }
    }
    let orders: &[bool] = match straight {
        Some(true) => &[true, false],
        Some(false) => &[false, true],
        None => &[],
    };
    orders
        .iter()
        .map(|&straight| reconnect(g, e1, e2, straight))
        .find(|h| face_count(h) == before + 1)
        .ok_or(GraphError::NoFaceGain)
}

/// Removes both endpoints of a disorder line and, position by position, joins
/// the fermionic half-lines its strands used to connect.
///
/// Half-lines are joined by following the alternating path of fermionic
/// lines and strands through the removed slots, so tadpoles at the removed
/// vertices are handled. A closed loop lying entirely on the removed slots
/// has no half-line left to join and is reported as
/// [`GraphError::DegenerateContraction`]. The result may have a disconnected G0.
pub fn contract_disorder_line(g: &StrandedGraph, line: DisorderLine) -> Result<StrandedGraph> {
    let contraction = contract_with_loops(g, line)?;
    if contraction.dropped_loops > 0 {
        return Err(GraphError::DegenerateContraction);
    }
    Ok(contraction.graph)
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: StrandedGraph,
    /// Faces lying entirely on the removed slots, which disappear.
    pub dropped_loops: usize,
}

/// Like [`contract_disorder_line`], but closed loops on the removed slots are
/// dropped and counted instead of refused.
pub fn contract_with_loops(g: &StrandedGraph, line: DisorderLine) -> Result<Contraction> {
    let (q, v) = (g.q(), g.vertex_count());
    let (l, r) = (line.a, line.b);
    if l >= v || r >= v {
        return Err(GraphError::VertexOutOfRange(l.max(r)));
    }
    if l == r || g.disorder_partner(l) != r {
        return Err(GraphError::NotDisorderPartners(l, r));
    }
    if v < 4 {
        return Err(GraphError::TooSmallForRemoval);
    }
    let removed = |s: usize| s / q == l || s / q == r;
    let shift = |x: usize| x - usize::from(x > l) - usize::from(x > r);
    let map_slot = |s: usize| shift(s / q) * q + s % q;
    let mut visited = vec![false; g.slot_count()];
    let mut fermionic = vec![0; q * (v - 2)];
    for s in 0..g.slot_count() {
        if removed(s) {
            continue;
        }
        let mut t = g.partner(s);
        while removed(t) {
            let u = g.strand_end(t);
            visited[t] = true;
            visited[u] = true;
            t = g.partner(u);
        }
        fermionic[map_slot(s)] = map_slot(t);
    }
    let mut dropped_loops = 0;
    for s in 0..g.slot_count() {
        if removed(s) && !visited[s] {
            dropped_loops += 1;
            let mut t = s;
            while !visited[t] {
                let u = g.strand_end(t);
                visited[t] = true;
                visited[u] = true;
                t = g.partner(u);
            }
        }
    }
    let disorder = g
        .disorder_involution()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != l && x != r)
        .map(|(_, &y)| shift(y))
        .collect();
    Ok(Contraction {
        graph: StrandedGraph::from_parts(q, fermionic, disorder),
        dropped_loops,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// 1: the face-gaining reconnection is used (always when the pair is not a 2-cut in G0).
    /// 2: the pair cuts G0 but not G; reconnect, contract a bridging disorder line, reinsert a melon.
    pub case: u8,
    pub graph: StrandedGraph,
    /// Case 2 only: the disconnected reconnection and the contracted graph.
    pub intermediates: Vec<StrandedGraph>,
    /// Case 2 only: faces lost in the contraction. Zero unless no lossless
    /// construction exists for this pair or any other.
    pub dropped_loops: usize,
    /// Set when the requested pair admits neither construction and another
    /// non-2-cut pair of the same graph was used instead.
    pub substitute: Option<CommonFacePair>,
    pub f_before: usize,
    pub f_after: usize,
}

/// A graph with as many vertices as `g` and strictly more faces, built from
/// a common-face pair that is not a 2-cut in G.
///
/// When the pair cuts G0, tadpoles next to the cut can make every bridging
/// contraction return to the side it started from, so that no construction
/// from this pair keeps G0 connected. Another common-face pair that is not a
/// 2-cut in G is then tried, in [`common_face_pairs`] order, and reported in
/// [`Witness::substitute`]. Contractions that drop closed loops are a last
/// resort.
pub fn witness_non_maximal(g: &StrandedGraph, pair: &CommonFacePair) -> Result<Witness> {
    check_pair(g, pair)?;
    let splits_g0 = components_without(g, pair.e1, pair.e2, false).components() > 1;
    if splits_g0 && is_two_cut_in_g(g, pair.e1, pair.e2) {
        return Err(GraphError::CutInG);
    }
    let f_before = face_count(g);
    let attempt = |e1, e2, splits_g0, lossy| witness_from_pair(g, e1, e2, splits_g0, f_before, lossy);
    if let Some(w) = attempt(pair.e1, pair.e2, splits_g0, false) {
        return Ok(w);
    }
    let substitute = common_face_pairs(g)
        .into_iter()
        .filter(|other| (other.e1, other.e2) != (pair.e1, pair.e2) && !is_two_cut_in_g(g, other.e1, other.e2))
        .find_map(|other| {
            let splits = components_without(g, other.e1, other.e2, false).components() > 1;
            attempt(other.e1, other.e2, splits, false).map(|w| Witness {
                substitute: Some(other),
                ..w
            })
        });
    substitute
        .or_else(|| attempt(pair.e1, pair.e2, splits_g0, true))
        .ok_or(GraphError::NoFaceGain)
}

fn witness_from_pair(
    g: &StrandedGraph,
    e1: FermionicLine,
    e2: FermionicLine,
    splits_g0: bool,
    f_before: usize,
    allow_lossy: bool,
) -> Option<Witness> {
    let case_one = |graph: StrandedGraph| Witness {
        case: 1,
        f_after: f_before + 1,
        graph,
        intermediates: Vec::new(),
        dropped_loops: 0,
        substitute: None,
        f_before,
    };
    if !splits_g0 {
        return gaining_reconnection(g, e1, e2, f_before).ok().map(case_one);
    }
    if g.vertex_count() >= 4 {
        for straight in [true, false] {
            let reglued = reconnect(g, e1, e2, straight);
            let mut parts = reglued.g0_components();
            if parts.components() != 2 {
                continue;
            }
            let bridges: Vec<DisorderLine> = reglued
                .disorder_lines()
                .filter(|d| parts.find(d.a) != parts.find(d.b))
                .collect();
            // Tadpoles at both ends of a bridge, at matching positions, close a
            // face on the contracted slots. Such lossy contractions are used
            // only when asked for, and only if the reinserted melon still
            // outweighs the lost faces.
            for &bridge in &bridges {
                let Ok(c) = contract_with_loops(&reglued, bridge) else {
                    continue;
                };
                if !c.graph.is_connected_g0() || (c.dropped_loops > 0 && !allow_lossy) {
                    continue;
                }
                let w = finish_case_two(reglued.clone(), c, f_before);
                if w.f_after > f_before {
                    return Some(w);
                }
            }
        }
    }
    // No usable split (two vertices only, one of the lines is a bridge of G0
    // by itself, or every bridge is degenerate): the face-gaining
    // reconnection, if it happens to keep G0 connected.
    gaining_reconnection(g, e1, e2, f_before)
        .ok()
        .filter(StrandedGraph::is_connected_g0)
        .map(case_one)
}

fn finish_case_two(reglued: StrandedGraph, c: Contraction, f_before: usize) -> Witness {
    let first = c.graph.lines().next().expect("graphs have lines");
    let graph = melonic_insert(&c.graph, first, 0).expect("line taken from the graph");
    let f_after = face_count(&graph);
    Witness {
        case: 2,
        graph,
        intermediates: vec![reglued, c.graph],
        dropped_loops: c.dropped_loops,
        substitute: None,
        f_before,
        f_after,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub e1: [Slot; 2],
    pub e2: [Slot; 2],
    pub face: usize,
}

impl PairRecord {
    pub fn new(g: &StrandedGraph, pair: &CommonFacePair) -> Self {
        let ends = |l: FermionicLine| [g.slot(l.lo()), g.slot(l.hi())];
        PairRecord {
            e1: ends(pair.e1),
            e2: ends(pair.e2),
            face: pair.face,
        }
    }
}

/// Audit record of one surgery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub input_graph: StrandedGraph,
    pub pair: PairRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub substitute_pair: Option<PairRecord>,
    pub case: u8,
    pub intermediate_graphs: Vec<StrandedGraph>,
    pub dropped_loops: usize,
    pub output_graph: StrandedGraph,
    pub f_before: usize,
    pub f_after: usize,
}

impl WitnessRecord {
    pub fn new(g: &StrandedGraph, pair: &CommonFacePair, witness: &Witness) -> Self {
        WitnessRecord {
            input_graph: g.clone(),
            pair: PairRecord::new(g, pair),
            substitute_pair: witness.substitute.as_ref().map(|p| PairRecord::new(g, p)),
            case: witness.case,
            intermediate_graphs: witness.intermediates.clone(),
            dropped_loops: witness.dropped_loops,
            output_graph: witness.graph.clone(),
            f_before: witness.f_before,
            f_after: witness.f_after,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::melonic::{is_melonic, melonic_insert};

    fn s(v: usize, m: usize) -> Slot {
        Slot::new(v, m)
    }

    fn crossing_q2() -> StrandedGraph {
        StrandedGraph::build(2, 2, &[(s(0, 0), s(1, 1)), (s(0, 1), s(1, 0))], &[(0, 1)]).unwrap()
    }

    #[test]
    fn g_min_has_no_common_face_pairs() {
        for q in 2..7 {
            assert!(common_face_pairs(&StrandedGraph::g_min(q).unwrap()).is_empty());
        }
    }

    #[test]
    fn crossing_pair_reglues_to_g_min() {
        let g = crossing_q2();
        let pairs = common_face_pairs(&g);
        assert_eq!(pairs.len(), 1);
        let pair = pairs[0];
        let lines: Vec<_> = g.lines().collect();
        assert_eq!((pair.e1, pair.e2), (lines[0], lines[1]));
        // Both lines run between the only two vertices: a cut in G0, not in G.
        let report = analyze_cut(&g, pair.e1, pair.e2).unwrap();
        assert!(report.cut_in_g0 && !report.cut_in_g);
        let h = reglue_gain_face(&g, &pair).unwrap();
        assert_eq!(h, StrandedGraph::g_min(2).unwrap());
        let w = witness_non_maximal(&g, &pair).unwrap();
        assert_eq!((w.case, w.f_before, w.f_after), (1, 1, 2));
    }

    #[test]
    fn g_min_parallel_lines_do_not_cut_g0() {
        let g = StrandedGraph::g_min(3).unwrap();
        let lines: Vec<_> = g.lines().collect();
        let report = analyze_cut(&g, lines[0], lines[1]).unwrap();
        assert!(!report.cut_in_g0);
        assert!(!report.cut_in_g);
        // q = 2: removing both lines leaves only the disorder line.
        let g2 = StrandedGraph::g_min(2).unwrap();
        let l2: Vec<_> = g2.lines().collect();
        let r2 = analyze_cut(&g2, l2[0], l2[1]).unwrap();
        assert!(r2.cut_in_g0 && !r2.cut_in_g);
    }

    #[test]
    fn melon_legs_are_a_cut_in_g() {
        let g = melonic_insert(&StrandedGraph::g_min(4).unwrap(), FermionicLine::new(0, 4), 2).unwrap();
        let legs = (g.line_at(2 * 4 + 2), g.line_at(3 * 4 + 2));
        let report = analyze_cut(&g, legs.0, legs.1).unwrap();
        assert!(report.cut_in_g && report.cut_in_g0);
        let (left, right) = report.sides.unwrap();
        assert_eq!(left.len() + right.len(), 4);
        assert!(is_melonic(&g).melonic);
        for pair in common_face_pairs(&g) {
            assert!(analyze_cut(&g, pair.e1, pair.e2).unwrap().cut_in_g);
        }
    }

    /// Two copies of the crossing q = 2 block, joined by two fermionic lines
    /// and with disorder lines running between the blocks.
    fn bridged_blocks() -> StrandedGraph {
        // Block A on vertices 0, 1; block B on 2, 3. Disorder 0-2, 1-3.
        StrandedGraph::build(
            2,
            4,
            &[
                (s(0, 0), s(1, 1)),
                (s(0, 1), s(2, 0)),
                (s(1, 0), s(3, 1)),
                (s(2, 1), s(3, 0)),
            ],
            &[(0, 2), (1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn disorder_lines_bridge_a_g0_cut() {
        let g = bridged_blocks();
        assert!(g.is_connected_g0());
        let e1 = g.line_at(g.slot_index(s(0, 1)));
        let e2 = g.line_at(g.slot_index(s(1, 0)));
        let report = analyze_cut(&g, e1, e2).unwrap();
        assert!(report.cut_in_g0);
        assert!(!report.cut_in_g);
        assert_eq!(report.sides, Some((vec![0, 1], vec![2, 3])));
    }

    #[test]
    fn reglue_refuses_g0_cuts() {
        let g = bridged_blocks();
        let e1 = g.line_at(g.slot_index(s(0, 1)));
        let e2 = g.line_at(g.slot_index(s(1, 0)));
        let pair = CommonFacePair { e1, e2, face: 0 };
        assert_eq!(reglue_gain_face(&g, &pair), Err(GraphError::CutInG0));
    }

    #[test]
    fn contraction_across_components_keeps_faces() {
        let g = bridged_blocks();
        // Split into the two blocks: (0,1)-(1,0)... reconnect so G0 falls apart.
        let e1 = g.line_at(g.slot_index(s(0, 1)));
        let e2 = g.line_at(g.slot_index(s(1, 0)));
        let split = [true, false]
            .into_iter()
            .map(|st| reconnect(&g, e1, e2, st))
            .find(|h| !h.is_connected_g0())
            .unwrap();
        let before = face_count(&split);
        let c = contract_disorder_line(&split, DisorderLine { a: 0, b: 2 }).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert!(c.is_connected_g0());
        assert_eq!(face_count(&c), before);
    }

    #[test]
    fn contraction_errors() {
        let g = melonic_insert(&StrandedGraph::g_min(3).unwrap(), FermionicLine::new(0, 3), 0).unwrap();
        assert_eq!(
            contract_disorder_line(&g, DisorderLine { a: 0, b: 2 }),
            Err(GraphError::NotDisorderPartners(0, 2))
        );
        // The inserted pair carries two closed parallel lines.
        assert_eq!(
            contract_disorder_line(&g, DisorderLine { a: 2, b: 3 }),
            Err(GraphError::DegenerateContraction)
        );
        assert_eq!(
            contract_disorder_line(&StrandedGraph::g_min(3).unwrap(), DisorderLine { a: 0, b: 1 }),
            Err(GraphError::TooSmallForRemoval)
        );
    }

    #[test]
    fn witness_refuses_g_cuts() {
        let g = melonic_insert(&StrandedGraph::g_min(2).unwrap(), FermionicLine::new(0, 2), 0).unwrap();
        let pair = common_face_pairs(&g)[0];
        assert_eq!(witness_non_maximal(&g, &pair).unwrap_err(), GraphError::CutInG);
    }

    /// A chain 0 = 1 = 2 = 3 of double edges with tadpoles at both ends and
    /// disorder lines 0-3, 1-2.
    fn tadpole_chain() -> StrandedGraph {
        StrandedGraph::build(
            4,
            4,
            &[
                (s(0, 0), s(0, 1)),
                (s(0, 2), s(1, 0)),
                (s(0, 3), s(1, 1)),
                (s(1, 2), s(2, 0)),
                (s(1, 3), s(2, 1)),
                (s(2, 2), s(3, 0)),
                (s(2, 3), s(3, 1)),
                (s(3, 2), s(3, 3)),
            ],
            &[(0, 3), (1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn tadpoles_block_both_bridges() {
        let g = tadpole_chain();
        let (e1, e2) = (g.line_at(6), g.line_at(7));
        let pair = common_face_pairs(&g)
            .into_iter()
            .find(|p| (p.e1, p.e2) == (e1, e2))
            .unwrap();
        let report = analyze_cut(&g, e1, e2).unwrap();
        assert!(report.cut_in_g0 && !report.cut_in_g);
        // Contracting either bridge closes up on the side it started from.
        let reglued = reconnect(&g, e1, e2, true);
        assert_eq!(reglued.g0_components().components(), 2);
        for d in reglued.disorder_lines() {
            let c = contract_with_loops(&reglued, d).unwrap();
            assert!(!c.graph.is_connected_g0());
        }
        assert!(witness_from_pair(&g, e1, e2, true, face_count(&g), true).is_none());
        let w = witness_non_maximal(&g, &pair).unwrap();
        let other = w.substitute.expect("another pair is used");
        assert!(!is_two_cut_in_g(&g, other.e1, other.e2));
        assert_eq!(w.graph.vertex_count(), 4);
        assert!(w.graph.is_connected_g0());
        assert!(face_count(&w.graph) > face_count(&g));
    }
}
