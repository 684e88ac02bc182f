//! Exhaustive verification of the degree bound, the characterisation of the
//! degree-one class as the melonic graphs, and the 2-cut characterisation.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumerate::{fold_graphs, raw_structure_count, EnumerationOptions};
use crate::error::Result;
use crate::faces::{delta_of, trace_faces};
use crate::graph::StrandedGraph;
use crate::melonic::melonic_verdict;
use crate::surgery::is_two_cut_in_g;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub faces: usize,
    pub delta: i64,
    pub melonic: bool,
    /// Every pair of distinct lines sharing a face is a 2-cut in G.
    pub common_face_pairs_cut: bool,
}

pub fn classify(g: &StrandedGraph) -> Classification {
    let faces = trace_faces(g);
    let f = faces.face_count();
    let common_face_pairs_cut = faces.lines_by_face(g).iter().all(|lines| {
        lines
            .iter()
            .enumerate()
            .all(|(i, &e1)| lines[i + 1..].iter().all(|&e2| is_two_cut_in_g(g, e1, e2)))
    });
    Classification {
        faces: f,
        delta: delta_of(f, g.q(), g.vertex_count()),
        melonic: melonic_verdict(g),
        common_face_pairs_cut,
    }
}

/// Partial counts, merged associatively across workers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub total: u64,
    pub histogram: BTreeMap<(usize, i64), u64>,
    pub melonic: u64,
    pub delta_one: u64,
    pub delta_one_not_melonic: u64,
    pub melonic_not_delta_one: u64,
    pub corollary_mismatches: u64,
}

impl Tally {
    pub fn record(mut self, c: &Classification) -> Self {
        self.total += 1;
        *self.histogram.entry((c.faces, c.delta)).or_default() += 1;
        self.melonic += u64::from(c.melonic);
        self.delta_one += u64::from(c.delta == 1);
        self.delta_one_not_melonic += u64::from(c.delta == 1 && !c.melonic);
        self.melonic_not_delta_one += u64::from(c.melonic && c.delta != 1);
        self.corollary_mismatches += u64::from(c.melonic != c.common_face_pairs_cut);
        self
    }

    pub fn merge(mut self, other: Tally) -> Self {
        self.total += other.total;
        for (k, n) in other.histogram {
            *self.histogram.entry(k).or_default() += n;
        }
        self.melonic += other.melonic;
        self.delta_one += other.delta_one;
        self.delta_one_not_melonic += other.delta_one_not_melonic;
        self.melonic_not_delta_one += other.melonic_not_delta_one;
        self.corollary_mismatches += other.corollary_mismatches;
        self
    }

    pub fn max_delta(&self) -> Option<i64> {
        self.histogram.keys().map(|&(_, d)| d).max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramCell {
    pub faces: usize,
    pub delta: i64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub q: usize,
    pub v: usize,
    pub budget: u128,
    pub workers: usize,
    pub raw_structures: u128,
    pub total: u64,
    pub histogram: Vec<HistogramCell>,
    pub max_delta: Option<i64>,
    pub delta_one_count: u64,
    pub melonic_count: u64,
    pub delta_one_not_melonic: u64,
    pub melonic_not_delta_one: u64,
    pub corollary_mismatches: u64,
    pub theorem_ok: bool,
    pub corollary_ok: bool,
    /// Not reproducible; excluded when comparing reports.
    pub timing: Timing,
}

impl EnumerationReport {
    pub fn from_tally(q: usize, v: usize, options: &EnumerationOptions, tally: &Tally, wall_seconds: f64) -> Self {
        let max_delta = tally.max_delta();
        EnumerationReport {
            q,
            v,
            budget: options.budget,
            workers: options.workers,
            raw_structures: raw_structure_count(q, v),
            total: tally.total,
            histogram: tally
                .histogram
                .iter()
                .map(|(&(faces, delta), &count)| HistogramCell { faces, delta, count })
                .collect(),
            max_delta,
            delta_one_count: tally.delta_one,
            melonic_count: tally.melonic,
            delta_one_not_melonic: tally.delta_one_not_melonic,
            melonic_not_delta_one: tally.melonic_not_delta_one,
            corollary_mismatches: tally.corollary_mismatches,
            theorem_ok: max_delta == Some(1) && tally.delta_one_not_melonic == 0 && tally.melonic_not_delta_one == 0,
            corollary_ok: tally.corollary_mismatches == 0,
            timing: Timing { wall_seconds },
        }
    }

    /// One row per (F, delta) cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,v,faces,delta,count\n");
        for c in &self.histogram {
            out.push_str(&format!("{},{},{},{},{}\n", self.q, self.v, c.faces, c.delta, c.count));
        }
        out
    }
}

pub fn tally_graphs(q: usize, v: usize, options: &EnumerationOptions) -> Result<Tally> {
    fold_graphs(
        q,
        v,
        options,
        Tally::default,
        |t, g| t.record(&classify(g)),
        Tally::merge,
    )
}

pub fn verify_theorem(q: usize, v: usize, options: &EnumerationOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let tally = tally_graphs(q, v, options)?;
    Ok(EnumerationReport::from_tally(
        q,
        v,
        options,
        &tally,
        start.elapsed().as_secs_f64(),
    ))
}
