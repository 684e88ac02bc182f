use std::collections::BTreeSet;

use sykgraph_core::enumerate::{count_raw_structures, double_factorial, raw_structure_count, EnumerationOptions};
use sykgraph_core::verify::{tally_graphs, HistogramCell};
use sykgraph_core::{degree, enumerate_graphs, random_graph, verify_theorem, GraphError, DEFAULT_BUDGET};

fn cells(report: &sykgraph_core::EnumerationReport) -> Vec<(usize, i64, u64)> {
    report
        .histogram
        .iter()
        .map(|c: &HistogramCell| (c.faces, c.delta, c.count))
        .collect()
}

#[test]
fn raw_counts_match_the_closed_form() {
    for (q, v) in [(2, 2), (2, 4), (3, 2), (3, 4), (4, 2), (2, 6), (5, 2)] {
        let expected = double_factorial((q * v - 1) as u64) * double_factorial((v - 1) as u64);
        assert_eq!(raw_structure_count(q, v), expected);
        assert_eq!(
            count_raw_structures(q, v, DEFAULT_BUDGET).unwrap(),
            expected,
            "q={q} v={v}"
        );
    }
}

#[test]
fn small_enumerations_are_complete_and_distinct() {
    for (q, v, total) in [
        (2, 2, 2),
        (3, 2, 15),
        (4, 2, 96),
        (2, 4, 144),
        (3, 4, 29160),
        (2, 6, 57600),
    ] {
        let graphs: Vec<_> = enumerate_graphs(q, v, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(graphs.len(), total, "q={q} v={v}");
        let distinct: BTreeSet<_> = graphs.iter().collect();
        assert_eq!(distinct.len(), total);
        for g in &graphs {
            assert!(g.is_connected_g0());
            let rebuilt = sykgraph_core::StrandedGraph::build(q, v, &g.fermionic_pairs(), &g.disorder_pairs()).unwrap();
            assert_eq!(&rebuilt, g);
        }
    }
}

#[test]
fn histograms_are_stable() {
    type Cells = &'static [(usize, i64, u64)];
    let expected: [(usize, usize, Cells); 6] = [
        (2, 2, &[(1, 0, 1), (2, 1, 1)]),
        (2, 4, &[(1, -1, 60), (2, 0, 60), (3, 1, 24)]),
        (2, 6, &[(1, -2, 19680), (2, -1, 24960), (3, 0, 10560), (4, 1, 2400)]),
        (3, 2, &[(1, -1, 8), (2, 0, 6), (3, 1, 1)]),
        (
            3,
            4,
            &[(1, -3, 10800), (2, -2, 12420), (3, -1, 5022), (4, 0, 864), (5, 1, 54)],
        ),
        (4, 2, &[(1, -2, 42), (2, -1, 41), (3, 0, 12), (4, 1, 1)]),
    ];
    for (q, v, histogram) in expected {
        let report = verify_theorem(q, v, &EnumerationOptions::default()).unwrap();
        assert_eq!(cells(&report), histogram, "q={q} v={v}");
        assert_eq!(report.total, histogram.iter().map(|c| c.2).sum::<u64>());
        assert!(report.theorem_ok && report.corollary_ok);
    }
}

#[test]
fn worker_count_does_not_change_the_tally() {
    for (q, v) in [(2, 6), (3, 4)] {
        let serial = tally_graphs(q, v, &EnumerationOptions::default()).unwrap();
        for (workers, depth) in [(2, 1), (4, 2), (3, 3)] {
            let options = EnumerationOptions {
                workers,
                partition_depth: depth,
                ..Default::default()
            };
            assert_eq!(tally_graphs(q, v, &options).unwrap(), serial);
        }
    }
}

#[test]
fn budget_refusal_reports_the_cardinality() {
    match enumerate_graphs(4, 6, DEFAULT_BUDGET).map(|_| ()) {
        Err(GraphError::BudgetExceeded { required, budget }) => {
            assert_eq!(required, raw_structure_count(4, 6));
            assert_eq!(budget, DEFAULT_BUDGET);
        }
        other => panic!("expected a refusal, got {other:?}"),
    }
}

#[test]
fn degree_one_fraction_at_twenty_vertices() {
    let n = 10_000u64;
    let mut degree_one = 0;
    for seed in 0..n {
        let d = degree(&random_graph(4, 20, seed).unwrap()).delta;
        assert!(d <= 1);
        degree_one += u64::from(d == 1);
    }
    // Observational only: melonic graphs are vanishingly rare among uniform samples.
    println!("q=4 V=20: {degree_one}/{n} samples with degree one");
}
