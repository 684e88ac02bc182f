use sykgraph_core::enumerate::EnumerationOptions;
use sykgraph_core::surgery::is_two_cut_in_g;
use sykgraph_core::{
    analyze_cut, common_face_pairs, enumerate_graphs, face_count, is_melonic, reglue_gain_face, witness_non_maximal,
    GraphError, StrandedGraph, WitnessRecord, DEFAULT_BUDGET,
};

#[test]
fn reglue_gains_exactly_one_face_when_g0_survives() {
    for (q, v) in [(2, 4), (3, 4), (2, 6)] {
        for g in enumerate_graphs(q, v, DEFAULT_BUDGET).unwrap() {
            let f = face_count(&g);
            for pair in common_face_pairs(&g) {
                let report = analyze_cut(&g, pair.e1, pair.e2).unwrap();
                match reglue_gain_face(&g, &pair) {
                    Ok(h) => {
                        assert_eq!(face_count(&h), f + 1);
                        assert!(h.is_connected_g0());
                        assert_eq!(h.vertex_count(), v);
                    }
                    Err(e) => {
                        assert_eq!(e, GraphError::CutInG0);
                        assert!(report.cut_in_g0);
                    }
                }
            }
        }
    }
}

#[test]
fn melonic_graphs_have_only_cut_pairs() {
    for (q, v) in [(2, 4), (3, 4), (4, 4), (2, 6)] {
        for g in sykgraph_core::generate_melonic(q, v, sykgraph_core::GenerationMode::Exhaustive).unwrap() {
            for pair in common_face_pairs(&g) {
                assert!(is_two_cut_in_g(&g, pair.e1, pair.e2));
                assert_eq!(witness_non_maximal(&g, &pair).unwrap_err(), GraphError::CutInG);
            }
        }
    }
}

#[test]
fn witnesses_at_six_vertices() {
    let options = EnumerationOptions::default();
    let failures = sykgraph_core::enumerate::fold_graphs(
        2,
        6,
        &options,
        || 0u64,
        |mut bad, g| {
            let f = face_count(g);
            for pair in common_face_pairs(g) {
                if is_two_cut_in_g(g, pair.e1, pair.e2) {
                    continue;
                }
                let ok = witness_non_maximal(g, &pair).is_ok_and(|w| {
                    w.graph.vertex_count() == 6 && w.graph.is_connected_g0() && face_count(&w.graph) > f
                });
                bad += u64::from(!ok);
            }
            bad
        },
        |a, b| a + b,
    )
    .unwrap();
    assert_eq!(failures, 0);
}

#[test]
fn witness_record_round_trips() {
    let g = StrandedGraph::build(
        2,
        2,
        &[
            (sykgraph_core::Slot::new(0, 0), sykgraph_core::Slot::new(1, 1)),
            (sykgraph_core::Slot::new(0, 1), sykgraph_core::Slot::new(1, 0)),
        ],
        &[(0, 1)],
    )
    .unwrap();
    let pair = common_face_pairs(&g)[0];
    let w = witness_non_maximal(&g, &pair).unwrap();
    let record = WitnessRecord::new(&g, &pair, &w);
    let text = serde_json::to_string(&record).unwrap();
    assert!(text.contains("\"case\":1"));
    assert!(!text.contains("substitute_pair"));
    let back: WitnessRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(back, record);
    assert!(is_melonic(&back.output_graph).melonic);
}
