//! Graphviz export.
//!
//! Fermionic lines are solid edges labeled with the positions of their two
//! ends. Each disorder line is a dashed edge followed by its `q` strands,
//! drawn as a group of dotted parallel edges labeled by position.

use std::fmt::Write;

use crate::graph::StrandedGraph;

pub fn to_dot(g: &StrandedGraph) -> String {
    let q = g.q();
    let mut out = String::new();
    writeln!(out, "graph stranded {{").unwrap();
    writeln!(out, "  // q = {}, V = {}", q, g.vertex_count()).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..g.vertex_count() {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for line in g.lines() {
        let (s, t) = (g.slot(line.lo()), g.slot(line.hi()));
        writeln!(
            out,
            "  v{} -- v{} [style=solid, taillabel=\"{}\", headlabel=\"{}\"];",
            s.vertex, t.vertex, s.position, t.position
        )
        .unwrap();
    }
    for (i, d) in g.disorder_lines().enumerate() {
        writeln!(out, "  subgraph disorder_{i} {{").unwrap();
        writeln!(out, "    v{} -- v{} [style=dashed, penwidth=2];", d.a, d.b).unwrap();
        for m in 0..q {
            writeln!(
                out,
                "    v{} -- v{} [style=dotted, color=gray40, label=\"{m}\"];",
                d.a, d.b
            )
            .unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
