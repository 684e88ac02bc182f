//! JSON graph files:
//! `{"q": 4, "v": 2, "fermionic": [[[0,0],[1,0]], ...], "disorder": [[0,1]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{Slot, StrandedGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub q: usize,
    pub v: usize,
    pub fermionic: Vec<[[usize; 2]; 2]>,
    pub disorder: Vec<[usize; 2]>,
}

impl From<&StrandedGraph> for GraphFile {
    fn from(g: &StrandedGraph) -> Self {
        GraphFile {
            q: g.q(),
            v: g.vertex_count(),
            fermionic: g
                .fermionic_pairs()
                .into_iter()
                .map(|(s, t)| [[s.vertex, s.position], [t.vertex, t.position]])
                .collect(),
            disorder: g.disorder_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<&GraphFile> for StrandedGraph {
    type Error = GraphError;

    fn try_from(file: &GraphFile) -> Result<Self> {
        let fermionic: Vec<(Slot, Slot)> = file
            .fermionic
            .iter()
            .map(|[s, t]| (Slot::new(s[0], s[1]), Slot::new(t[0], t[1])))
            .collect();
        let disorder: Vec<(usize, usize)> = file.disorder.iter().map(|&[a, b]| (a, b)).collect();
        StrandedGraph::build(file.q, file.v, &fermionic, &disorder)
    }
}

impl Serialize for StrandedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StrandedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        StrandedGraph::try_from(&file).map_err(serde::de::Error::custom)
    }
}

pub fn graph_to_json(g: &StrandedGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serialization cannot fail")
}

pub fn graph_from_json(text: &str) -> Result<StrandedGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
    StrandedGraph::try_from(&file)
}
