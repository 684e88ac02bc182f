//! Combinatorics of the stranded Feynman graphs of the SYK model.
//!
//! A graph has `V` vertices, each carrying `q` slots and exactly one disorder
//! line; fermionic lines pair the slots. Faces alternate fermionic lines and
//! disorder strands, and the degree `F - (q - 1) V / 2` is the exponent of
//! `N` in the graph's weight. The crate builds and validates these graphs,
//! traces faces, recognises melonic graphs by reduction, performs the
//! cut-and-reglue surgeries that improve non-maximal graphs, and enumerates
//! all labeled graphs at small `(q, V)` to check that the degree never
//! exceeds one and that the degree-one graphs are exactly the melonic ones.

pub mod canon;
pub mod dot;
mod dsu;
pub mod enumerate;
pub mod error;
pub mod faces;
pub mod generate;
pub mod graph;
pub mod io;
pub mod melonic;
pub mod surgery;
pub mod verify;

pub use canon::{canonical_key, is_isomorphic, CanonicalKey};
pub use enumerate::{enumerate_graphs, random_graph, EnumerationOptions, DEFAULT_BUDGET};
pub use error::{GraphError, Result};
pub use faces::{degree, face_count, trace_faces, DegreeReport, FaceSet};
pub use generate::{generate_melonic, GenerationMode};
pub use graph::{DisorderLine, FermionicLine, Slot, StrandedGraph, UnderlyingGraph};
pub use io::{graph_from_json, graph_to_json, GraphFile};
pub use melonic::{
    find_melons, is_melonic, melonic_insert, remove_melon, star_glue, GlueOrientation, MelonSite, ReductionCertificate,
};
pub use surgery::{
    analyze_cut, common_face_pairs, contract_disorder_line, reglue_gain_face, witness_non_maximal, CommonFacePair,
    CutReport, Witness, WitnessRecord,
};
pub use verify::{verify_theorem, EnumerationReport};
