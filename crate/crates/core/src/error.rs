use thiserror::Error;

use crate::graph::{FermionicLine, Slot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("q must be at least 2, got {0}")]
    StrandCount(usize),
    #[error("vertex count must be even and at least 2, got {0}")]
    VertexCount(usize),
    #[error("slot {0} is out of range")]
    SlotOutOfRange(Slot),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("slot {0} is paired with itself")]
    SlotFixedPoint(Slot),
    #[error("vertex {0} is disorder-paired with itself")]
    VertexFixedPoint(usize),
    #[error("slot {0} is covered more than once")]
    SlotCoveredTwice(Slot),
    #[error("vertex {0} is covered more than once")]
    VertexCoveredTwice(usize),
    #[error("slot {0} is not covered by the fermionic pairing")]
    SlotUncovered(Slot),
    #[error("vertex {0} is not covered by the disorder pairing")]
    VertexUncovered(usize),
    #[error("{0} is not a fermionic line of the graph")]
    NotALine(FermionicLine),
    #[error("position {position} is out of range for q = {q}")]
    PositionOutOfRange { position: usize, q: usize },
    #[error("vertices {0} and {1} are not disorder partners")]
    NotDisorderPartners(usize, usize),
    #[error("melon site ({a}, {b}, k = {k}) is not valid in this graph")]
    InvalidMelonSite { a: usize, b: usize, k: usize },
    #[error("cannot remove a melon from a graph with fewer than 4 vertices")]
    TooSmallForRemoval,
    #[error("the two lines must be distinct")]
    SameLine,
    #[error("the pair is a 2-cut in G0, regluing would disconnect it")]
    CutInG0,
    #[error("the pair is a 2-cut in G, no witness exists")]
    CutInG,
    #[error("no surgery on the pair gains a face")]
    NoFaceGain,
    #[error("contracting the disorder line would close a loop with no surviving half-line")]
    DegenerateContraction,
    #[error("canonical key is limited to V <= {max_v} and q <= {max_q}")]
    CanonicalSizeGuard { max_v: usize, max_q: usize },
    #[error("enumeration needs {required} raw structures, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("graphs have different strand counts ({0} and {1})")]
    StrandCountMismatch(usize, usize),
    #[error("graph file: {0}")]
    Format(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
