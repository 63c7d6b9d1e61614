use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("invalid polycell: {0}")]
    InvalidPolycell(String),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("flow is not a tension (witness edge {edge})")]
    NotATension { edge: EdgeId },
    #[error("flow value {value} on edge {edge} is outside {{1-k, 1}}")]
    BadTensionValue { edge: EdgeId, value: i64 },
    #[error("boundary edge {edge} carries value {value}, expected 1")]
    BadBoundaryValue { edge: EdgeId, value: i64 },
    #[error("cell {cell} without negative edge")]
    CellWithoutNegativeEdge { cell: usize },
    #[error("cell {cell} has more than one negative edge")]
    CellWithExtraNegativeEdge { cell: usize },
    #[error("polycell boundary is not balanced")]
    UnbalancedBoundary,
    #[error("polycell is not full")]
    NotFull,
    #[error("polycell is not contractible")]
    NotContractible,
    #[error("polycell is not {k}-regular")]
    NotRegular { k: usize },
    #[error("vertex {vertex} is not a maximal vertex")]
    NotMaximalVertex { vertex: VertexId },
    #[error("tilings are not in a common component")]
    NotInCommonComponent,
    #[error("untilable: empty tiling set")]
    EmptyTilingSet,
    #[error("cell count {cells} exceeds the enumeration cap {cap}")]
    CellCapExceeded { cells: usize, cap: usize },
    #[error("coalescence cap reached after {0} doublings")]
    CoalescenceCap(u32),
    #[error("rhombus dimension {d} exceeds the cap {cap}")]
    DimensionCap { d: usize, cap: usize },
    #[error("{0}")]
    InvalidRegion(String),
}
