use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a regular polygon needs at least 3 sides, got {0}")]
    TooFewSides(usize),

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("area must be positive and finite, got {0}")]
    InvalidArea(f64),

    #[error("index {index} is outside 1..={sides}")]
    IndexOutOfRange { index: usize, sides: usize },

    #[error("point ({x}, {y}) lies outside the half-plane of side S_{side}")]
    OutsidePolygon { x: f64, y: f64, side: usize },

    #[error("point ({x}, {y}) lies outside the disk of radius {radius}")]
    OutsideDisk { x: f64, y: f64, radius: f64 },

    #[error("invalid neighbour model: rank {rank} with {nodes} nodes (need 1 <= rank <= nodes)")]
    InvalidModel { nodes: usize, rank: usize },

    #[error("sample batch is empty")]
    EmptyBatch,

    #[error("{0}")]
    InvalidArgument(String),
}
