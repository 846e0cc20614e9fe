use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group order: {0}")]
    InvalidOrder(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("capacity exceeded for {what}: {size} > {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("the identity element is in the connection set")]
    IdentityInConnectionSet,

    #[error("connection set is not symmetric: {element} is present but its inverse {inverse} is not")]
    NotSymmetric { element: usize, inverse: usize },

    #[error("duplicate entry {0} in rotation")]
    DuplicateEntry(usize),

    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("map over {0} is not connected")]
    Disconnected(String),

    #[error("permutation group is not transitive")]
    NotTransitive,

    #[error("point stabilizer is not cyclic")]
    StabilizerNotCyclic,

    #[error("no regular subgroup isomorphic to {0}")]
    NoRegularCopy(String),

    #[error("{0} is not in the class Z_n x Z_2^r, Z_n x Z_4, Z_n x Q_8 (n odd square-free)")]
    NotInClassM(String),

    #[error("disconnected maps over {0} require a subgroup reduction that is not available for this group")]
    UnsupportedReduction(String),

    #[error("construction precondition failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("witness failed re-validation: {0}")]
    Witness(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
