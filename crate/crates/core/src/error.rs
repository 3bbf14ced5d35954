use thiserror::Error;

use crate::construct::ConstructionKind;
use crate::product::ProductKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{what} is {actual}, above the limit of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("item is not part of the product: {0}")]
    ItemNotInProduct(String),

    #[error("operation is not defined for the {0} product")]
    UnsupportedKind(ProductKind),

    #[error("unknown anchor vertex {0}")]
    UnknownAnchor(String),

    #[error("{0} is not an edge of the host graph")]
    EdgeNotInHost(String),

    #[error("{0} is not an edge of the factor")]
    EdgeNotInFactor(String),

    #[error("k must be a positive integer, got {0}")]
    InvalidK(u32),

    #[error("the {construction} construction does not exist in the {kind} product")]
    IncompatibleProduct {
        construction: ConstructionKind,
        kind: ProductKind,
    },

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    #[error("scenario {name}: {source}")]
    Scenario {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("corpus: {0}")]
    Corpus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
