use std::fmt;

use thiserror::Error;

use crate::drawing::Violation;
use crate::set_system::MemberKey;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage that produced an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Validate,
    OuterFace,
    Rotation,
    TriangleFamily,
    Matching,
    Gamma1,
    FilterM2,
    Phi,
    Oracle,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Validate => "validate",
            Stage::OuterFace => "outer-face",
            Stage::Rotation => "rotation",
            Stage::TriangleFamily => "triangle-family",
            Stage::Matching => "matching",
            Stage::Gamma1 => "gamma1",
            Stage::FilterM2 => "filter-m2",
            Stage::Phi => "phi",
            Stage::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pair: both endpoints are vertex {0}")]
    InvalidPair(usize),

    #[error("vertex {index} is outside the ground set of size {n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("unknown member key {0}")]
    UnknownKey(MemberKey),

    #[error("member key {0} appears more than once")]
    DuplicateKey(MemberKey),

    #[error("{what} = {value} is out of range ({expected})")]
    Range {
        what: &'static str,
        value: String,
        expected: String,
    },

    #[error("ground set has {n} vertices; the matching needs at least {min_n}")]
    TooSmall { n: usize, min_n: usize },

    #[error("no same-part pair of unmatched vertices after {found} of {wanted} pairs")]
    InfeasiblePartition { found: usize, wanted: usize },

    #[error("invalid drawing: {} violation(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidDrawing(Vec<Violation>),

    #[error("edges to vertices {0} and {1} leave the root in the same direction")]
    DegenerateRotation(u32, u32),

    #[error("no outer-face vertex: {0}")]
    NoOuterVertex(String),

    #[error("point lies on the triangle boundary")]
    OnBoundary,

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("no matched pair survives the in-degree filter")]
    EmptyM2,

    #[error("oracle size guard: n = {n} exceeds {limit}")]
    Guard { n: usize, limit: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl fmt::Display, expected: impl Into<String>) -> Self {
        Error::Range {
            what,
            value: value.to_string(),
            expected: expected.into(),
        }
    }

    pub(crate) fn at(self, stage: Stage) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
