use thiserror::Error;

use crate::arena::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid arena: {}", format_violations(.0))]
    InvalidArena(Vec<Violation>),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown player `{0}`")]
    UnknownPlayer(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("player index {0} out of range")]
    PlayerOutOfRange(usize),

    #[error("start vertex {0} is not in the restricting set")]
    StartOutsideSet(usize),

    #[error("initial vertex is not kept")]
    InitialNotKept,

    #[error("vertex {0} has no successor inside the kept set")]
    BlockingRestriction(usize),

    #[error("objective width {found} does not match arena width {expected}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("invalid lasso: {0}")]
    InvalidLasso(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("expected a one-player arena, found {0} players")]
    NotOnePlayer(usize),

    #[error("expected a two-player coalition arena, found {0} players")]
    NotCoalition(usize),

    #[error("objective profile covers {found} players, arena has {expected}")]
    ProfileArity { expected: usize, found: usize },

    #[error("duplicate objective name `{0}`")]
    DuplicateName(String),

    #[error("unknown objective `{0}`")]
    UnknownObjective(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("solver paths disagree from vertex {0}")]
    SolverDisagreement(usize),

    #[error("internal check failed: {0}")]
    Certification(String),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
