//! Privacy-aware analysis of multiplayer games on graphs with Muller
//! objectives.

pub mod adversary;
pub mod arena;
pub mod error;
pub mod fixtures;
mod graph;
pub mod lasso;
pub mod objective;
pub mod oracle;
pub mod privacy;
pub mod product;
pub mod solver;
pub mod vertex_set;

pub use adversary::{CandidateSet, KnowledgeType, ObjectiveUniverse};
pub use arena::GameArena;
pub use error::{Error, Result};
pub use lasso::Lasso;
pub use objective::{MullerObjective, ObjectiveProfile};
pub use solver::{FiniteMemoryStrategy, WinnableMap, Winner};
pub use vertex_set::{VertexId, VertexSet, MAX_VERTICES};
