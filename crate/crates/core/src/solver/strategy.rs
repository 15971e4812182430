use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::vertex_set::VertexId;

/// A strategy with finitely many memory states.
///
/// On every visited vertex `v`, including the first one, the memory is
/// updated to `update(m, v)`; if the strategy's player owns `v`, the next
/// vertex is then `choice(m', v)` with the updated memory `m'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMemoryStrategy {
    labels: Vec<String>,
    init: usize,
    update: Vec<Vec<usize>>,
    choice: Vec<Vec<Option<VertexId>>>,
}

impl FiniteMemoryStrategy {
    /// `update[m][v]` and `choice[m][v]`; `choice` is `None` on vertices the
    /// player does not own.
    pub fn new(
        labels: Vec<String>,
        init: usize,
        update: Vec<Vec<usize>>,
        choice: Vec<Vec<Option<VertexId>>>,
    ) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::InvalidStrategy("no memory states".into()));
        }
        if init >= k {
            return Err(Error::InvalidStrategy(format!(
                "initial memory {init} out of range"
            )));
        }
        if update.len() != k || choice.len() != k {
            return Err(Error::InvalidStrategy(
                "update and choice tables need one row per memory state".into(),
            ));
        }
        let width = update[0].len();
        if update.iter().any(|r| r.len() != width) || choice.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidStrategy("ragged tables".into()));
        }
        if let Some(&m) = update.iter().flatten().find(|&&m| m >= k) {
            return Err(Error::InvalidStrategy(format!(
                "memory state {m} out of range"
            )));
        }
        Ok(FiniteMemoryStrategy {
            labels,
            init,
            update,
            choice,
        })
    }

    /// Memoryless strategy of `p` following `moves`; missing moves fall
    /// back to the smallest successor.
    pub fn positional(arena: &GameArena, p: PlayerId, moves: &[Option<VertexId>]) -> Self {
        let n = arena.num_vertices();
        let choice = (0..n)
            .map(|v| {
                (arena.owner(v) == p).then(|| {
                    moves
                        .get(v)
                        .copied()
                        .flatten()
                        .unwrap_or_else(|| arena.successors(v).first().unwrap())
                })
            })
            .collect();
        FiniteMemoryStrategy {
            labels: vec!["m0".into()],
            init: 0,
            update: vec![vec![0; n]],
            choice: vec![choice],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_memory(&self) -> usize {
        self.labels.len()
    }

    pub fn width(&self) -> usize {
        self.update[0].len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn update(&self, m: usize, v: VertexId) -> usize {
        self.update[m][v]
    }

    pub fn choice(&self, m: usize, v: VertexId) -> Option<VertexId> {
        self.choice[m][v]
    }

    /// Checks that the tables fit `arena` and that `p` has an edge-successor
    /// choice at each of its vertices under every memory state.
    pub fn validate(&self, arena: &GameArena, p: PlayerId) -> Result<()> {
        arena.check_player(p)?;
        if self.width() != arena.num_vertices() {
            return Err(Error::WidthMismatch {
                expected: arena.num_vertices(),
                found: self.width(),
            });
        }
        for (m, row) in self.choice.iter().enumerate() {
            for (v, &c) in row.iter().enumerate() {
                match c {
                    Some(_) if arena.owner(v) != p => {
                        return Err(Error::InvalidStrategy(format!(
                            "choice at {} which player {} does not own",
                            arena.vertex_name(v),
                            arena.player_name(p)
                        )))
                    }
                    Some(w) if w >= arena.num_vertices() || !arena.has_edge(v, w) => {
                        return Err(Error::InvalidStrategy(format!(
                            "memory {}: choice at {} is not a successor",
                            self.labels[m],
                            arena.vertex_name(v)
                        )))
                    }
                    None if arena.owner(v) == p => {
                        return Err(Error::InvalidStrategy(format!(
                            "memory {}: no choice at {}",
                            self.labels[m],
                            arena.vertex_name(v)
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}
