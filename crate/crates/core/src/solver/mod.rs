//! Two-player zero-sum Muller games on coalition arenas.
//!
//! Verdicts come from a Zielonka-tree recursion over the Muller family. A
//! second path expands the arena by latest-appearance records and solves
//! the resulting parity game; it is used for strategy extraction on small
//! arenas and as a cross-check.

mod lar;
mod parity;
mod strategy;
mod zielonka;

use crate::arena::{GameArena, PlayerId, ANTAGONIST, PROTAGONIST};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::objective::MullerObjective;
use crate::vertex_set::{VertexId, VertexSet};

pub use strategy::FiniteMemoryStrategy;

/// Winner of a zero-sum game from a given vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    Protagonist,
    Antagonist,
}

impl Winner {
    pub fn player(self) -> PlayerId {
        match self {
            Winner::Protagonist => PROTAGONIST,
            Winner::Antagonist => ANTAGONIST,
        }
    }
}

/// Which algorithm produced a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Zielonka,
    Lar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest arena on which the record-expansion path runs.
    pub lar_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { lar_cap: 8 }
    }
}

#[derive(Debug, Clone)]
pub struct ZeroSumSolution {
    pub winner: Winner,
    /// Winning for `winner` from the queried vertex. The antagonist's
    /// strategy wins the complement family.
    pub strategy: FiniteMemoryStrategy,
    pub engine: Engine,
}

/// Per-vertex answer to "does the protagonist win from here".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WinnableMap(Vec<bool>);

impl WinnableMap {
    pub fn from_region(width: usize, region: VertexSet) -> Self {
        WinnableMap((0..width).map(|v| region.contains(v)).collect())
    }

    pub fn get(&self, v: VertexId) -> bool {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn region(&self) -> VertexSet {
        (0..self.0.len()).filter(|&v| self.0[v]).collect()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

fn check_coalition(coalition: &GameArena, obj: &MullerObjective) -> Result<()> {
    if coalition.num_players() != 2 {
        return Err(Error::NotCoalition(coalition.num_players()));
    }
    obj.check_arena(coalition)
}

/// Winning regions `[protagonist, antagonist]` of the coalition game,
/// computed by the Zielonka-tree recursion.
pub fn winning_regions(coalition: &GameArena, obj: &MullerObjective) -> Result<[VertexSet; 2]> {
    check_coalition(coalition, obj)?;
    Ok(zielonka::Solver::new(coalition, obj).regions())
}

/// Winning regions computed through the record expansion and a parity
/// game. Fails with [`Error::Unsupported`] above the configured cap.
pub fn winning_regions_lar(
    coalition: &GameArena,
    obj: &MullerObjective,
    config: &SolverConfig,
) -> Result<[VertexSet; 2]> {
    check_coalition(coalition, obj)?;
    check_lar_cap(coalition, config)?;
    let product = lar::Product::build(coalition, obj, coalition.all());
    Ok(product.solve().regions())
}

fn check_lar_cap(coalition: &GameArena, config: &SolverConfig) -> Result<()> {
    if coalition.num_vertices() > config.lar_cap {
        return Err(Error::Unsupported(format!(
            "record expansion is capped at {} vertices",
            config.lar_cap
        )));
    }
    Ok(())
}

/// Solves the coalition game from `from` with the default configuration.
pub fn solve_zero_sum(
    coalition: &GameArena,
    obj: &MullerObjective,
    from: VertexId,
) -> Result<ZeroSumSolution> {
    solve_zero_sum_with(coalition, obj, from, &SolverConfig::default())
}

pub fn solve_zero_sum_with(
    coalition: &GameArena,
    obj: &MullerObjective,
    from: VertexId,
    config: &SolverConfig,
) -> Result<ZeroSumSolution> {
    check_coalition(coalition, obj)?;
    coalition.check_vertex(from)?;
    let solver = zielonka::Solver::new(coalition, obj);
    let [prot, _] = solver.regions();
    let winner = if prot.contains(from) {
        Winner::Protagonist
    } else {
        Winner::Antagonist
    };
    if coalition.num_vertices() <= config.lar_cap {
        let product = lar::Product::build(coalition, obj, VertexSet::singleton(from));
        let solution = product.solve();
        if solution.winner_from(from) != winner {
            return Err(Error::SolverDisagreement(from));
        }
        let strategy = product.strategy(&solution, winner.player(), from);
        return Ok(ZeroSumSolution {
            winner,
            strategy,
            engine: Engine::Lar,
        });
    }
    Ok(ZeroSumSolution {
        winner,
        strategy: solver.strategy(winner.player(), from),
        engine: Engine::Zielonka,
    })
}

/// Zielonka-tree strategy for `player`, regardless of the configured cap.
/// Winning from every vertex of that player's region.
pub fn zielonka_strategy(
    coalition: &GameArena,
    obj: &MullerObjective,
    player: PlayerId,
    from: VertexId,
) -> Result<FiniteMemoryStrategy> {
    check_coalition(coalition, obj)?;
    coalition.check_vertex(from)?;
    coalition.check_player(player)?;
    Ok(zielonka::Solver::new(coalition, obj).strategy(player, from))
}

/// Record-expansion strategy for `player` from `from`.
pub fn lar_strategy(
    coalition: &GameArena,
    obj: &MullerObjective,
    player: PlayerId,
    from: VertexId,
    config: &SolverConfig,
) -> Result<FiniteMemoryStrategy> {
    check_coalition(coalition, obj)?;
    check_lar_cap(coalition, config)?;
    coalition.check_vertex(from)?;
    coalition.check_player(player)?;
    let product = lar::Product::build(coalition, obj, VertexSet::singleton(from));
    let solution = product.solve();
    Ok(product.strategy(&solution, player, from))
}

/// Whether `p` can force `obj` from the initial vertex against all others.
pub fn winnable(arena: &GameArena, p: PlayerId, obj: &MullerObjective) -> Result<bool> {
    Ok(winnable_map(arena, p, obj)?.get(arena.initial()))
}

/// Whether `p` can force `obj` from each vertex.
pub fn winnable_map(arena: &GameArena, p: PlayerId, obj: &MullerObjective) -> Result<WinnableMap> {
    let coalition = arena.coalition_arena(p)?;
    let [prot, _] = winning_regions(&coalition, obj)?;
    Ok(WinnableMap::from_region(arena.num_vertices(), prot))
}

/// Same as [`winnable_map`] through the record-expansion path.
pub fn winnable_map_lar(
    arena: &GameArena,
    p: PlayerId,
    obj: &MullerObjective,
    config: &SolverConfig,
) -> Result<WinnableMap> {
    let coalition = arena.coalition_arena(p)?;
    let [prot, _] = winning_regions_lar(&coalition, obj, config)?;
    Ok(WinnableMap::from_region(arena.num_vertices(), prot))
}

/// In a one-player arena, a play from the initial vertex whose Inf-set
/// lies in `obj`, if any. Members are tried in ascending mask order.
pub fn one_player_wins(subgame: &GameArena, obj: &MullerObjective) -> Result<Option<Lasso>> {
    if subgame.num_players() != 1 {
        return Err(Error::NotOnePlayer(subgame.num_players()));
    }
    obj.check_arena(subgame)?;
    for inf in obj.members() {
        if subgame.is_feasible_inf_set(inf) {
            return Ok(Lasso::realize(subgame, subgame.all(), inf));
        }
    }
    Ok(None)
}
