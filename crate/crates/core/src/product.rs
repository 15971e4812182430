//! Products of an arena with fixed finite-memory strategies.
//!
//! A product state is the tuple of memory values together with the current
//! vertex. Players with a fixed strategy follow its choice; every other
//! move is left open. The Inf-sets of plays consistent with the fixed
//! strategies are exactly the projections of reachable closed walks.

use std::collections::HashMap;

use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::graph;
use crate::lasso::Lasso;
use crate::objective::MullerObjective;
use crate::solver::FiniteMemoryStrategy;
use crate::vertex_set::{VertexId, VertexSet};

pub struct StrategyProduct {
    vertex: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    /// Vertices occurring in some reachable state.
    support: VertexSet,
}

fn check_width(arena: &GameArena, s: &FiniteMemoryStrategy) -> Result<()> {
    if s.width() != arena.num_vertices() {
        return Err(Error::WidthMismatch {
            expected: arena.num_vertices(),
            found: s.width(),
        });
    }
    Ok(())
}

impl StrategyProduct {
    /// Reachable part of the product from the initial vertex. Fails if a
    /// fixed strategy has no legal choice at a reachable state.
    pub fn build(arena: &GameArena, fixed: &[(PlayerId, &FiniteMemoryStrategy)]) -> Result<Self> {
        for (p, s) in fixed {
            arena.check_player(*p)?;
            check_width(arena, s)?;
        }
        let mut index: HashMap<(Vec<usize>, VertexId), usize> = HashMap::new();
        let mut states: Vec<(Vec<usize>, VertexId)> = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();

        let v0 = arena.initial();
        let m0: Vec<usize> = fixed.iter().map(|(_, s)| s.update(s.init(), v0)).collect();
        index.insert((m0.clone(), v0), 0);
        states.push((m0, v0));
        adj.push(Vec::new());

        let mut next = 0;
        while next < states.len() {
            let (mem, v) = states[next].clone();
            let owner = arena.owner(v);
            let moves = match fixed.iter().position(|(p, _)| *p == owner) {
                Some(i) => {
                    let (_, s) = fixed[i];
                    match s.choice(mem[i], v) {
                        Some(w) if w < arena.num_vertices() && arena.has_edge(v, w) => {
                            VertexSet::singleton(w)
                        }
                        _ => {
                            return Err(Error::InvalidStrategy(format!(
                                "player {} has no legal choice at {} under memory {}",
                                arena.player_name(owner),
                                arena.vertex_name(v),
                                s.labels()[mem[i]]
                            )))
                        }
                    }
                }
                None => arena.successors(v),
            };
            for w in moves {
                let m: Vec<usize> = fixed
                    .iter()
                    .zip(&mem)
                    .map(|((_, s), &mi)| s.update(mi, w))
                    .collect();
                let key = (m, w);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(key.clone(), id);
                        states.push(key);
                        adj.push(Vec::new());
                        id
                    }
                };
                adj[next].push(id);
            }
            next += 1;
        }
        let vertex: Vec<VertexId> = states.iter().map(|&(_, v)| v).collect();
        let support = vertex.iter().copied().collect();
        Ok(StrategyProduct {
            vertex,
            adj,
            support,
        })
    }

    pub fn num_states(&self) -> usize {
        self.vertex.len()
    }

    /// A consistent play whose Inf-set is exactly `inf`, if one exists.
    pub fn realize(&self, inf: VertexSet) -> Option<Lasso> {
        if inf.is_empty() || !inf.is_subset(self.support) {
            return None;
        }
        let mask: Vec<bool> = self.vertex.iter().map(|&v| inf.contains(v)).collect();
        for comp in graph::sccs(&self.adj, &mask) {
            if !graph::is_cyclic(&self.adj, &comp) {
                continue;
            }
            let proj: VertexSet = comp.iter().map(|&s| self.vertex[s]).collect();
            if proj != inf {
                continue;
            }
            let all = vec![true; self.vertex.len()];
            let path = graph::bfs_path(&self.adj, 0, &all, |s| comp.binary_search(&s).is_ok())
                .expect("every state is reachable");
            let entry = *path.last().unwrap();
            let walk = graph::covering_walk(&self.adj, &comp, entry);
            let prefix = path[..path.len() - 1]
                .iter()
                .map(|&s| self.vertex[s])
                .collect();
            let cycle = walk.iter().map(|&s| self.vertex[s]).collect();
            return Some(
                Lasso::new(prefix, cycle)
                    .expect("nonempty cycle")
                    .normalize(),
            );
        }
        None
    }

    /// Every Inf-set of a consistent play, ascending by mask.
    pub fn inf_sets(&self, arena: &GameArena) -> Vec<VertexSet> {
        self.support
            .subsets()
            .filter(|&b| !b.is_empty() && arena.admits_covering_cycle(b))
            .filter(|&b| self.realize(b).is_some())
            .collect()
    }

    /// A consistent play whose Inf-set is outside `target`, if any.
    pub fn escape(&self, arena: &GameArena, target: &MullerObjective) -> Option<Lasso> {
        self.support
            .subsets()
            .filter(|&b| !b.is_empty() && !target.contains_set(b) && arena.admits_covering_cycle(b))
            .find_map(|b| self.realize(b))
    }
}

/// Whether every play consistent with `strategy` for `p` has its Inf-set
/// in `target`.
pub fn check_strategy_containment(
    arena: &GameArena,
    p: PlayerId,
    strategy: &FiniteMemoryStrategy,
    target: &MullerObjective,
) -> Result<bool> {
    Ok(containment_counterexample(arena, p, strategy, target)?.is_none())
}

/// A consistent play leaving `target`, or `None` when contained.
pub fn containment_counterexample(
    arena: &GameArena,
    p: PlayerId,
    strategy: &FiniteMemoryStrategy,
    target: &MullerObjective,
) -> Result<Option<Lasso>> {
    target.check_arena(arena)?;
    let product = StrategyProduct::build(arena, &[(p, strategy)])?;
    Ok(product.escape(arena, target))
}

/// The unique play when every player follows its strategy.
pub fn profile_outcome(arena: &GameArena, strategies: &[FiniteMemoryStrategy]) -> Result<Lasso> {
    if strategies.len() != arena.num_players() {
        return Err(Error::ProfileArity {
            expected: arena.num_players(),
            found: strategies.len(),
        });
    }
    for s in strategies {
        check_width(arena, s)?;
    }
    let v0 = arena.initial();
    let mut mem: Vec<usize> = strategies.iter().map(|s| s.update(s.init(), v0)).collect();
    let mut v = v0;
    let mut seen: HashMap<(Vec<usize>, VertexId), usize> = HashMap::new();
    let mut play = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(mem.clone(), v)) {
            let cycle = play.split_off(start);
            return Ok(Lasso::new(play, cycle)?.normalize());
        }
        seen.insert((mem.clone(), v), play.len());
        play.push(v);
        let p = arena.owner(v);
        let w = match strategies[p].choice(mem[p], v) {
            Some(w) if w < arena.num_vertices() && arena.has_edge(v, w) => w,
            _ => {
                return Err(Error::InvalidStrategy(format!(
                    "player {} has no legal choice at {}",
                    arena.player_name(p),
                    arena.vertex_name(v)
                )))
            }
        };
        for (i, s) in strategies.iter().enumerate() {
            mem[i] = s.update(mem[i], w);
        }
        v = w;
    }
}
