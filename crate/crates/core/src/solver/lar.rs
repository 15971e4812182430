//! Latest-appearance-record expansion of a Muller game into a parity game.
//!
//! A record is a permutation of the vertices, most recent first, packed
//! four bits per entry. Visiting `v` at position `h` moves `v` to the front;
//! the first `h + 1` entries then form the hit set, and the state gets
//! priority `2(h+1)` if the hit set is in the family, `2(h+1) - 1`
//! otherwise.

use std::collections::{HashMap, VecDeque};

use super::parity::{ParityGame, ParitySolution};
use super::{FiniteMemoryStrategy, Winner};
use crate::arena::{GameArena, PlayerId};
use crate::objective::MullerObjective;
use crate::vertex_set::{VertexId, VertexSet};

type Record = u64;

fn identity(n: usize) -> Record {
    (0..n).fold(0, |r, i| r | (i as u64) << (4 * i))
}

fn entry(r: Record, i: usize) -> VertexId {
    ((r >> (4 * i)) & 0xf) as usize
}

/// Moves `v` to the front; returns the new record and the old position.
fn visit(r: Record, n: usize, v: VertexId) -> (Record, usize) {
    let h = (0..n)
        .find(|&i| entry(r, i) == v)
        .expect("vertex in record");
    let low_mask = (1u64 << (4 * h)) - 1;
    let low = r & low_mask;
    let high = if 4 * (h + 1) >= 64 {
        0
    } else {
        (r >> (4 * (h + 1))) << (4 * (h + 1))
    };
    (high | (low << 4) | v as u64, h)
}

fn hit_set(r: Record, h: usize) -> VertexSet {
    (0..=h).map(|i| entry(r, i)).collect()
}

pub(super) struct Product<'a> {
    arena: &'a GameArena,
    states: Vec<(Record, usize)>,
    starts: Vec<(VertexId, usize)>,
    game: ParityGame,
}

pub(super) struct LarSolution {
    inner: ParitySolution,
    regions: [VertexSet; 2],
}

impl LarSolution {
    pub(super) fn regions(&self) -> [VertexSet; 2] {
        self.regions
    }

    pub(super) fn winner_from(&self, v: VertexId) -> Winner {
        if self.regions[0].contains(v) {
            Winner::Protagonist
        } else {
            Winner::Antagonist
        }
    }
}

impl<'a> Product<'a> {
    /// Expands the plays starting from each vertex in `starts`.
    pub(super) fn build(arena: &'a GameArena, obj: &MullerObjective, starts: VertexSet) -> Self {
        let n = arena.num_vertices();
        let mut index: HashMap<(Record, usize), usize> = HashMap::new();
        let mut states = Vec::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();

        let mut intern = |s: (Record, usize),
                          states: &mut Vec<(Record, usize)>,
                          succ: &mut Vec<Vec<usize>>,
                          queue: &mut VecDeque<usize>| {
            *index.entry(s).or_insert_with(|| {
                states.push(s);
                succ.push(Vec::new());
                queue.push_back(states.len() - 1);
                states.len() - 1
            })
        };

        let mut start_ids = Vec::new();
        for v in starts {
            let id = intern(visit(identity(n), n, v), &mut states, &mut succ, &mut queue);
            start_ids.push((v, id));
        }
        while let Some(s) = queue.pop_front() {
            let (r, _) = states[s];
            for w in arena.successors(entry(r, 0)) {
                let t = intern(visit(r, n, w), &mut states, &mut succ, &mut queue);
                succ[s].push(t);
            }
        }

        let owner = states
            .iter()
            .map(|&(r, _)| arena.owner(entry(r, 0)) as u8)
            .collect();
        let priority = states
            .iter()
            .map(|&(r, h)| {
                let p = 2 * (h as u32 + 1);
                if obj.contains_set(hit_set(r, h)) {
                    p
                } else {
                    p - 1
                }
            })
            .collect();
        Product {
            arena,
            states,
            starts: start_ids,
            game: ParityGame::new(owner, priority, succ),
        }
    }

    pub(super) fn solve(&self) -> LarSolution {
        let inner = self.game.solve();
        let mut regions = [VertexSet::EMPTY; 2];
        for &(v, s) in &self.starts {
            regions[inner.winner[s] as usize].insert(v);
        }
        LarSolution { inner, regions }
    }

    /// Memory is the current record (index 0 is the empty history); the
    /// choice follows the positional parity strategy. Non-edge transitions
    /// reset the memory.
    pub(super) fn strategy(
        &self,
        solution: &LarSolution,
        player: PlayerId,
        from: VertexId,
    ) -> FiniteMemoryStrategy {
        let arena = self.arena;
        let n = arena.num_vertices();
        let k = self.states.len() + 1;
        let mut update = vec![vec![0usize; n]; k];
        let mut choice = vec![vec![None; n]; k];
        let smallest = |v: VertexId| arena.successors(v).first().unwrap();

        if let Some(&(_, s)) = self.starts.iter().find(|&&(v, _)| v == from) {
            update[0][from] = s + 1;
        }
        for v in arena.owned_by(player) {
            choice[0][v] = Some(smallest(v));
        }
        for (s, &(r, _)) in self.states.iter().enumerate() {
            let cur = entry(r, 0);
            for &t in &self.game.succ[s] {
                update[s + 1][entry(self.states[t].0, 0)] = t + 1;
            }
            for v in arena.owned_by(player) {
                let mv = if v == cur {
                    solution.inner.moves[s].map(|t| entry(self.states[t].0, 0))
                } else {
                    None
                };
                choice[s + 1][v] = Some(mv.unwrap_or_else(|| smallest(v)));
            }
        }
        let mut labels = vec!["init".to_string()];
        labels.extend(self.states.iter().map(|&(r, h)| {
            let names: Vec<&str> = (0..n).map(|i| arena.vertex_name(entry(r, i))).collect();
            format!("[{}]/{}", names.join(" "), h)
        }));
        FiniteMemoryStrategy::new(labels, 0, update, choice).expect("tables are well formed")
    }
}
