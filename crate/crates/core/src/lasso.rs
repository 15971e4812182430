//! Ultimately periodic plays.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::arena::GameArena;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexId, VertexSet};

/// The play `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Vec<VertexId>,
    cycle: Vec<VertexId>,
}

impl Lasso {
    /// Fails only on an empty cycle; arena consistency is checked by
    /// [`Lasso::validate`].
    pub fn new(prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidLasso("empty cycle".into()));
        }
        Ok(Lasso { prefix, cycle })
    }

    pub fn prefix(&self) -> &[VertexId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn first(&self) -> VertexId {
        self.prefix.first().copied().unwrap_or(self.cycle[0])
    }

    /// Checks that the lasso is a play of `arena` from its initial vertex.
    pub fn validate(&self, arena: &GameArena) -> Result<()> {
        let n = arena.num_vertices();
        if let Some(&v) = self.prefix.iter().chain(&self.cycle).find(|&&v| v >= n) {
            return Err(Error::InvalidLasso(format!(
                "vertex index {v} out of range"
            )));
        }
        if self.first() != arena.initial() {
            return Err(Error::InvalidLasso(format!(
                "play starts at {} instead of the initial vertex {}",
                arena.vertex_name(self.first()),
                arena.vertex_name(arena.initial())
            )));
        }
        let seq: Vec<_> = self
            .prefix
            .iter()
            .chain(&self.cycle)
            .chain(std::iter::once(&self.cycle[0]))
            .copied()
            .collect();
        for w in seq.windows(2) {
            if !arena.has_edge(w[0], w[1]) {
                return Err(Error::InvalidLasso(format!(
                    "missing edge ({}, {})",
                    arena.vertex_name(w[0]),
                    arena.vertex_name(w[1])
                )));
            }
        }
        Ok(())
    }

    /// Vertices visited infinitely often.
    pub fn inf_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// Vertices visited at all.
    pub fn visited_set(&self) -> VertexSet {
        self.prefix.iter().chain(&self.cycle).copied().collect()
    }

    /// Canonical representative of the same play: the cycle is reduced to
    /// its primitive period, the prefix is made as short as possible, and
    /// the cycle is then rotated to its lexicographically least rotation
    /// (moving the skipped vertices into the prefix).
    pub fn normalize(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        if let Some(d) = (1..=n)
            .filter(|&d| n.is_multiple_of(d))
            .find(|&d| (0..n).all(|i| cycle[i] == cycle[i % d]))
        {
            cycle.truncate(d);
        }
        let mut prefix = self.prefix.clone();
        while prefix.last().is_some() && prefix.last() == cycle.last() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        let r = (0..cycle.len())
            .min_by(|&a, &b| {
                let ra = cycle[a..].iter().chain(&cycle[..a]);
                let rb = cycle[b..].iter().chain(&cycle[..b]);
                ra.cmp(rb)
            })
            .unwrap_or(0);
        prefix.extend_from_slice(&cycle[..r]);
        cycle.rotate_left(r);
        Lasso { prefix, cycle }
    }

    /// Applies `f` to every vertex (used to lift subgame plays back into
    /// the ambient arena).
    pub fn map_vertices(&self, f: impl Fn(VertexId) -> VertexId) -> Lasso {
        Lasso {
            prefix: self.prefix.iter().map(|&v| f(v)).collect(),
            cycle: self.cycle.iter().map(|&v| f(v)).collect(),
        }
    }

    /// The `i`-th vertex of the infinite play.
    pub fn at(&self, i: usize) -> VertexId {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Number of distinct positions (`|prefix| + |cycle|`).
    pub fn period_end(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Position following `i` in the finite position space
    /// `0..period_end()`.
    pub fn next_position(&self, i: usize) -> usize {
        if i + 1 < self.period_end() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// Human-readable form like `v0 (v1 v2)^ω`.
    pub fn display(&self, arena: &GameArena) -> String {
        let mut s = String::new();
        for &v in &self.prefix {
            let _ = write!(s, "{} ", arena.vertex_name(v));
        }
        let cyc: Vec<&str> = self.cycle.iter().map(|&v| arena.vertex_name(v)).collect();
        let _ = write!(s, "({})^ω", cyc.join(" "));
        s
    }

    /// A lasso staying in `within` whose Inf-set is exactly `inf`: a
    /// shortest path from the initial vertex into `inf` followed by a
    /// closed walk covering `inf`. Returns `None` when no such play exists.
    ///
    /// The prefix has at most `|V|` vertices and the cycle at most
    /// `|inf| · |V|`.
    pub fn realize(arena: &GameArena, within: VertexSet, inf: VertexSet) -> Option<Lasso> {
        if inf.is_empty() || !inf.is_subset(within) || !within.contains(arena.initial()) {
            return None;
        }
        if !arena.admits_covering_cycle(inf) {
            return None;
        }
        let path = shortest_path(arena, arena.initial(), inf, within)?;
        let entry = *path.last().unwrap();
        let prefix = path[..path.len() - 1].to_vec();

        let mut cycle = vec![entry];
        let mut seen = VertexSet::singleton(entry);
        let mut cur = entry;
        while seen != inf {
            let hop = shortest_path(arena, cur, inf.difference(seen), inf)?;
            for &v in &hop[1..] {
                seen.insert(v);
                cycle.push(v);
            }
            cur = *hop.last().unwrap();
        }
        if inf.len() == 1 {
            return Some(Lasso { prefix, cycle });
        }
        let back = shortest_path_to(arena, cur, entry, inf)?;
        cycle.extend_from_slice(&back[1..back.len() - 1]);
        Some(Lasso { prefix, cycle })
    }
}

/// BFS path from `from` to the nearest vertex of `targets`, through
/// `within`. Ties go to the smaller vertex id. The path includes both ends.
fn shortest_path(
    arena: &GameArena,
    from: VertexId,
    targets: VertexSet,
    within: VertexSet,
) -> Option<Vec<VertexId>> {
    if targets.contains(from) {
        return Some(vec![from]);
    }
    let n = arena.num_vertices();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(u) = queue.pop_front() {
        for w in arena.successors(u).intersection(within) {
            if parent[w] != usize::MAX {
                continue;
            }
            parent[w] = u;
            if targets.contains(w) {
                let mut path = vec![w];
                let mut x = w;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Shortest nonempty path (at least one edge) from `from` to `to`.
fn shortest_path_to(
    arena: &GameArena,
    from: VertexId,
    to: VertexId,
    within: VertexSet,
) -> Option<Vec<VertexId>> {
    if arena.successors(from).contains(to) {
        return Some(vec![from, to]);
    }
    let mut best: Option<Vec<VertexId>> = None;
    for s in arena.successors(from).intersection(within) {
        if let Some(p) = shortest_path(arena, s, VertexSet::singleton(to), within) {
            if best.as_ref().is_none_or(|b| p.len() + 1 < b.len()) {
                let mut full = vec![from];
                full.extend(p);
                best = Some(full);
            }
        }
    }
    best
}
