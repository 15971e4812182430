//! Zielonka-tree recursion for explicit Muller conditions, with the
//! vertex set itself as the colour set.
//!
//! Winning strategies are kept as [`Plan`] trees and flattened into a
//! [`FiniteMemoryStrategy`] by exploring the reachable memory values.

use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use super::FiniteMemoryStrategy;
use crate::arena::{GameArena, PlayerId};
use crate::objective::MullerObjective;
use crate::vertex_set::{VertexId, VertexSet};

/// Attractor of `player` to `target` inside the subarena `domain`, built in
/// layers. Each attracted vertex of `player` moves to its smallest
/// successor in an earlier layer.
pub(super) fn attractor(
    arena: &GameArena,
    player: PlayerId,
    domain: VertexSet,
    target: VertexSet,
) -> (VertexSet, Vec<Option<VertexId>>) {
    let mut attr = target.intersection(domain);
    let mut moves = vec![None; arena.num_vertices()];
    loop {
        let mut layer = VertexSet::EMPTY;
        for v in domain.difference(attr) {
            let succ = arena.successors(v).intersection(domain);
            if arena.owner(v) == player {
                if let Some(w) = succ.intersection(attr).first() {
                    layer.insert(v);
                    moves[v] = Some(w);
                }
            } else if succ.is_subset(attr) {
                layer.insert(v);
            }
        }
        if layer.is_empty() {
            return (attr, moves);
        }
        attr = attr.union(layer);
    }
}

#[derive(Debug)]
pub(super) enum Plan {
    /// Fixed move per vertex.
    Positional(Vec<Option<VertexId>>),
    /// Disjoint regions, each with its own plan; memory restarts whenever
    /// the play changes region.
    Regions(Vec<(VertexSet, Rc<Plan>)>),
    /// Cycles through the branches: the active branch is abandoned as soon
    /// as the play leaves its `keep` set.
    Rotate(Vec<Branch>),
}

#[derive(Debug)]
pub(super) struct Branch {
    keep: VertexSet,
    attr: VertexSet,
    moves: Vec<Option<VertexId>>,
    sub: Rc<Plan>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(super) enum Mem {
    Fresh,
    Leaf,
    Region(usize, Box<Mem>),
    Rotate(usize, Box<Mem>),
}

impl Plan {
    fn update(&self, mem: &Mem, v: VertexId) -> Mem {
        match self {
            Plan::Positional(_) => Mem::Leaf,
            Plan::Regions(parts) => match parts.iter().position(|(s, _)| s.contains(v)) {
                None => Mem::Fresh,
                Some(j) => {
                    let inner = match mem {
                        Mem::Region(k, inner) if *k == j => inner.as_ref().clone(),
                        _ => Mem::Fresh,
                    };
                    Mem::Region(j, Box::new(parts[j].1.update(&inner, v)))
                }
            },
            Plan::Rotate(branches) => {
                let (mut i, mut inner) = match mem {
                    Mem::Rotate(i, inner) => (*i, inner.as_ref().clone()),
                    _ => (0, Mem::Fresh),
                };
                if !branches[i].keep.contains(v) {
                    i = (i + 1) % branches.len();
                    inner = Mem::Fresh;
                }
                let b = &branches[i];
                if b.attr.contains(v) {
                    Mem::Rotate(i, Box::new(Mem::Fresh))
                } else {
                    Mem::Rotate(i, Box::new(b.sub.update(&inner, v)))
                }
            }
        }
    }

    fn choose(&self, mem: &Mem, v: VertexId) -> Option<VertexId> {
        match (self, mem) {
            (Plan::Positional(moves), _) => moves[v],
            (Plan::Regions(parts), Mem::Region(j, inner)) => parts[*j].1.choose(inner, v),
            (Plan::Rotate(branches), Mem::Rotate(i, inner)) => {
                let b = &branches[*i];
                if b.attr.contains(v) {
                    b.moves[v]
                } else {
                    b.sub.choose(inner, v)
                }
            }
            _ => None,
        }
    }
}

struct Node {
    win: [VertexSet; 2],
    plans: [Rc<Plan>; 2],
}

pub(super) struct Solver<'a> {
    arena: &'a GameArena,
    family: &'a MullerObjective,
    memo: RefCell<HashMap<u32, Rc<Node>>>,
}

impl<'a> Solver<'a> {
    pub(super) fn new(arena: &'a GameArena, family: &'a MullerObjective) -> Self {
        Solver {
            arena,
            family,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub(super) fn regions(&self) -> [VertexSet; 2] {
        self.solve(self.arena.all()).win
    }

    /// Strategy of `player` on the whole arena, winning from every vertex
    /// of that player's region. Memory values are explored from the plays
    /// starting at `from`; transitions along non-edges reset the memory.
    pub(super) fn strategy(&self, player: PlayerId, from: VertexId) -> FiniteMemoryStrategy {
        let node = self.solve(self.arena.all());
        flatten(self.arena, player, &node.plans[player], from)
    }

    fn empty_plan(&self) -> Rc<Plan> {
        Rc::new(Plan::Positional(vec![None; self.arena.num_vertices()]))
    }

    /// Moves of `player` that stay inside `domain`, smallest successor first.
    fn staying_moves(&self, player: PlayerId, domain: VertexSet) -> Vec<Option<VertexId>> {
        (0..self.arena.num_vertices())
            .map(|v| {
                (domain.contains(v) && self.arena.owner(v) == player)
                    .then(|| self.arena.successors(v).intersection(domain).first())
                    .flatten()
            })
            .collect()
    }

    /// Maximal nonempty proper subsets of `u` whose membership in the family
    /// differs from that of `u`.
    fn children(&self, u: VertexSet) -> Vec<VertexSet> {
        let status = self.family.contains_set(u);
        let mut opposite: Vec<VertexSet> = u
            .subsets()
            .filter(|&d| !d.is_empty() && d != u && self.family.contains_set(d) != status)
            .collect();
        opposite.sort_by_key(|d| std::cmp::Reverse(d.len()));
        let mut maximal: Vec<VertexSet> = Vec::new();
        for d in opposite {
            if !maximal.iter().any(|&m| d.is_subset(m)) {
                maximal.push(d);
            }
        }
        maximal.sort_by_key(|d| d.bits());
        maximal
    }

    fn solve(&self, u: VertexSet) -> Rc<Node> {
        if let Some(n) = self.memo.borrow().get(&u.bits()) {
            return n.clone();
        }
        let node = Rc::new(self.compute(u));
        self.memo.borrow_mut().insert(u.bits(), node.clone());
        node
    }

    fn compute(&self, u: VertexSet) -> Node {
        if u.is_empty() {
            return Node {
                win: [VertexSet::EMPTY; 2],
                plans: [self.empty_plan(), self.empty_plan()],
            };
        }
        let sigma: PlayerId = if self.family.contains_set(u) { 0 } else { 1 };
        let opp = 1 - sigma;
        let children = self.children(u);
        let mut branches = Vec::with_capacity(children.len());

        for &d in &children {
            let (attr, mut moves) = attractor(self.arena, sigma, u, u.difference(d));
            for v in u.difference(d) {
                if self.arena.owner(v) == sigma {
                    moves[v] = self.arena.successors(v).intersection(u).first();
                }
            }
            let sub = self.solve(u.difference(attr));
            if !sub.win[opp].is_empty() {
                let (b, bmoves) = attractor(self.arena, opp, u, sub.win[opp]);
                let rest = self.solve(u.difference(b));
                let mut win = [VertexSet::EMPTY; 2];
                win[opp] = b.union(rest.win[opp]);
                win[sigma] = rest.win[sigma];
                let opp_plan = Rc::new(Plan::Regions(vec![
                    (sub.win[opp], sub.plans[opp].clone()),
                    (
                        b.difference(sub.win[opp]),
                        Rc::new(Plan::Positional(bmoves)),
                    ),
                    (rest.win[opp], rest.plans[opp].clone()),
                ]));
                let mut plans = [self.empty_plan(), self.empty_plan()];
                plans[opp] = opp_plan;
                plans[sigma] = rest.plans[sigma].clone();
                return Node { win, plans };
            }
            branches.push(Branch {
                keep: d,
                attr,
                moves,
                sub: sub.plans[sigma].clone(),
            });
        }

        let sigma_plan = if branches.is_empty() {
            Rc::new(Plan::Positional(self.staying_moves(sigma, u)))
        } else {
            Rc::new(Plan::Rotate(branches))
        };
        let mut win = [VertexSet::EMPTY; 2];
        win[sigma] = u;
        let mut plans = [self.empty_plan(), self.empty_plan()];
        plans[sigma] = sigma_plan;
        Node { win, plans }
    }
}

fn flatten(
    arena: &GameArena,
    player: PlayerId,
    plan: &Plan,
    from: VertexId,
) -> FiniteMemoryStrategy {
    let n = arena.num_vertices();
    let mut index: HashMap<Mem, usize> = HashMap::new();
    let mut mems = vec![Mem::Fresh];
    index.insert(Mem::Fresh, 0);
    // (memory, current vertex) pairs seen along plays from `from`
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    let mut update = vec![vec![0usize; n]];

    let mut intern = |m: Mem, mems: &mut Vec<Mem>, update: &mut Vec<Vec<usize>>| -> usize {
        *index.entry(m.clone()).or_insert_with(|| {
            mems.push(m);
            update.push(vec![0; n]);
            mems.len() - 1
        })
    };

    let first = intern(plan.update(&Mem::Fresh, from), &mut mems, &mut update);
    update[0][from] = first;
    seen.insert((first, from));
    queue.push_back((first, from));
    while let Some((m, v)) = queue.pop_front() {
        for w in arena.successors(v) {
            let next = intern(plan.update(&mems[m], w), &mut mems, &mut update);
            update[m][w] = next;
            if seen.insert((next, w)) {
                queue.push_back((next, w));
            }
        }
    }

    let choice = mems
        .iter()
        .map(|m| {
            (0..n)
                .map(|v| {
                    (arena.owner(v) == player).then(|| {
                        plan.choose(m, v)
                            .filter(|&w| arena.has_edge(v, w))
                            .unwrap_or_else(|| arena.successors(v).first().unwrap())
                    })
                })
                .collect()
        })
        .collect();
    let labels = (0..mems.len()).map(|i| format!("m{i}")).collect();
    FiniteMemoryStrategy::new(labels, 0, update, choice).expect("tables are well formed")
}
