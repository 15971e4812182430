//! Brute-force ground truth for small arenas.
//!
//! Nothing here calls into the strategy-free parts of the main path
//! (feasibility, realization, candidate clauses, equilibrium search). The
//! only borrowed piece is winnability, taken from the record-expansion
//! solver rather than the default one.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::adversary::{CandidateSet, KnowledgeType, ObjectiveUniverse};
use crate::arena::{GameArena, PlayerId};
use crate::error::Result;
use crate::lasso::Lasso;
use crate::objective::{MullerObjective, ObjectiveProfile};
use crate::solver::{self, SolverConfig, WinnableMap};
use crate::vertex_set::{VertexId, VertexSet};

fn lar_config() -> SolverConfig {
    SolverConfig {
        lar_cap: usize::MAX,
    }
}

/// Every lasso `prefix · cycle^ω` from the initial vertex with
/// `|prefix| ≤ max_prefix` and `1 ≤ |cycle| ≤ max_cycle`, normalized,
/// without duplicates, sorted.
pub fn enumerate_lassos(arena: &GameArena, max_prefix: usize, max_cycle: usize) -> Vec<Lasso> {
    let mut out = BTreeSet::new();
    let mut walk = vec![arena.initial()];
    extend_walks(arena, &mut walk, max_prefix, max_cycle, &mut out);
    out.into_iter().collect()
}

fn extend_walks(
    arena: &GameArena,
    walk: &mut Vec<VertexId>,
    max_prefix: usize,
    max_cycle: usize,
    out: &mut BTreeSet<Lasso>,
) {
    let last = *walk.last().unwrap();
    let k = walk.len();
    for i in k.saturating_sub(max_cycle)..k.min(max_prefix + 1) {
        if arena.has_edge(last, walk[i]) {
            let l = Lasso::new(walk[..i].to_vec(), walk[i..].to_vec()).unwrap();
            out.insert(l.normalize());
        }
    }
    if k >= max_prefix + max_cycle {
        return;
    }
    for w in arena.successors(last) {
        walk.push(w);
        extend_walks(arena, walk, max_prefix, max_cycle, out);
        walk.pop();
    }
}

/// Vertex sets of simple cycles inside `within`.
fn simple_cycles(arena: &GameArena, within: VertexSet) -> Vec<VertexSet> {
    let mut found = BTreeSet::new();
    for s in within {
        // cycles whose smallest vertex is s
        let allowed: VertexSet = within.iter().filter(|&v| v >= s).collect();
        let mut stack = vec![(s, VertexSet::singleton(s))];
        while let Some((v, on)) = stack.pop() {
            for w in arena.successors(v).intersection(allowed) {
                if w == s {
                    found.insert(on.bits());
                } else if !on.contains(w) {
                    stack.push((w, on.with(w)));
                }
            }
        }
    }
    found.into_iter().map(VertexSet::from_bits).collect()
}

/// Inf-sets of plays from the initial vertex: unions of overlapping simple
/// cycles, closed under that operation.
pub fn naive_inf_sets(arena: &GameArena) -> Vec<VertexSet> {
    let reach = closure(arena, arena.initial(), arena.all());
    let mut sets: BTreeSet<u32> = simple_cycles(arena, reach)
        .iter()
        .map(|c| c.bits())
        .collect();
    loop {
        let now: Vec<VertexSet> = sets.iter().map(|&b| VertexSet::from_bits(b)).collect();
        let before = sets.len();
        for (i, &a) in now.iter().enumerate() {
            for &b in &now[i + 1..] {
                if a.intersects(b) {
                    sets.insert(a.union(b).bits());
                }
            }
        }
        if sets.len() == before {
            break;
        }
    }
    sets.into_iter().map(VertexSet::from_bits).collect()
}

fn closure(arena: &GameArena, from: VertexId, within: VertexSet) -> VertexSet {
    let mut seen = VertexSet::singleton(from);
    let mut todo = vec![from];
    while let Some(v) = todo.pop() {
        for w in arena.successors(v).intersection(within) {
            if !seen.contains(w) {
                seen.insert(w);
                todo.push(w);
            }
        }
    }
    seen
}

fn bfs(
    arena: &GameArena,
    from: VertexId,
    to: VertexId,
    within: VertexSet,
) -> Option<Vec<VertexId>> {
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = VertexSet::singleton(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![v];
            let mut cur = v;
            while cur != from {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in arena.successors(v).intersection(within) {
            if !seen.contains(w) {
                seen.insert(w);
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// A closed walk from `start` through every vertex of `set`, staying in
/// `set`; the returned cycle does not repeat `start` at the end.
fn tour(arena: &GameArena, start: VertexId, set: VertexSet) -> Option<Vec<VertexId>> {
    if set.len() == 1 {
        return arena.has_edge(start, start).then(|| vec![start]);
    }
    let mut cycle = vec![start];
    let mut cur = start;
    for v in set
        .iter()
        .filter(|&v| v != start)
        .chain(std::iter::once(start))
    {
        if v != start && cycle.contains(&v) {
            continue;
        }
        let hop = bfs(arena, cur, v, set)?;
        cycle.extend_from_slice(&hop[1..]);
        cur = v;
    }
    cycle.pop();
    Some(cycle)
}

/// One-player search by closed walks: some reachable union of
/// overlapping simple cycles accepted by `obj`, as a lasso.
pub fn naive_one_player(subgame: &GameArena, obj: &MullerObjective) -> Option<Lasso> {
    let inf = naive_inf_sets(subgame)
        .into_iter()
        .find(|&i| obj.contains_set(i))?;
    let entry = inf.first()?;
    let path = bfs(subgame, subgame.initial(), entry, subgame.all())?;
    let cycle = tour(subgame, entry, inf)?;
    Lasso::new(path[..path.len() - 1].to_vec(), cycle).ok()
}

/// One lasso for each reachable (visited set, Inf-set) pair: a shortest
/// route through the (vertex, visited) graph followed by a tour of the
/// Inf-set. Conditions that only look at these two sets can be decided by
/// scanning this list.
pub fn signature_lassos(arena: &GameArena) -> Vec<Lasso> {
    let v0 = arena.initial();
    let start = (v0, VertexSet::singleton(v0));
    let mut parent: HashMap<(VertexId, VertexSet), (VertexId, VertexSet)> = HashMap::new();
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut seen = BTreeSet::from([(v0, start.1.bits())]);
    while let Some((v, vis)) = queue.pop_front() {
        for w in arena.successors(v) {
            let next = (w, vis.with(w));
            if seen.insert((w, next.1.bits())) {
                parent.insert(next, (v, vis));
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    let infs = naive_inf_sets(arena);
    let mut by_sig: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut out = Vec::new();
    for &(v, vis) in &order {
        for &inf in infs.iter().filter(|i| i.contains(v)) {
            if !by_sig.insert((vis.union(inf).bits(), inf.bits())) {
                continue;
            }
            let mut prefix = Vec::new();
            let mut cur = (v, vis);
            while cur != start {
                cur = parent[&cur];
                prefix.push(cur.0);
            }
            prefix.reverse();
            let cycle = tour(arena, v, inf).expect("inf sets admit tours");
            out.push(Lasso::new(prefix, cycle).unwrap().normalize());
        }
    }
    out
}

fn inf_of(l: &Lasso) -> VertexSet {
    l.cycle().iter().copied().collect()
}

fn visited_of(l: &Lasso) -> VertexSet {
    l.prefix().iter().chain(l.cycle()).copied().collect()
}

/// Candidate set recomputed from the membership clauses, with winnability
/// from the record-expansion solver and its own feasibility computation.
pub fn naive_obj_set(
    arena: &GameArena,
    p: PlayerId,
    o_p: &MullerObjective,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    outcome: &Lasso,
    quotient: bool,
) -> Result<CandidateSet> {
    let feasible = naive_inf_sets(arena);
    let inf = inf_of(outcome);
    let win = o_p.contains_set(inf);
    let v0 = arena.initial();
    let objs = universe.objectives();
    let mut mask = Vec::with_capacity(objs.len());
    for (i, o) in objs.iter().enumerate() {
        let in_o = o.contains_set(inf);
        let pw = in_o == win;
        let keep = !quotient || {
            let same = |b: &MullerObjective| {
                feasible
                    .iter()
                    .all(|&f| o.contains_set(f) == b.contains_set(f))
            };
            let class: Vec<usize> = (0..objs.len()).filter(|&j| same(&objs[j])).collect();
            let rep = class
                .iter()
                .copied()
                .find(|&j| &objs[j] == o_p)
                .unwrap_or(class[0]);
            rep == i
        };
        let member = match knw {
            KnowledgeType::Pw => pw,
            _ => {
                let w = solver::winnable_map_lar(arena, p, o, &lar_config())?.get(v0);
                let empty = !feasible.iter().any(|&f| o.contains_set(f));
                keep && match knw {
                    KnowledgeType::Gw => (!w || win) && !(empty && win),
                    KnowledgeType::Pg => !w || in_o,
                    _ => pw && (!w || (in_o && win)),
                }
            }
        };
        mask.push(member);
    }
    Ok(CandidateSet::from_mask(mask))
}

fn lar_maps(arena: &GameArena, profiles: &[ObjectiveProfile]) -> Result<Vec<Vec<WinnableMap>>> {
    profiles
        .iter()
        .map(|prof| {
            prof.iter()
                .enumerate()
                .map(|(p, o)| solver::winnable_map_lar(arena, p, o, &lar_config()))
                .collect()
        })
        .collect()
}

fn satisfies(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    maps: &[Vec<WinnableMap>],
    lasso: &Lasso,
) -> bool {
    let inf = inf_of(lasso);
    visited_of(lasso).iter().all(|v| {
        let p = arena.owner(v);
        profiles
            .iter()
            .zip(maps)
            .all(|(prof, m)| !m[p].get(v) || prof.get(p).contains_set(inf))
    })
}

/// Whether some play meets the equilibrium-outcome condition for every
/// profile, by scanning signature lassos.
pub fn oracle_multi_ne(arena: &GameArena, profiles: &[ObjectiveProfile]) -> Result<Option<Lasso>> {
    let maps = lar_maps(arena, profiles)?;
    Ok(signature_lassos(arena)
        .into_iter()
        .find(|l| satisfies(arena, profiles, &maps, l)))
}

/// Same condition checked on a single play.
pub fn oracle_ne_outcome(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    lasso: &Lasso,
) -> Result<bool> {
    let maps = lar_maps(arena, profiles)?;
    Ok(satisfies(arena, profiles, &maps, lasso))
}

/// Profiles whose equilibria keep each universe member from becoming newly
/// plausible, rebuilt from the clauses.
pub fn naive_r_profiles(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Vec<ObjectiveProfile>> {
    let n = arena.num_vertices();
    let feasible = naive_inf_sets(arena);
    let v0 = arena.initial();
    let mut out = Vec::new();
    for o in universe.objectives() {
        let empty = !feasible.iter().any(|&f| o.contains_set(f));
        let mut entries = Vec::new();
        for (p, o_p) in alpha.iter().enumerate() {
            let w = solver::winnable_map_lar(arena, p, o, &lar_config())?.get(v0);
            entries.push(MullerObjective::from_predicate(n, |i| {
                let (in_o, win) = (o.contains_set(i), o_p.contains_set(i));
                match knw {
                    KnowledgeType::Pw => in_o == win,
                    KnowledgeType::Pgw => in_o == win && (!w || in_o),
                    KnowledgeType::Gw => (!w || win) && (!empty || w || !win),
                    KnowledgeType::Pg => !w || in_o,
                }
            }));
        }
        out.push(ObjectiveProfile::new(arena, entries)?);
    }
    Ok(out)
}

pub fn oracle_oie(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Option<Lasso>> {
    oracle_multi_ne(arena, &naive_r_profiles(arena, alpha, universe, knw)?)
}

pub fn oracle_oine(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Option<Lasso>> {
    let mut profiles = naive_r_profiles(arena, alpha, universe, knw)?;
    profiles.push(alpha.clone());
    oracle_multi_ne(arena, &profiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn lasso(prefix: &[usize], cycle: &[usize]) -> Lasso {
        Lasso::new(prefix.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn fig1_small_bounds() {
        let a = fixtures::fig1();
        let ls = enumerate_lassos(&a, 3, 3);
        assert!(ls.contains(&lasso(&[0], &[1])));
        assert!(ls.contains(&lasso(&[0], &[2])));
        for l in &ls {
            l.validate(&a).unwrap();
            assert_eq!(&l.normalize(), l);
        }
        assert!(ls.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fig3_lassos_cover_feasible_sets() {
        let a = fixtures::fig3();
        let infs: BTreeSet<u32> = enumerate_lassos(&a, 3, 9)
            .iter()
            .map(|l| l.inf_set().bits())
            .collect();
        let want: BTreeSet<u32> = a
            .feasible_inf_sets(a.all())
            .unwrap()
            .iter()
            .map(|s| s.bits())
            .collect();
        assert_eq!(infs, want);
    }

    #[test]
    fn tight_bounds_without_self_loop() {
        let a = GameArena::build(&["1"], &["a", "b"], &[0, 0], 0, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(enumerate_lassos(&a, 1, 1), vec![lasso(&[0], &[1])]);
    }

    #[test]
    fn naive_inf_sets_match_feasibility() {
        for a in [fixtures::fig1(), fixtures::fig2(), fixtures::fig3()] {
            assert_eq!(naive_inf_sets(&a), a.feasible_inf_sets(a.all()).unwrap());
        }
    }

    #[test]
    fn signatures_are_distinct() {
        let a = fixtures::fig3();
        let sigs: BTreeSet<(u32, u32)> = signature_lassos(&a)
            .iter()
            .map(|l| (l.visited_set().bits(), l.inf_set().bits()))
            .collect();
        assert_eq!(sigs.len(), signature_lassos(&a).len());
        for l in signature_lassos(&a) {
            l.validate(&a).unwrap();
        }
    }

    #[test]
    fn one_player_walks() {
        let a = GameArena::build(
            &["1"],
            &["a", "b", "c"],
            &[0, 0, 0],
            0,
            &[(0, 1), (1, 0), (1, 2), (2, 2)],
        )
        .unwrap();
        let both = MullerObjective::from_sets(3, [set(&[0, 1])]).unwrap();
        let l = naive_one_player(&a, &both).unwrap();
        l.validate(&a).unwrap();
        assert_eq!(l.inf_set(), set(&[0, 1]));
        let abc = MullerObjective::from_sets(3, [set(&[0, 1, 2])]).unwrap();
        assert_eq!(naive_one_player(&a, &abc), None);
    }

    #[test]
    fn fig1_sets() {
        let a = fixtures::fig1();
        let u = ObjectiveUniverse::buchi(&a);
        let o_p = MullerObjective::from_buchi(&a, VertexSet::EMPTY).unwrap();
        let out = lasso(&[0], &[1]);
        let want: [(KnowledgeType, &[&str]); 4] = [
            (KnowledgeType::Pw, &["⟨⟩", "⟨v0⟩", "⟨v2⟩", "⟨v0,v2⟩"]),
            (KnowledgeType::Gw, &["⟨⟩"]),
            (KnowledgeType::Pg, &["⟨⟩", "⟨v1⟩", "⟨v1,v2⟩"]),
            (KnowledgeType::Pgw, &["⟨⟩"]),
        ];
        for (knw, names) in want {
            let c = naive_obj_set(&a, 0, &o_p, &u, knw, &out, true).unwrap();
            let mut got = c.names(&u);
            got.sort();
            let mut names = names.to_vec();
            names.sort();
            assert_eq!(got, names, "{knw}");
        }
    }

    #[test]
    fn fig3_single_profile_has_equilibrium() {
        let a = fixtures::fig3();
        let alpha = ObjectiveProfile::new(
            &a,
            (0..3)
                .map(|p| MullerObjective::from_buchi(&a, VertexSet::singleton(p)).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(oracle_multi_ne(&a, &[alpha]).unwrap().is_some());
    }
}
