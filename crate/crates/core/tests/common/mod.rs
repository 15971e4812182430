//! Random small instances shared by the integration suites.
#![allow(dead_code)]

use indist::adversary::ObjectiveUniverse;
use indist::arena::PlayerId;
use indist::{GameArena, Lasso, MullerObjective, ObjectiveProfile, VertexSet};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonblocking arena with `min_v..=max_v` vertices and up to `max_p`
/// players. Vertex 0 is initial.
pub fn arena(r: &mut impl Rng, min_v: usize, max_v: usize, max_p: usize) -> GameArena {
    let n = r.gen_range(min_v..=max_v);
    let k = r.gen_range(1..=max_p);
    let players: Vec<String> = (0..k).map(|p| format!("p{p}")).collect();
    let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let owner: Vec<PlayerId> = (0..n).map(|_| r.gen_range(0..k)).collect();
    let density = r.gen_range(0.15..0.6);
    let mut edges = Vec::new();
    for a in 0..n {
        let mut any = false;
        for b in 0..n {
            if r.gen_bool(density) {
                edges.push((a, b));
                any = true;
            }
        }
        if !any {
            edges.push((a, r.gen_range(0..n)));
        }
    }
    let ps: Vec<&str> = players.iter().map(String::as_str).collect();
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    GameArena::build(&ps, &vs, &owner, 0, &edges).expect("generated arena is valid")
}

pub fn family(r: &mut impl Rng, width: usize) -> MullerObjective {
    let p = r.gen_range(0.1..0.9);
    MullerObjective::from_predicate(width, |_| r.gen_bool(p))
}

pub fn vertex_set(r: &mut impl Rng, width: usize) -> VertexSet {
    VertexSet::from_bits(r.gen_range(0..1u32 << width))
}

/// A mix of Büchi objectives and raw families.
pub fn objective(r: &mut impl Rng, a: &GameArena) -> MullerObjective {
    let n = a.num_vertices();
    match r.gen_range(0..3) {
        0 => MullerObjective::from_buchi(a, vertex_set(r, n)).unwrap(),
        1 => MullerObjective::from_cobuchi(a, vertex_set(r, n)).unwrap(),
        _ => family(r, n),
    }
}

pub fn profile(r: &mut impl Rng, a: &GameArena) -> ObjectiveProfile {
    let objs = (0..a.num_players()).map(|_| objective(r, a)).collect();
    ObjectiveProfile::new(a, objs).unwrap()
}

/// One or two profiles; a second profile often opposes the first, so
/// instances without equilibria show up.
pub fn profiles(r: &mut impl Rng, a: &GameArena) -> Vec<ObjectiveProfile> {
    let first = profile(r, a);
    match r.gen_range(0..3) {
        0 => vec![first],
        1 => vec![first.clone(), profile(r, a)],
        _ => {
            let opposed = first.iter().map(|o| o.complement()).collect();
            let second = ObjectiveProfile::new(a, opposed).unwrap();
            vec![first, second]
        }
    }
}

/// Random universe of distinct objectives, sometimes containing `extra`.
pub fn universe(
    r: &mut impl Rng,
    a: &GameArena,
    extra: Option<&MullerObjective>,
) -> ObjectiveUniverse {
    let mut entries = Vec::new();
    if let Some(o) = extra.filter(|_| r.gen_bool(0.7)) {
        entries.push(("true".to_string(), o.clone()));
    }
    for i in 0..r.gen_range(1..=6) {
        entries.push((format!("o{i}"), objective(r, a)));
    }
    let pos = r.gen_range(0..entries.len());
    let first = entries.remove(0);
    entries.insert(pos, first);
    ObjectiveUniverse::new(entries).unwrap()
}

/// A random play from the initial vertex.
pub fn lasso(r: &mut impl Rng, a: &GameArena) -> Lasso {
    let mut walk = vec![a.initial()];
    loop {
        let last = *walk.last().unwrap();
        let succ: Vec<usize> = a.successors(last).iter().collect();
        let next = succ[r.gen_range(0..succ.len())];
        if let Some(i) = walk.iter().position(|&v| v == next) {
            if r.gen_bool(0.6) || walk.len() > 3 * a.num_vertices() {
                let start = walk.iter().rposition(|&v| v == next).unwrap().max(i);
                return Lasso::new(walk[..start].to_vec(), walk[start..].to_vec()).unwrap();
            }
        }
        walk.push(next);
    }
}
