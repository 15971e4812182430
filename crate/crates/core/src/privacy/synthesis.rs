//! Strategy profiles realizing an equilibrium outcome.
//!
//! Every player runs the same automaton: follow the outcome lasso while
//! nobody deviates; once player `p` leaves it, all other players switch to
//! a coalition strategy keeping `p` out of every objective `p` was losing
//! on the outcome.

use std::collections::HashMap;

use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::objective::{MullerObjective, ObjectiveProfile};
use crate::product::{profile_outcome, StrategyProduct};
use crate::solver::{self, FiniteMemoryStrategy, Winner};
use crate::vertex_set::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Synthesis {
    /// One strategy per player; the outcome is the given lasso.
    Profile(Vec<FiniteMemoryStrategy>),
    /// After `player` leaves the outcome at `from` towards `to`, the others
    /// cannot jointly keep it out of all its losing objectives.
    NoPunishment {
        player: PlayerId,
        from: VertexId,
        to: VertexId,
    },
}

/// A player who loses objective `profile` on the outcome but can win it
/// by deviating alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeViolation {
    pub player: PlayerId,
    pub profile: usize,
    pub deviation: Lasso,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum State {
    Start,
    Track(usize),
    Punish(usize, usize),
    Free,
}

struct Punishment {
    player: PlayerId,
    strategy: FiniteMemoryStrategy,
}

pub fn synthesize_ne_profile(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    outcome: &Lasso,
) -> Result<Synthesis> {
    outcome.validate(arena)?;
    let n = arena.num_vertices();
    let k = arena.num_players();
    for prof in profiles {
        if prof.len() != k {
            return Err(Error::ProfileArity {
                expected: k,
                found: prof.len(),
            });
        }
    }

    // objectives each player loses on the outcome, merged
    let mut losing = Vec::with_capacity(k);
    for p in 0..k {
        let mut acc = MullerObjective::empty(n);
        for prof in profiles {
            if !prof.get(p).contains_play(outcome)? {
                acc = acc.union(prof.get(p))?;
            }
        }
        losing.push(acc);
    }

    let mut punish: Vec<Punishment> = Vec::new();
    let mut punish_at: HashMap<(PlayerId, VertexId), usize> = HashMap::new();
    let len = outcome.period_end();
    for i in 0..len {
        let u = outcome.at(i);
        let p = arena.owner(u);
        if losing[p].is_empty() {
            continue;
        }
        let expected = outcome.at(outcome.next_position(i));
        for w in arena.successors(u) {
            if w == expected || punish_at.contains_key(&(p, w)) {
                continue;
            }
            let coalition = arena.coalition_arena(p)?;
            let sol = solver::solve_zero_sum(&coalition, &losing[p], w)?;
            if sol.winner != Winner::Antagonist {
                return Ok(Synthesis::NoPunishment {
                    player: p,
                    from: u,
                    to: w,
                });
            }
            punish_at.insert((p, w), punish.len());
            punish.push(Punishment {
                player: p,
                strategy: sol.strategy,
            });
        }
    }

    let mut states = vec![State::Start];
    states.extend((0..len).map(State::Track));
    for (idx, pu) in punish.iter().enumerate() {
        states.extend((0..pu.strategy.num_memory()).map(|m| State::Punish(idx, m)));
    }
    states.push(State::Free);
    let index: HashMap<State, usize> = states.iter().cloned().zip(0..).collect();

    let step = |s: &State, w: VertexId| -> State {
        match *s {
            State::Start if w == outcome.at(0) => State::Track(0),
            State::Track(i) => {
                let j = outcome.next_position(i);
                if w == outcome.at(j) {
                    return State::Track(j);
                }
                let p = arena.owner(outcome.at(i));
                match punish_at.get(&(p, w)) {
                    Some(&idx) => {
                        let st = &punish[idx].strategy;
                        State::Punish(idx, st.update(st.init(), w))
                    }
                    None => State::Free,
                }
            }
            State::Punish(idx, m) => State::Punish(idx, punish[idx].strategy.update(m, w)),
            _ => State::Free,
        }
    };
    let update: Vec<Vec<usize>> = states
        .iter()
        .map(|s| (0..n).map(|w| index[&step(s, w)]).collect())
        .collect();

    let smallest = |v: VertexId| arena.successors(v).first().expect("nonblocking");
    let labels: Vec<String> = states
        .iter()
        .map(|s| match *s {
            State::Start => "start".to_string(),
            State::Track(i) => format!("track{i}"),
            State::Punish(idx, m) => format!(
                "punish{}:{}:{}",
                arena.player_name(punish[idx].player),
                idx,
                punish[idx].strategy.labels()[m]
            ),
            State::Free => "free".to_string(),
        })
        .collect();

    let mut out = Vec::with_capacity(k);
    for q in 0..k {
        let choice = states
            .iter()
            .map(|s| {
                (0..n)
                    .map(|v| {
                        if arena.owner(v) != q {
                            return None;
                        }
                        let mv = match *s {
                            State::Track(i) if outcome.at(i) == v => {
                                Some(outcome.at(outcome.next_position(i)))
                            }
                            State::Punish(idx, m) if punish[idx].player != q => {
                                punish[idx].strategy.choice(m, v)
                            }
                            _ => None,
                        };
                        Some(mv.unwrap_or_else(|| smallest(v)))
                    })
                    .collect()
            })
            .collect();
        out.push(FiniteMemoryStrategy::new(
            labels.clone(),
            0,
            update.clone(),
            choice,
        )?);
    }
    Ok(Synthesis::Profile(out))
}

/// Checks a concrete strategy profile against every objective profile:
/// returns a player that loses some objective on the outcome but can
/// reach it by deviating alone, if any.
pub fn verify_ne_profile(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    strategies: &[FiniteMemoryStrategy],
) -> Result<Option<NeViolation>> {
    let outcome = profile_outcome(arena, strategies)?;
    for p in 0..arena.num_players() {
        let losing: Vec<usize> = profiles
            .iter()
            .enumerate()
            .filter(|(_, prof)| !prof.get(p).contains_play(&outcome).unwrap_or(true))
            .map(|(j, _)| j)
            .collect();
        if losing.is_empty() {
            continue;
        }
        let others: Vec<(PlayerId, &FiniteMemoryStrategy)> = strategies
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != p)
            .collect();
        let product = StrategyProduct::build(arena, &others)?;
        let infs = product.inf_sets(arena);
        for j in losing {
            if let Some(&inf) = infs.iter().find(|&&i| profiles[j].get(p).contains_set(i)) {
                return Ok(Some(NeViolation {
                    player: p,
                    profile: j,
                    deviation: product.realize(inf).expect("realizable"),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::privacy::exists_multi_ne;
    use crate::vertex_set::VertexSet;

    fn profile(a: &GameArena, accepts: &[&[usize]]) -> ObjectiveProfile {
        ObjectiveProfile::new(
            a,
            accepts
                .iter()
                .map(|s| MullerObjective::from_buchi(a, s.iter().copied().collect()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fig3_profile_is_an_equilibrium() {
        let a = fixtures::fig3();
        let alpha = profile(&a, &[&[0], &[1], &[2]]);
        let l = exists_multi_ne(&a, std::slice::from_ref(&alpha))
            .unwrap()
            .unwrap();
        let Synthesis::Profile(st) =
            synthesize_ne_profile(&a, std::slice::from_ref(&alpha), &l).unwrap()
        else {
            panic!("punishment expected to exist");
        };
        assert_eq!(profile_outcome(&a, &st).unwrap(), l);
        assert_eq!(verify_ne_profile(&a, &[alpha], &st).unwrap(), None);
    }

    #[test]
    fn union_of_losing_objectives_can_be_unpunishable() {
        // p0 at u chooses c (loop) or x; p1 at x chooses loop a or loop b
        let a = GameArena::build(
            &["0", "1"],
            &["u", "c", "x", "a", "b"],
            &[0, 0, 1, 1, 1],
            0,
            &[(0, 1), (0, 2), (1, 1), (2, 3), (2, 4), (3, 3), (4, 4)],
        )
        .unwrap();
        let only = |v: usize| MullerObjective::from_sets(5, [VertexSet::singleton(v)]).unwrap();
        let p1 = ObjectiveProfile::new(&a, vec![only(3), MullerObjective::full(5)]).unwrap();
        let p2 = ObjectiveProfile::new(&a, vec![only(4), MullerObjective::full(5)]).unwrap();
        let l = exists_multi_ne(&a, &[p1.clone(), p2.clone()])
            .unwrap()
            .unwrap();
        assert_eq!(l.inf_set(), VertexSet::singleton(1));
        assert!(matches!(
            synthesize_ne_profile(&a, &[p1, p2], &l).unwrap(),
            Synthesis::NoPunishment { player: 0, .. }
        ));
    }
}
