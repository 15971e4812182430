use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::adversary::{KnowledgeType, ObjectiveUniverse};
use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::objective::{MullerObjective, ObjectiveProfile};
use crate::solver::{self, WinnableMap};

/// Outcome of a search that may stop early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    /// The subset budget ran out before an answer was established.
    Undecided,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub subsets: u64,
    pub solver_calls: u64,
}

fn check_profiles(arena: &GameArena, profiles: &[ObjectiveProfile]) -> Result<()> {
    for prof in profiles {
        if prof.len() != arena.num_players() {
            return Err(Error::ProfileArity {
                expected: arena.num_players(),
                found: prof.len(),
            });
        }
        for o in prof.iter() {
            o.check_arena(arena)?;
        }
    }
    Ok(())
}

/// `winnable_map` for every `(p, j)`, solving each distinct objective of a
/// player once.
fn winnable_maps(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    stats: &mut SearchStats,
) -> Result<Vec<Vec<WinnableMap>>> {
    let mut cache: HashMap<(PlayerId, &MullerObjective), WinnableMap> = HashMap::new();
    let mut out = Vec::with_capacity(profiles.len());
    for prof in profiles {
        let mut row = Vec::with_capacity(prof.len());
        for (p, o) in prof.iter().enumerate() {
            let map = match cache.entry((p, o)) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => {
                    stats.solver_calls += 1;
                    e.insert(solver::winnable_map(arena, p, o)?)
                }
            };
            row.push(map.clone());
        }
        out.push(row);
    }
    Ok(out)
}

/// An outcome of a strategy profile that is a Nash equilibrium for every
/// given objective profile simultaneously, if one exists.
pub fn exists_multi_ne(arena: &GameArena, profiles: &[ObjectiveProfile]) -> Result<Option<Lasso>> {
    Ok(exists_multi_ne_bounded(arena, profiles, None)?.0.found())
}

/// Enumerates vertex sets `V' ∋ initial` in ascending mask order. For each,
/// the one-player subgame on `V'` must realize an Inf-set accepted by
/// every objective `O_p^j` that `p` could force from some vertex of `V'`
/// it owns. At most `max_subsets` sets are examined.
pub fn exists_multi_ne_bounded(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    max_subsets: Option<u64>,
) -> Result<(Search<Lasso>, SearchStats)> {
    check_profiles(arena, profiles)?;
    let n = arena.num_vertices();
    let mut stats = SearchStats::default();
    let maps = winnable_maps(arena, profiles, &mut stats)?;

    let local: Vec<MullerObjective> = (0..n)
        .map(|v| {
            let p = arena.owner(v);
            let mut acc = MullerObjective::full(n);
            for (j, prof) in profiles.iter().enumerate() {
                if maps[j][p].get(v) {
                    acc = acc.intersect(prof.get(p))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let v0 = arena.initial();
    for keep in arena.all().subsets() {
        if !keep.contains(v0) {
            continue;
        }
        if max_subsets.is_some_and(|cap| stats.subsets >= cap) {
            return Ok((Search::Undecided, stats));
        }
        stats.subsets += 1;
        let Ok(sub) = arena.subgame(keep) else {
            continue;
        };
        let mut obj = MullerObjective::full(n);
        for v in keep {
            obj = obj.intersect(&local[v])?;
        }
        if let Some(l) = solver::one_player_wins(&sub, &obj.restrict(keep))? {
            let lifted = l.map_vertices(|i| keep.nth(i).expect("index inside keep"));
            return Ok((Search::Found(lifted.normalize()), stats));
        }
    }
    Ok((Search::Absent, stats))
}

/// Whether `lasso` is the outcome of some profile that is a Nash
/// equilibrium for every objective profile: whenever the play visits a
/// vertex of `p` from which `p` can force `O_p^j`, the play is in `O_p^j`.
pub fn is_ne_outcome(
    arena: &GameArena,
    profiles: &[ObjectiveProfile],
    lasso: &Lasso,
) -> Result<bool> {
    check_profiles(arena, profiles)?;
    lasso.validate(arena)?;
    let maps = winnable_maps(arena, profiles, &mut SearchStats::default())?;
    let visited = lasso.visited_set();
    for (j, prof) in profiles.iter().enumerate() {
        for (p, o) in prof.iter().enumerate() {
            let forced = visited
                .intersection(arena.owned_by(p))
                .iter()
                .any(|v| maps[j][p].get(v));
            if forced && !o.contains_play(lasso)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One objective profile per universe member `O`, whose equilibria are
/// exactly the profiles where no player can deviate to make `O` newly
/// plausible for the observer.
pub fn build_r_profiles(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Vec<ObjectiveProfile>> {
    check_profiles(arena, std::slice::from_ref(alpha))?;
    universe.check_arena(arena)?;
    let n = arena.num_vertices();
    let mut out = Vec::with_capacity(universe.len());
    for (_, o) in universe.iter() {
        let empty = o.is_empty_on(arena)?;
        let mut entries = Vec::with_capacity(arena.num_players());
        for (p, o_p) in alpha.iter().enumerate() {
            let w = solver::winnable(arena, p, o)?;
            let r = match knw {
                KnowledgeType::Pgw if w => o.intersect(o_p)?,
                KnowledgeType::Pgw | KnowledgeType::Pw => o.agree(o_p)?,
                KnowledgeType::Gw if w => o_p.clone(),
                KnowledgeType::Gw if empty => o_p.complement(),
                KnowledgeType::Gw => MullerObjective::full(n),
                KnowledgeType::Pg if w => o.clone(),
                KnowledgeType::Pg => MullerObjective::full(n),
            };
            entries.push(r);
        }
        out.push(ObjectiveProfile::new(arena, entries)?);
    }
    Ok(out)
}

pub fn exists_oie(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Option<Lasso>> {
    Ok(exists_oie_bounded(arena, alpha, universe, knw, None)?
        .0
        .found())
}

pub fn exists_oie_bounded(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    max_subsets: Option<u64>,
) -> Result<(Search<Lasso>, SearchStats)> {
    let profiles = build_r_profiles(arena, alpha, universe, knw)?;
    exists_multi_ne_bounded(arena, &profiles, max_subsets)
}

pub fn exists_oine(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
) -> Result<Option<Lasso>> {
    Ok(exists_oine_bounded(arena, alpha, universe, knw, None)?
        .0
        .found())
}

pub fn exists_oine_bounded(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    max_subsets: Option<u64>,
) -> Result<(Search<Lasso>, SearchStats)> {
    let mut profiles = build_r_profiles(arena, alpha, universe, knw)?;
    profiles.push(alpha.clone());
    exists_multi_ne_bounded(arena, &profiles, max_subsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::vertex_set::VertexSet;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn buchi_profile(a: &GameArena, accepts: &[&[usize]]) -> ObjectiveProfile {
        ObjectiveProfile::new(
            a,
            accepts
                .iter()
                .map(|s| MullerObjective::from_buchi(a, set(s)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn two_loops() -> GameArena {
        GameArena::build(
            &["1"],
            &["a", "b"],
            &[0, 0],
            0,
            &[(0, 0), (0, 1), (1, 1), (1, 0)],
        )
        .unwrap()
    }

    fn disjoint_profiles(a: &GameArena) -> (ObjectiveProfile, ObjectiveProfile) {
        let only = |v| MullerObjective::from_sets(2, [VertexSet::singleton(v)]).unwrap();
        (
            ObjectiveProfile::new(a, vec![only(0)]).unwrap(),
            ObjectiveProfile::new(a, vec![only(1)]).unwrap(),
        )
    }

    #[test]
    fn fig3_single_profile() {
        let a = fixtures::fig3();
        let alpha = buchi_profile(&a, &[&[0], &[1], &[2]]);
        let l = exists_multi_ne(&a, std::slice::from_ref(&alpha))
            .unwrap()
            .unwrap();
        assert!(is_ne_outcome(&a, std::slice::from_ref(&alpha), &l).unwrap());
        let c = Lasso::new(vec![], vec![0, 1]).unwrap();
        assert!(is_ne_outcome(&a, &[alpha], &c).unwrap());
    }

    #[test]
    fn fig1_empty_objective() {
        let a = fixtures::fig1();
        let alpha = buchi_profile(&a, &[&[]]);
        assert!(exists_multi_ne(&a, std::slice::from_ref(&alpha))
            .unwrap()
            .is_some());
        let l = Lasso::new(vec![0], vec![1]).unwrap();
        assert!(is_ne_outcome(&a, &[alpha], &l).unwrap());
    }

    #[test]
    fn fig2_must_return_to_v0() {
        let a = fixtures::fig2();
        let alpha = buchi_profile(&a, &[&[0]]);
        let stay = Lasso::new(vec![], vec![0]).unwrap();
        assert!(is_ne_outcome(&a, std::slice::from_ref(&alpha), &stay).unwrap());
        // v1 -> v2 -> v0 is the only way around; every cycle of fig2 hits v0
        let all = Lasso::new(vec![], vec![0, 1, 2]).unwrap();
        assert!(is_ne_outcome(&a, std::slice::from_ref(&alpha), &all).unwrap());
        let none = buchi_profile(&a, &[&[2]]);
        let avoid = Lasso::new(vec![], vec![0]).unwrap();
        assert!(!is_ne_outcome(&a, &[none], &avoid).unwrap());
    }

    #[test]
    fn conflicting_profiles_have_no_equilibrium() {
        // one player, two vertices with self-loops and edges both ways:
        // "stay at a" and "stay at b" are each winnable from everywhere
        let a = two_loops();
        let (at_a, at_b) = disjoint_profiles(&a);
        assert_eq!(
            exists_multi_ne(&a, &[at_a.clone(), at_b.clone()]).unwrap(),
            None
        );
        assert!(exists_multi_ne(&a, &[at_b]).unwrap().is_some());
        let full = ObjectiveProfile::new(&a, vec![MullerObjective::full(2)]).unwrap();
        let empty = ObjectiveProfile::new(&a, vec![MullerObjective::empty(2)]).unwrap();
        assert!(exists_multi_ne(&a, &[full, empty]).unwrap().is_some());
    }

    #[test]
    fn budget_reports_undecided() {
        let a = two_loops();
        let (at_a, at_b) = disjoint_profiles(&a);
        let (r, s) = exists_multi_ne_bounded(&a, &[at_a, at_b], Some(1)).unwrap();
        assert_eq!(r, Search::Undecided);
        assert_eq!(s.subsets, 1);
    }

    #[test]
    fn r_profile_identities() {
        let a = fixtures::fig3();
        let alpha = buchi_profile(&a, &[&[0], &[1], &[2]]);
        let u = ObjectiveUniverse::buchi(&a);
        let pw = build_r_profiles(&a, &alpha, &u, KnowledgeType::Pw).unwrap();
        // O = ⟨v0⟩ equals player 0's objective
        assert!(pw[1].get(0).is_full());
        let pg = build_r_profiles(&a, &alpha, &u, KnowledgeType::Pg).unwrap();
        // ⟨v2⟩ is not winnable for player 2
        assert!(pg[3].get(2).is_full());
        let gw = build_r_profiles(&a, &alpha, &u, KnowledgeType::Gw).unwrap();
        assert_eq!(gw[0].get(1), &alpha.get(1).complement());
    }

    #[test]
    fn empty_universe_is_plain_play_existence() {
        let a = fixtures::fig3();
        let alpha = buchi_profile(&a, &[&[0], &[1], &[2]]);
        let u = ObjectiveUniverse::new(vec![]).unwrap();
        assert!(exists_oie(&a, &alpha, &u, KnowledgeType::Pw)
            .unwrap()
            .is_some());
        assert_eq!(
            exists_oine(&a, &alpha, &u, KnowledgeType::Gw).unwrap(),
            exists_multi_ne(&a, &[alpha]).unwrap()
        );
    }

    #[test]
    fn fig3_gw_oie_exists() {
        let a = fixtures::fig3();
        let alpha = buchi_profile(&a, &[&[0], &[1], &[2]]);
        let u = ObjectiveUniverse::buchi(&a);
        let l = exists_oie(&a, &alpha, &u, KnowledgeType::Gw)
            .unwrap()
            .unwrap();
        let profiles = build_r_profiles(&a, &alpha, &u, KnowledgeType::Gw).unwrap();
        assert!(is_ne_outcome(&a, &profiles, &l).unwrap());
    }
}
