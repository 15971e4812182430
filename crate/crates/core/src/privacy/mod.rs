//! Top-level decision procedures: indistinguishable strategies, Nash
//! equilibria for several objective profiles at once, and equilibria that
//! protect every player's objective from the observer.

mod ne;
mod oie;
mod synthesis;

use crate::adversary::{KnowledgeType, ObjectiveUniverse};
use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::objective::MullerObjective;
use crate::solver::{self, FiniteMemoryStrategy, Winner};

pub use crate::product::{check_strategy_containment, containment_counterexample, profile_outcome};
pub use ne::{
    build_r_profiles, exists_multi_ne, exists_multi_ne_bounded, exists_oie, exists_oie_bounded,
    exists_oine, exists_oine_bounded, is_ne_outcome, Search, SearchStats,
};
pub use oie::{is_oie, is_oie_with, Deviation, OieVerdict};
pub use synthesis::{synthesize_ne_profile, verify_ne_profile, NeViolation, Synthesis};

/// What player `p` wants to keep hidden: every objective in `targets` must
/// stay a candidate whatever the other players do.
#[derive(Debug, Clone)]
pub struct IndistSpec {
    pub player: PlayerId,
    pub objective: MullerObjective,
    pub targets: ObjectiveUniverse,
    pub knw: KnowledgeType,
    pub winning_required: bool,
}

impl IndistSpec {
    fn check(&self, arena: &GameArena) -> Result<()> {
        arena.check_player(self.player)?;
        self.objective.check_arena(arena)?;
        self.targets.check_arena(arena)
    }
}

fn meet(
    width: usize,
    terms: impl IntoIterator<Item = Result<MullerObjective>>,
) -> Result<MullerObjective> {
    let mut acc = MullerObjective::full(width);
    for t in terms {
        acc = acc.intersect(&t?)?;
    }
    Ok(acc)
}

/// The family `T` such that a strategy of `p` meets `spec` iff all of its
/// consistent plays have their Inf-set in `T`.
pub fn ois_target(arena: &GameArena, spec: &IndistSpec) -> Result<MullerObjective> {
    spec.check(arena)?;
    let n = arena.num_vertices();
    let o_p = &spec.objective;
    let not_p = o_p.complement();
    let mut winnable = Vec::new();
    let mut empty = Vec::new();
    for (_, o) in spec.targets.iter() {
        winnable.push(solver::winnable(arena, spec.player, o)?);
        empty.push(o.is_empty_on(arena)?);
    }
    let objs = spec.targets.objectives();
    let won = || {
        objs.iter()
            .zip(&winnable)
            .filter(|(_, &w)| w)
            .map(|(o, _)| o)
    };

    if spec.winning_required {
        return match spec.knw {
            KnowledgeType::Pgw | KnowledgeType::Pw => meet(
                n,
                std::iter::once(Ok(o_p.clone())).chain(objs.iter().map(|o| Ok(o.clone()))),
            ),
            KnowledgeType::Gw => Ok(if empty.iter().any(|&e| e) {
                MullerObjective::empty(n)
            } else {
                o_p.clone()
            }),
            KnowledgeType::Pg => meet(
                n,
                std::iter::once(Ok(o_p.clone())).chain(won().map(|o| Ok(o.clone()))),
            ),
        };
    }
    let agree = objs.iter().map(|o| o.agree(o_p));
    match spec.knw {
        KnowledgeType::Pw => meet(n, agree),
        KnowledgeType::Pgw => meet(n, agree.chain(won().map(|o| o.intersect(o_p)))),
        KnowledgeType::Gw => meet(
            n,
            won()
                .map(|_| Ok(o_p.clone()))
                .chain(empty.iter().filter(|&&e| e).map(|_| Ok(not_p.clone()))),
        ),
        KnowledgeType::Pg => meet(n, won().map(|o| Ok(o.clone()))),
    }
}

/// A strategy of `spec.player` meeting `spec`, certified against the
/// target, or `None` when there is none.
pub fn exists_ois(arena: &GameArena, spec: &IndistSpec) -> Result<Option<FiniteMemoryStrategy>> {
    let target = ois_target(arena, spec)?;
    let coalition = arena.coalition_arena(spec.player)?;
    let sol = solver::solve_zero_sum(&coalition, &target, arena.initial())?;
    if sol.winner == Winner::Antagonist {
        return Ok(None);
    }
    if !check_strategy_containment(arena, spec.player, &sol.strategy, &target)? {
        return Err(Error::Certification(
            "synthesized strategy leaves the target".into(),
        ));
    }
    Ok(Some(sol.strategy))
}
