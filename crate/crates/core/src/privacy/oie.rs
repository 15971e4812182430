use crate::adversary::{Adversary, AdversaryConfig, KnowledgeType, ObjectiveUniverse};
use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::objective::ObjectiveProfile;
use crate::product::{profile_outcome, StrategyProduct};
use crate::solver::FiniteMemoryStrategy;

/// A unilateral deviation that makes more objectives plausible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub player: PlayerId,
    /// A play reachable when only `player` changes strategy.
    pub outcome: Lasso,
    /// Universe positions that become candidates.
    pub gained: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OieVerdict {
    pub outcome: Lasso,
    pub deviation: Option<Deviation>,
}

impl OieVerdict {
    pub fn holds(&self) -> bool {
        self.deviation.is_none()
    }
}

pub fn is_oie(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    strategies: &[FiniteMemoryStrategy],
) -> Result<OieVerdict> {
    is_oie_with(
        arena,
        alpha,
        universe,
        knw,
        strategies,
        AdversaryConfig::default(),
    )
}

/// Checks whether no player can enlarge its candidate set by deviating
/// alone. The candidate set depends only on the Inf-set of the outcome, and
/// any play consistent with the other players' strategies is the outcome
/// of some deviation, so it suffices to scan the Inf-sets realizable in the
/// product with the others' strategies.
pub fn is_oie_with(
    arena: &GameArena,
    alpha: &ObjectiveProfile,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    strategies: &[FiniteMemoryStrategy],
    config: AdversaryConfig,
) -> Result<OieVerdict> {
    if alpha.len() != arena.num_players() {
        return Err(Error::ProfileArity {
            expected: arena.num_players(),
            found: alpha.len(),
        });
    }
    for (p, s) in strategies.iter().enumerate() {
        s.validate(arena, p)?;
    }
    let outcome = profile_outcome(arena, strategies)?;
    for p in 0..arena.num_players() {
        let adv = Adversary::new(arena, p, alpha.get(p), universe, config)?;
        let current = adv.candidates(knw, &outcome);
        let others: Vec<(PlayerId, &FiniteMemoryStrategy)> = strategies
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != p)
            .collect();
        let product = StrategyProduct::build(arena, &others)?;
        for inf in product.inf_sets(arena) {
            let cand = adv.candidates_for_inf(knw, inf);
            if !cand.is_subset(&current) {
                let gained = cand.indices().filter(|&i| !current.contains(i)).collect();
                let play = product
                    .realize(inf)
                    .expect("listed Inf-sets are realizable");
                return Ok(OieVerdict {
                    outcome,
                    deviation: Some(Deviation {
                        player: p,
                        outcome: play,
                        gained,
                    }),
                });
            }
        }
    }
    Ok(OieVerdict {
        outcome,
        deviation: None,
    })
}
