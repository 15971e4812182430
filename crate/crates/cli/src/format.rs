//! The JSON input document and conversions to and from core types.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use indist::adversary::ObjectiveUniverse;
use indist::arena::{ArenaDesc, PlayerId};
use indist::{
    FiniteMemoryStrategy, GameArena, KnowledgeType, Lasso, MullerObjective, ObjectiveProfile,
    VertexSet,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub arena: Option<ArenaDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objectives: BTreeMap<String, ObjectiveDoc>,
    /// Objective of `player` for single-player queries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    /// Second objective for `equiv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    /// One objective name per player.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<UniverseDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knw: Option<KnowledgeType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<LassoDoc>,
    /// Strategies by player name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub strategy: BTreeMap<String, StrategyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectiveDoc {
    Buchi { accept: Vec<String> },
    Cobuchi { avoid: Vec<String> },
    Parity { colors: BTreeMap<String, u32> },
    Rabin { pairs: Vec<PairDoc> },
    Streett { pairs: Vec<PairDoc> },
    Muller { family: Vec<Vec<String>> },
    Full,
    Empty,
}

/// `(F, G)` of a Rabin or Streett condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub f: Vec<String>,
    pub g: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseDoc {
    /// `"buchi"` or `"muller"`.
    Generated(String),
    Named(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoDoc {
    #[serde(default)]
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

/// Memory states are referred to by position in `memory`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyDoc {
    pub memory: Vec<String>,
    pub init: usize,
    /// Per memory state: vertex → next memory state.
    pub update: Vec<BTreeMap<String, usize>>,
    /// Per memory state: owned vertex → successor.
    pub choice: Vec<BTreeMap<String, String>>,
}

pub fn set_names(arena: &GameArena, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| arena.vertex_name(v).to_string()).collect()
}

impl ObjectiveDoc {
    pub fn build(&self, arena: &GameArena) -> Result<MullerObjective> {
        let set = |names: &[String]| arena.parse_set(names);
        let pairs = |ps: &[PairDoc]| -> Result<Vec<(VertexSet, VertexSet)>> {
            ps.iter().map(|p| Ok((set(&p.f)?, set(&p.g)?))).collect()
        };
        let n = arena.num_vertices();
        Ok(match self {
            ObjectiveDoc::Buchi { accept } => MullerObjective::from_buchi(arena, set(accept)?)?,
            ObjectiveDoc::Cobuchi { avoid } => MullerObjective::from_cobuchi(arena, set(avoid)?)?,
            ObjectiveDoc::Parity { colors } => {
                let mut c = vec![None; n];
                for (v, &k) in colors {
                    c[arena.vertex_index(v)?] = Some(k);
                }
                let c: Vec<u32> = c
                    .into_iter()
                    .enumerate()
                    .map(|(v, k)| k.ok_or_else(|| anyhow!("no color for {}", arena.vertex_name(v))))
                    .collect::<Result<_>>()?;
                MullerObjective::from_parity(arena, &c)?
            }
            ObjectiveDoc::Rabin { pairs: ps } => MullerObjective::from_rabin(arena, &pairs(ps)?)?,
            ObjectiveDoc::Streett { pairs: ps } => {
                MullerObjective::from_streett(arena, &pairs(ps)?)?
            }
            ObjectiveDoc::Muller { family } => {
                let sets = family
                    .iter()
                    .map(|s| set(s))
                    .collect::<Result<Vec<_>, _>>()?;
                MullerObjective::from_family(arena, &sets)?
            }
            ObjectiveDoc::Full => MullerObjective::full(n),
            ObjectiveDoc::Empty => MullerObjective::empty(n),
        })
    }

    /// Canonical explicit form.
    #[cfg(test)]
    pub fn from_objective(arena: &GameArena, o: &MullerObjective) -> Self {
        ObjectiveDoc::Muller {
            family: o.members().map(|s| set_names(arena, s)).collect(),
        }
    }
}

impl LassoDoc {
    pub fn build(&self, arena: &GameArena) -> Result<Lasso> {
        let ids = |vs: &[String]| -> Result<Vec<usize>> {
            vs.iter().map(|v| Ok(arena.vertex_index(v)?)).collect()
        };
        let l = Lasso::new(ids(&self.prefix)?, ids(&self.cycle)?)?;
        l.validate(arena)?;
        Ok(l)
    }

    pub fn from_lasso(arena: &GameArena, l: &Lasso) -> Self {
        let names = |vs: &[usize]| {
            vs.iter()
                .map(|&v| arena.vertex_name(v).to_string())
                .collect()
        };
        LassoDoc {
            prefix: names(l.prefix()),
            cycle: names(l.cycle()),
        }
    }
}

impl StrategyDoc {
    pub fn build(&self, arena: &GameArena, p: PlayerId) -> Result<FiniteMemoryStrategy> {
        let n = arena.num_vertices();
        let k = self.memory.len();
        if self.update.len() != k || self.choice.len() != k {
            bail!("strategy tables need one entry per memory state");
        }
        let mut update = vec![vec![0; n]; k];
        let mut choice = vec![vec![None; n]; k];
        for m in 0..k {
            for (v, &next) in &self.update[m] {
                update[m][arena.vertex_index(v)?] = next;
            }
            for (v, w) in &self.choice[m] {
                choice[m][arena.vertex_index(v)?] = Some(arena.vertex_index(w)?);
            }
            for v in arena.owned_by(p) {
                if choice[m][v].is_none() {
                    bail!(
                        "memory state {} has no move at {}",
                        self.memory[m],
                        arena.vertex_name(v)
                    );
                }
            }
        }
        let s = FiniteMemoryStrategy::new(self.memory.clone(), self.init, update, choice)?;
        s.validate(arena, p)?;
        Ok(s)
    }

    pub fn from_strategy(arena: &GameArena, s: &FiniteMemoryStrategy) -> Self {
        let k = s.num_memory();
        let name = |v: usize| arena.vertex_name(v).to_string();
        StrategyDoc {
            memory: s.labels().to_vec(),
            init: s.init(),
            update: (0..k)
                .map(|m| (0..s.width()).map(|v| (name(v), s.update(m, v))).collect())
                .collect(),
            choice: (0..k)
                .map(|m| {
                    (0..s.width())
                        .filter_map(|v| s.choice(m, v).map(|w| (name(v), name(w))))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Resolved view of a document against its arena.
pub struct Input {
    pub doc: Document,
    pub arena: GameArena,
}

impl Input {
    pub fn new(doc: Document) -> Result<Self> {
        let desc = doc.arena.as_ref().context("document has no arena")?;
        let arena = GameArena::from_desc(desc)?;
        Ok(Input { doc, arena })
    }

    pub fn objective_named(&self, name: &str) -> Result<MullerObjective> {
        self.doc
            .objectives
            .get(name)
            .with_context(|| format!("unknown objective {name:?}"))?
            .build(&self.arena)
    }

    pub fn player(&self, flag: Option<&str>) -> Result<PlayerId> {
        let name = flag
            .or(self.doc.player.as_deref())
            .context("no player given")?;
        Ok(self.arena.player_index(name)?)
    }

    pub fn knw(&self, flag: Option<KnowledgeType>) -> Result<KnowledgeType> {
        flag.or(self.doc.knw).context("no knowledge type given")
    }

    pub fn objective(&self) -> Result<MullerObjective> {
        self.objective_named(
            self.doc
                .objective
                .as_deref()
                .context("no objective given")?,
        )
    }

    fn profile(&self, by_player: &BTreeMap<String, String>) -> Result<ObjectiveProfile> {
        let mut objs = Vec::with_capacity(self.arena.num_players());
        for p in self.arena.player_names() {
            let name = by_player
                .get(p)
                .with_context(|| format!("profile has no objective for player {p}"))?;
            objs.push(self.objective_named(name)?);
        }
        if let Some(extra) = by_player
            .keys()
            .find(|k| !self.arena.player_names().contains(k))
        {
            bail!("profile names unknown player {extra}");
        }
        Ok(ObjectiveProfile::new(&self.arena, objs)?)
    }

    pub fn alpha(&self) -> Result<ObjectiveProfile> {
        self.profile(self.doc.alpha.as_ref().context("no alpha profile given")?)
    }

    /// `profiles`, or `alpha` alone when no list is given.
    pub fn profiles(&self) -> Result<Vec<ObjectiveProfile>> {
        if self.doc.profiles.is_empty() {
            return Ok(vec![self.alpha()?]);
        }
        self.doc.profiles.iter().map(|p| self.profile(p)).collect()
    }

    pub fn universe(&self) -> Result<ObjectiveUniverse> {
        match self.doc.universe.as_ref().context("no universe given")? {
            UniverseDoc::Generated(kind) => match kind.as_str() {
                "buchi" => Ok(ObjectiveUniverse::buchi(&self.arena)),
                "muller" => Ok(ObjectiveUniverse::muller(&self.arena)?),
                other => bail!("unknown universe generator {other:?}"),
            },
            UniverseDoc::Named(names) => {
                let entries = names
                    .iter()
                    .map(|n| Ok((n.clone(), self.objective_named(n)?)))
                    .collect::<Result<_>>()?;
                Ok(ObjectiveUniverse::new(entries)?)
            }
        }
    }

    /// `target_set` picked out of the universe; the whole universe if absent.
    pub fn targets(&self) -> Result<ObjectiveUniverse> {
        let u = self.universe()?;
        match &self.doc.target_set {
            Some(names) => Ok(u.select(names)?),
            None => Ok(u),
        }
    }

    pub fn outcome(&self) -> Result<Lasso> {
        self.doc
            .outcome
            .as_ref()
            .context("no outcome given")?
            .build(&self.arena)
    }

    pub fn strategy_of(&self, p: PlayerId) -> Result<FiniteMemoryStrategy> {
        let name = self.arena.player_name(p);
        self.doc
            .strategy
            .get(name)
            .with_context(|| format!("no strategy for player {name}"))?
            .build(&self.arena, p)
    }

    pub fn strategies(&self) -> Result<Vec<FiniteMemoryStrategy>> {
        (0..self.arena.num_players())
            .map(|p| self.strategy_of(p))
            .collect()
    }
}
