//! Candidate objectives an observer cannot rule out.
//!
//! Four observers differ in what they see: the play and who won (`pw`),
//! the arena and who won (`gw`), the play and the arena (`pg`), or all
//! three (`pgw`). Observers that know the arena cannot tell apart
//! objectives accepting the same plays of it, so by default each such
//! class is reported through a single representative.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::objective::MullerObjective;
use crate::solver;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnowledgeType {
    Pw,
    Gw,
    Pg,
    Pgw,
}

impl KnowledgeType {
    pub const ALL: [KnowledgeType; 4] = [
        KnowledgeType::Pw,
        KnowledgeType::Gw,
        KnowledgeType::Pg,
        KnowledgeType::Pgw,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            KnowledgeType::Pw => "pw",
            KnowledgeType::Gw => "gw",
            KnowledgeType::Pg => "pg",
            KnowledgeType::Pgw => "pgw",
        }
    }
}

impl fmt::Display for KnowledgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KnowledgeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pw" => Ok(KnowledgeType::Pw),
            "gw" => Ok(KnowledgeType::Gw),
            "pg" => Ok(KnowledgeType::Pg),
            "pgw" => Ok(KnowledgeType::Pgw),
            _ => Err(Error::Unsupported(format!("unknown knowledge type `{s}`"))),
        }
    }
}

/// How "this objective accepts no play" is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptinessMode {
    /// No play of the arena is accepted.
    #[default]
    ArenaRelative,
    /// The family itself is empty.
    Syntactic,
}

/// Whether arena-aware observers merge objectives that accept the same
/// plays of the arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EquivalenceMode {
    #[default]
    Quotient,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdversaryConfig {
    pub emptiness: EmptinessMode,
    pub equivalence: EquivalenceMode,
}

/// An ordered list of named objectives over one arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveUniverse {
    names: Vec<String>,
    objectives: Vec<MullerObjective>,
}

/// Name of the Büchi objective with accepting set `accept`, e.g. `⟨v0,v2⟩`.
pub fn buchi_name(arena: &GameArena, accept: VertexSet) -> String {
    let names: Vec<&str> = accept.iter().map(|v| arena.vertex_name(v)).collect();
    format!("⟨{}⟩", names.join(","))
}

impl ObjectiveUniverse {
    pub fn new(entries: Vec<(String, MullerObjective)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, (name, _)) in entries.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if let Some(w) = entries.first().map(|(_, o)| o.width()) {
            if let Some((_, o)) = entries.iter().find(|(_, o)| o.width() != w) {
                return Err(Error::WidthMismatch {
                    expected: w,
                    found: o.width(),
                });
            }
        }
        let (names, objectives) = entries.into_iter().unzip();
        Ok(ObjectiveUniverse { names, objectives })
    }

    /// All `2^|V|` Büchi objectives, by size of the accepting set and then
    /// lexicographically.
    pub fn buchi(arena: &GameArena) -> Self {
        let mut sets: Vec<VertexSet> = arena.all().subsets().collect();
        sets.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        let entries = sets
            .into_iter()
            .map(|s| {
                (
                    buchi_name(arena, s),
                    MullerObjective::from_buchi(arena, s).expect("subset of the arena"),
                )
            })
            .collect();
        Self::new(entries).expect("names are distinct")
    }

    /// Every Muller family over the arena (`2^(2^|V| - 1)` objectives);
    /// only for `|V| ≤ 4`. Named by their member lists.
    pub fn muller(arena: &GameArena) -> Result<Self> {
        let n = arena.num_vertices();
        if n > 4 {
            return Err(Error::Unsupported(
                "the full Muller universe is limited to 4 vertices".into(),
            ));
        }
        let sets: Vec<VertexSet> = (1..(1u32 << n)).map(VertexSet::from_bits).collect();
        let entries = (0..(1u64 << sets.len()))
            .map(|bits| {
                let members: Vec<VertexSet> = sets
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &s)| s)
                    .collect();
                let name = format!(
                    "Muller{{{}}}",
                    members
                        .iter()
                        .map(|&s| arena.format_set(s))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                (
                    name,
                    MullerObjective::from_sets(n, members).expect("in range"),
                )
            })
            .collect();
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, i: usize) -> &MullerObjective {
        &self.objectives[i]
    }

    pub fn objectives(&self) -> &[MullerObjective] {
        &self.objectives
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &MullerObjective)> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.objectives.iter())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownObjective(name.to_string()))
    }

    /// The sub-universe with the given names, in this universe's order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let mut keep = vec![false; self.len()];
        for n in names {
            keep[self.index_of(n.as_ref())?] = true;
        }
        Ok(ObjectiveUniverse {
            names: self
                .names
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(n, _)| n.clone())
                .collect(),
            objectives: self
                .objectives
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(o, _)| o.clone())
                .collect(),
        })
    }

    pub fn check_arena(&self, arena: &GameArena) -> Result<()> {
        self.objectives
            .iter()
            .try_for_each(|o| o.check_arena(arena))
    }
}

/// A subset of a universe, by position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateSet(Vec<bool>);

impl CandidateSet {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        CandidateSet(mask)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len()).filter(|&i| self.0[i])
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        CandidateSet(self.0.iter().zip(&other.0).map(|(&a, &b)| a && b).collect())
    }

    pub fn names<'u>(&self, universe: &'u ObjectiveUniverse) -> Vec<&'u str> {
        self.indices().map(|i| universe.name(i)).collect()
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.0
    }
}

/// Per-query facts about every universe member, computed once.
pub struct Adversary<'a> {
    universe: &'a ObjectiveUniverse,
    o_p: &'a MullerObjective,
    winnable: Vec<bool>,
    empty: Vec<bool>,
    representative: Vec<bool>,
}

impl<'a> Adversary<'a> {
    pub fn new(
        arena: &GameArena,
        p: PlayerId,
        o_p: &'a MullerObjective,
        universe: &'a ObjectiveUniverse,
        config: AdversaryConfig,
    ) -> Result<Self> {
        arena.check_player(p)?;
        o_p.check_arena(arena)?;
        universe.check_arena(arena)?;
        let winnable = universe
            .objectives()
            .iter()
            .map(|o| solver::winnable(arena, p, o))
            .collect::<Result<Vec<_>>>()?;
        let empty = universe
            .objectives()
            .iter()
            .map(|o| match config.emptiness {
                EmptinessMode::ArenaRelative => o.is_empty_on(arena),
                EmptinessMode::Syntactic => Ok(o.is_empty()),
            })
            .collect::<Result<Vec<_>>>()?;
        let representative = match config.equivalence {
            EquivalenceMode::Raw => vec![true; universe.len()],
            EquivalenceMode::Quotient => representatives(arena, o_p, universe)?,
        };
        Ok(Adversary {
            universe,
            o_p,
            winnable,
            empty,
            representative,
        })
    }

    pub fn winnable(&self, i: usize) -> bool {
        self.winnable[i]
    }

    /// The candidate set when the outcome's Inf-set is `inf`.
    pub fn candidates_for_inf(&self, knw: KnowledgeType, inf: VertexSet) -> CandidateSet {
        let win = self.o_p.contains_set(inf);
        let member = |i: usize| {
            let o = self.universe.get(i);
            let in_o = o.contains_set(inf);
            let w = self.winnable[i];
            let pw = in_o == win;
            match knw {
                KnowledgeType::Pw => pw,
                KnowledgeType::Gw => {
                    self.representative[i] && (!w || win) && (!self.empty[i] || !win)
                }
                KnowledgeType::Pg => self.representative[i] && (!w || in_o),
                KnowledgeType::Pgw => self.representative[i] && pw && (!w || (in_o && win)),
            }
        };
        CandidateSet((0..self.universe.len()).map(member).collect())
    }

    pub fn candidates(&self, knw: KnowledgeType, outcome: &Lasso) -> CandidateSet {
        self.candidates_for_inf(knw, outcome.inf_set())
    }
}

/// Marks one member per class of arena-equivalent objectives: `o_p` itself
/// when it is in the universe, else the first member in universe order.
fn representatives(
    arena: &GameArena,
    o_p: &MullerObjective,
    universe: &ObjectiveUniverse,
) -> Result<Vec<bool>> {
    let feasible = arena.feasible_inf_sets(arena.all())?;
    let key = |o: &MullerObjective| -> Vec<bool> {
        feasible.iter().map(|&i| o.contains_set(i)).collect()
    };
    let mut chosen: HashMap<Vec<bool>, usize> = HashMap::new();
    for (i, o) in universe.objectives().iter().enumerate() {
        let k = key(o);
        match chosen.get(&k) {
            None => {
                chosen.insert(k, i);
            }
            Some(&j) if o == o_p && universe.get(j) != o_p => {
                chosen.insert(k, i);
            }
            Some(_) => {}
        }
    }
    let mut rep = vec![false; universe.len()];
    for &i in chosen.values() {
        rep[i] = true;
    }
    Ok(rep)
}

/// Candidate set of `p` with true objective `o_p` after the play `outcome`,
/// using the default configuration.
pub fn obj_set(
    arena: &GameArena,
    p: PlayerId,
    o_p: &MullerObjective,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    outcome: &Lasso,
) -> Result<CandidateSet> {
    obj_set_with(
        arena,
        p,
        o_p,
        universe,
        knw,
        outcome,
        AdversaryConfig::default(),
    )
}

pub fn obj_set_with(
    arena: &GameArena,
    p: PlayerId,
    o_p: &MullerObjective,
    universe: &ObjectiveUniverse,
    knw: KnowledgeType,
    outcome: &Lasso,
    config: AdversaryConfig,
) -> Result<CandidateSet> {
    outcome.validate(arena)?;
    Ok(Adversary::new(arena, p, o_p, universe, config)?.candidates(knw, outcome))
}
