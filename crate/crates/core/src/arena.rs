//! Game arenas: finite directed graphs whose vertices are partitioned among
//! players, with a designated initial vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexId, VertexSet, MAX_VERTICES};

/// Dense index of a player in declaration order.
pub type PlayerId = usize;

/// Protagonist index in a coalition arena.
pub const PROTAGONIST: PlayerId = 0;
/// Antagonist (coalition of everybody else) index in a coalition arena.
pub const ANTAGONIST: PlayerId = 1;

/// Name-based arena description, as read from an input document.
///
/// Ids are assigned by declaration order when the description is turned
/// into a [`GameArena`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArenaDesc {
    pub players: Vec<String>,
    pub vertices: Vec<String>,
    pub owner: BTreeMap<String, String>,
    pub initial: String,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NoPlayers,
    NoVertices,
    TooManyVertices,
    DuplicatePlayer,
    DuplicateVertex,
    MissingOwner,
    UnknownOwner,
    OwnerOfUnknownVertex,
    UnknownInitial,
    UnknownEdgeEndpoint,
    Blocking,
    Unreachable,
}

/// One broken (or suspicious) arena invariant, naming the offending element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub severity: Severity,
}

impl Violation {
    fn error(kind: ViolationKind, subject: impl Into<String>) -> Self {
        Violation {
            kind,
            subject: subject.into(),
            severity: Severity::Error,
        }
    }

    fn warning(kind: ViolationKind, subject: impl Into<String>) -> Self {
        Violation {
            kind,
            subject: subject.into(),
            severity: Severity::Warning,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::NoPlayers => "arena declares no players",
            ViolationKind::NoVertices => "arena declares no vertices",
            ViolationKind::TooManyVertices => "too many vertices",
            ViolationKind::DuplicatePlayer => "duplicate player",
            ViolationKind::DuplicateVertex => "duplicate vertex",
            ViolationKind::MissingOwner => "vertex has no owner",
            ViolationKind::UnknownOwner => "owner is not a declared player",
            ViolationKind::OwnerOfUnknownVertex => "owner given for undeclared vertex",
            ViolationKind::UnknownInitial => "initial vertex is not declared",
            ViolationKind::UnknownEdgeEndpoint => "edge endpoint is not declared",
            ViolationKind::Blocking => "vertex has no outgoing edge",
            ViolationKind::Unreachable => "vertex is unreachable from the initial vertex",
        };
        write!(f, "{what}: {}", self.subject)
    }
}

/// Checks every arena invariant on a description.
///
/// Returns an empty list iff the description yields a valid [`GameArena`].
/// Unreachable vertices are reported with [`Severity::Warning`]; they do
/// not prevent construction.
pub fn validate(desc: &ArenaDesc) -> Vec<Violation> {
    let mut out = Vec::new();
    if desc.players.is_empty() {
        out.push(Violation::error(ViolationKind::NoPlayers, ""));
    }
    if desc.vertices.is_empty() {
        out.push(Violation::error(ViolationKind::NoVertices, ""));
    }
    if desc.vertices.len() > MAX_VERTICES {
        out.push(Violation::error(
            ViolationKind::TooManyVertices,
            format!("{} > {MAX_VERTICES}", desc.vertices.len()),
        ));
    }
    let mut players = HashMap::new();
    for (i, p) in desc.players.iter().enumerate() {
        if players.insert(p.as_str(), i).is_some() {
            out.push(Violation::error(ViolationKind::DuplicatePlayer, p));
        }
    }
    let mut vertices = HashMap::new();
    for (i, v) in desc.vertices.iter().enumerate() {
        if vertices.insert(v.as_str(), i).is_some() {
            out.push(Violation::error(ViolationKind::DuplicateVertex, v));
        }
    }
    for v in &desc.vertices {
        match desc.owner.get(v) {
            None => out.push(Violation::error(ViolationKind::MissingOwner, v)),
            Some(p) if !players.contains_key(p.as_str()) => out.push(Violation::error(
                ViolationKind::UnknownOwner,
                format!("{v} -> {p}"),
            )),
            Some(_) => {}
        }
    }
    for v in desc.owner.keys() {
        if !vertices.contains_key(v.as_str()) {
            out.push(Violation::error(ViolationKind::OwnerOfUnknownVertex, v));
        }
    }
    let initial = vertices.get(desc.initial.as_str()).copied();
    if initial.is_none() {
        out.push(Violation::error(
            ViolationKind::UnknownInitial,
            &desc.initial,
        ));
    }
    let mut has_succ = vec![false; desc.vertices.len()];
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); desc.vertices.len()];
    for (a, b) in &desc.edges {
        match (vertices.get(a.as_str()), vertices.get(b.as_str())) {
            (Some(&i), Some(&j)) => {
                has_succ[i] = true;
                succ[i].insert(j);
            }
            _ => out.push(Violation::error(
                ViolationKind::UnknownEdgeEndpoint,
                format!("({a}, {b})"),
            )),
        }
    }
    for (i, v) in desc.vertices.iter().enumerate() {
        if !has_succ[i] {
            out.push(Violation::error(ViolationKind::Blocking, v));
        }
    }
    if let Some(init) = initial {
        let mut seen = vec![false; desc.vertices.len()];
        let mut stack = vec![init];
        seen[init] = true;
        while let Some(u) = stack.pop() {
            for &w in &succ[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for (i, v) in desc.vertices.iter().enumerate() {
            if !seen[i] {
                out.push(Violation::warning(ViolationKind::Unreachable, v));
            }
        }
    }
    out
}

/// A validated game arena.
///
/// Invariants: the owner map is total, the initial vertex exists, every
/// vertex has at least one successor and all edges stay inside the vertex
/// set.
#[derive(Clone, PartialEq, Eq)]
pub struct GameArena {
    players: Vec<String>,
    vertices: Vec<String>,
    owner: Vec<PlayerId>,
    initial: VertexId,
    succ: Vec<VertexSet>,
    pred: Vec<VertexSet>,
}

impl fmt::Debug for GameArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameArena")
            .field("players", &self.players)
            .field("vertices", &self.vertices)
            .field("owner", &self.owner)
            .field("initial", &self.initial)
            .field("succ", &self.succ)
            .finish()
    }
}

impl GameArena {
    pub fn from_desc(desc: &ArenaDesc) -> Result<Self> {
        let errors: Vec<_> = validate(desc)
            .into_iter()
            .filter(|v| v.severity == Severity::Error)
            .collect();
        if !errors.is_empty() {
            return Err(Error::InvalidArena(errors));
        }
        let pidx: HashMap<&str, usize> = desc
            .players
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let vidx: HashMap<&str, usize> = desc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let owner = desc
            .vertices
            .iter()
            .map(|v| pidx[desc.owner[v].as_str()])
            .collect();
        let edges: Vec<_> = desc
            .edges
            .iter()
            .map(|(a, b)| (vidx[a.as_str()], vidx[b.as_str()]))
            .collect();
        Ok(Self::assemble(
            desc.players.clone(),
            desc.vertices.clone(),
            owner,
            vidx[desc.initial.as_str()],
            &edges,
        ))
    }

    /// Index-based constructor, mostly for fixtures and tests.
    pub fn build(
        players: &[&str],
        vertices: &[&str],
        owner: &[PlayerId],
        initial: VertexId,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let mut own = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            let p = owner.get(i).ok_or(Error::VertexOutOfRange(i))?;
            let name = players.get(*p).ok_or(Error::PlayerOutOfRange(*p))?;
            own.insert(v.to_string(), name.to_string());
        }
        let name = |i: usize| -> Result<String> {
            vertices
                .get(i)
                .map(|s| s.to_string())
                .ok_or(Error::VertexOutOfRange(i))
        };
        let desc = ArenaDesc {
            players: players.iter().map(|s| s.to_string()).collect(),
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            owner: own,
            initial: name(initial)?,
            edges: edges
                .iter()
                .map(|&(a, b)| Ok((name(a)?, name(b)?)))
                .collect::<Result<_>>()?,
        };
        Self::from_desc(&desc)
    }

    fn assemble(
        players: Vec<String>,
        vertices: Vec<String>,
        owner: Vec<PlayerId>,
        initial: VertexId,
        edges: &[(VertexId, VertexId)],
    ) -> Self {
        let n = vertices.len();
        let mut succ = vec![VertexSet::EMPTY; n];
        let mut pred = vec![VertexSet::EMPTY; n];
        for &(a, b) in edges {
            succ[a].insert(b);
            pred[b].insert(a);
        }
        GameArena {
            players,
            vertices,
            owner,
            initial,
            succ,
            pred,
        }
    }

    pub fn to_desc(&self) -> ArenaDesc {
        ArenaDesc {
            players: self.players.clone(),
            vertices: self.vertices.clone(),
            owner: self
                .vertices
                .iter()
                .zip(&self.owner)
                .map(|(v, &p)| (v.clone(), self.players[p].clone()))
                .collect(),
            initial: self.vertices[self.initial].clone(),
            edges: self
                .edges()
                .map(|(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    pub fn initial(&self) -> VertexId {
        self.initial
    }

    pub fn owner(&self, v: VertexId) -> PlayerId {
        self.owner[v]
    }

    pub fn successors(&self, v: VertexId) -> VertexSet {
        self.succ[v]
    }

    pub fn predecessors(&self, v: VertexId) -> VertexSet {
        self.pred[v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.succ[a].contains(b)
    }

    /// All edges, ordered by source then target.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |b| (a, b)))
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn player_name(&self, p: PlayerId) -> &str {
        &self.players[p]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn player_names(&self) -> &[String] {
        &self.players
    }

    pub fn vertex_index(&self, name: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn player_index(&self, name: &str) -> Result<PlayerId> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPlayer(name.to_string()))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn check_player(&self, p: PlayerId) -> Result<()> {
        if p < self.num_players() {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange(p))
        }
    }

    /// Vertices owned by `p` (the block `V_p` of the partition).
    pub fn owned_by(&self, p: PlayerId) -> VertexSet {
        self.owner
            .iter()
            .enumerate()
            .filter(|&(_, &q)| q == p)
            .map(|(v, _)| v)
            .collect()
    }

    /// Renders a set with vertex names, e.g. `{v0,v2}`.
    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.vertex_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn parse_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| self.vertex_index(n.as_ref()))
            .collect()
    }

    /// Same arena with a different initial vertex.
    pub fn with_initial(&self, v: VertexId) -> Result<Self> {
        self.check_vertex(v)?;
        let mut a = self.clone();
        a.initial = v;
        Ok(a)
    }

    /// Vertices reachable from `from` along edges that stay inside `within`.
    pub fn reachable(&self, from: VertexId, within: VertexSet) -> Result<VertexSet> {
        self.check_vertex(from)?;
        if !within.contains(from) {
            return Err(Error::StartOutsideSet(from));
        }
        Ok(self.forward_closure(VertexSet::singleton(from), within))
    }

    pub(crate) fn forward_closure(&self, start: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = start;
        let mut frontier = start;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.succ[v]);
            }
            next = next.intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub(crate) fn backward_closure(&self, start: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = start;
        let mut frontier = start;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.pred[v]);
            }
            next = next.intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether some closed walk inside the induced subgraph on `set` visits
    /// every vertex of `set`.
    pub fn admits_covering_cycle(&self, set: VertexSet) -> bool {
        let Some(s) = set.first() else {
            return false;
        };
        if set.len() == 1 {
            return self.succ[s].contains(s);
        }
        self.forward_closure(VertexSet::singleton(s), set) == set
            && self.backward_closure(VertexSet::singleton(s), set) == set
    }

    /// Every nonempty `I ⊆ within` that is the Inf-set of some play staying
    /// in `within`, in ascending bit-vector order.
    pub fn feasible_inf_sets(&self, within: VertexSet) -> Result<Vec<VertexSet>> {
        if !within.contains(self.initial) {
            return Err(Error::StartOutsideSet(self.initial));
        }
        let within = within.intersection(self.all());
        let reach = self.forward_closure(VertexSet::singleton(self.initial), within);
        Ok(reach
            .subsets()
            .filter(|&i| !i.is_empty() && self.admits_covering_cycle(i))
            .collect())
    }

    /// Whether `set` is the Inf-set of some play of the whole arena.
    pub fn is_feasible_inf_set(&self, set: VertexSet) -> bool {
        let reach = self.forward_closure(VertexSet::singleton(self.initial), self.all());
        set.is_subset(reach) && self.admits_covering_cycle(set)
    }

    /// One-player arena induced by `keep`, owned by a single synthetic
    /// player. Kept vertices are renumbered in ascending order; names are
    /// preserved. Use [`VertexSet::compress`]/[`VertexSet::expand`] to move
    /// between the two index spaces.
    pub fn subgame(&self, keep: VertexSet) -> Result<Self> {
        if !keep.is_subset(self.all()) {
            return Err(Error::VertexOutOfRange(
                keep.difference(self.all()).first().unwrap_or(0),
            ));
        }
        if !keep.contains(self.initial) {
            return Err(Error::InitialNotKept);
        }
        for v in keep {
            if !self.succ[v].intersects(keep) {
                return Err(Error::BlockingRestriction(v));
            }
        }
        let vertices = keep.iter().map(|v| self.vertices[v].clone()).collect();
        let owner = vec![0; keep.len()];
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| keep.contains(a) && keep.contains(b))
            .map(|(a, b)| {
                (
                    VertexSet::singleton(a).compress(keep).first().unwrap(),
                    VertexSet::singleton(b).compress(keep).first().unwrap(),
                )
            })
            .collect();
        let initial = VertexSet::singleton(self.initial)
            .compress(keep)
            .first()
            .unwrap();
        Ok(Self::assemble(
            vec!["1".to_string()],
            vertices,
            owner,
            initial,
            &edges,
        ))
    }

    /// Two-player zero-sum recast `G_p`: `p`'s vertices go to
    /// [`PROTAGONIST`], everything else to [`ANTAGONIST`].
    pub fn coalition_arena(&self, p: PlayerId) -> Result<Self> {
        self.check_player(p)?;
        let name = self.players[p].clone();
        let owner = self
            .owner
            .iter()
            .map(|&q| if q == p { PROTAGONIST } else { ANTAGONIST })
            .collect();
        let edges: Vec<_> = self.edges().collect();
        Ok(Self::assemble(
            vec![name.clone(), format!("-{name}")],
            self.vertices.clone(),
            owner,
            self.initial,
            &edges,
        ))
    }

    /// Vertices unreachable from the initial vertex.
    pub fn unreachable(&self) -> VertexSet {
        let reach = self.forward_closure(VertexSet::singleton(self.initial), self.all());
        self.all().difference(reach)
    }
}
