//! Explicit Muller objectives.
//!
//! Every objective class handled by this crate (Büchi, co-Büchi, parity,
//! Rabin, Streett, Muller) is stored as the family of Inf-sets it accepts.
//! The empty set is never a member: no play over a finite nonblocking graph
//! has an empty Inf-set, so keeping it out makes complement well-defined and
//! equality structural.

use std::fmt;

use crate::arena::{GameArena, PlayerId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A family `F` of nonempty vertex sets; a play wins iff `Inf(play) ∈ F`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MullerObjective {
    width: usize,
    // bit `m` is set iff the vertex set with bit vector `m` is a member
    words: Vec<u64>,
}

impl fmt::Debug for MullerObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MullerObjective")
            .field("width", &self.width)
            .field("family", &self.members().collect::<Vec<_>>())
            .finish()
    }
}

impl MullerObjective {
    /// The objective accepting no play.
    pub fn empty(width: usize) -> Self {
        assert!(
            width <= MAX_VERTICES,
            "width {width} exceeds {MAX_VERTICES}"
        );
        let words = (1usize << width).div_ceil(64);
        MullerObjective {
            width,
            words: vec![0; words],
        }
    }

    /// The objective accepting every play (all nonempty subsets).
    pub fn full(width: usize) -> Self {
        Self::from_predicate(width, |_| true)
    }

    /// Family of all nonempty `I ⊆ V` satisfying `pred`.
    pub fn from_predicate(width: usize, mut pred: impl FnMut(VertexSet) -> bool) -> Self {
        let mut obj = Self::empty(width);
        for m in 1..(1u32 << width) {
            if pred(VertexSet::from_bits(m)) {
                obj.set(m);
            }
        }
        obj
    }

    /// `Büchi(U)`: some vertex of `U` is visited infinitely often.
    pub fn from_buchi(arena: &GameArena, accept: VertexSet) -> Result<Self> {
        check_within(arena, accept)?;
        Ok(Self::from_predicate(arena.num_vertices(), |i| {
            i.intersects(accept)
        }))
    }

    /// `Co-Büchi(U)`: vertices of `U` are visited only finitely often.
    pub fn from_cobuchi(arena: &GameArena, avoid: VertexSet) -> Result<Self> {
        check_within(arena, avoid)?;
        Ok(Self::from_predicate(arena.num_vertices(), |i| {
            !i.intersects(avoid)
        }))
    }

    /// Parity over Inf-sets: the largest color seen infinitely often is
    /// even.
    pub fn from_parity(arena: &GameArena, colors: &[u32]) -> Result<Self> {
        if colors.len() != arena.num_vertices() {
            return Err(Error::WidthMismatch {
                expected: arena.num_vertices(),
                found: colors.len(),
            });
        }
        Ok(Self::from_predicate(arena.num_vertices(), |i| {
            i.iter()
                .map(|v| colors[v])
                .max()
                .is_some_and(|c| c % 2 == 0)
        }))
    }

    /// Rabin: for some pair `(F, G)`, `Inf ∩ F = ∅` and `Inf ∩ G ≠ ∅`.
    pub fn from_rabin(arena: &GameArena, pairs: &[(VertexSet, VertexSet)]) -> Result<Self> {
        for &(f, g) in pairs {
            check_within(arena, f)?;
            check_within(arena, g)?;
        }
        Ok(Self::from_predicate(arena.num_vertices(), |i| {
            pairs
                .iter()
                .any(|&(f, g)| !i.intersects(f) && i.intersects(g))
        }))
    }

    /// Streett: for every pair `(F, G)`, `Inf ∩ F ≠ ∅` or `Inf ∩ G = ∅`.
    pub fn from_streett(arena: &GameArena, pairs: &[(VertexSet, VertexSet)]) -> Result<Self> {
        for &(f, g) in pairs {
            check_within(arena, f)?;
            check_within(arena, g)?;
        }
        Ok(Self::from_predicate(arena.num_vertices(), |i| {
            pairs
                .iter()
                .all(|&(f, g)| i.intersects(f) || !i.intersects(g))
        }))
    }

    /// Explicit family. Empty members are dropped, duplicates collapse.
    pub fn from_family(arena: &GameArena, family: &[VertexSet]) -> Result<Self> {
        let mut obj = Self::empty(arena.num_vertices());
        for &s in family {
            check_within(arena, s)?;
            if !s.is_empty() {
                obj.set(s.bits());
            }
        }
        Ok(obj)
    }

    /// Explicit family over a bare width, for callers without an arena.
    pub fn from_sets(width: usize, family: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut obj = Self::empty(width);
        let all = VertexSet::full(width);
        for s in family {
            if !s.is_subset(all) {
                return Err(Error::VertexOutOfRange(
                    s.difference(all).first().unwrap_or(0),
                ));
            }
            if !s.is_empty() {
                obj.set(s.bits());
            }
        }
        Ok(obj)
    }

    fn set(&mut self, m: u32) {
        self.words[(m / 64) as usize] |= 1 << (m % 64);
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains_set(&self, s: VertexSet) -> bool {
        let m = s.bits();
        if m == 0 || (m >> self.width) != 0 {
            return false;
        }
        self.words[(m / 64) as usize] & (1 << (m % 64)) != 0
    }

    /// Members in canonical (ascending bit-vector) order.
    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(VertexSet::from_bits(w as u32 * 64 + b))
            })
        })
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Syntactic emptiness of the family.
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            })
        } else {
            Ok(())
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a & b))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a | b))
    }

    /// Complement within the nonempty subsets of `V`.
    pub fn complement(&self) -> Self {
        let full = Self::full(self.width);
        self.zip_with(&full, |a, f| !a & f)
    }

    /// `(self ∩ other) ∪ (¬self ∩ ¬other)`: plays on which both agree.
    pub fn agree(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let full = Self::full(self.width);
        Ok(MullerObjective {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .zip(&full.words)
                .map(|((a, b), f)| !(a ^ b) & f)
                .collect(),
        })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        MullerObjective {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Whether the lasso's play is accepted.
    pub fn contains_play(&self, lasso: &Lasso) -> Result<bool> {
        let inf = lasso.inf_set();
        if !inf.is_subset(VertexSet::full(self.width)) {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: inf.iter().max().map_or(0, |v| v + 1),
            });
        }
        Ok(self.contains_set(inf))
    }

    /// No play of `arena` is accepted.
    pub fn is_empty_on(&self, arena: &GameArena) -> Result<bool> {
        self.check_arena(arena)?;
        Ok(!self.members().any(|i| arena.is_feasible_inf_set(i)))
    }

    /// The two objectives accept exactly the same plays of `arena`.
    pub fn arena_equivalent(&self, other: &Self, arena: &GameArena) -> Result<bool> {
        self.check_arena(arena)?;
        self.check_same(other)?;
        Ok(arena
            .feasible_inf_sets(arena.all())?
            .into_iter()
            .all(|i| self.contains_set(i) == other.contains_set(i)))
    }

    /// `|V| · |F|`.
    pub fn description_length(&self) -> usize {
        self.width * self.len()
    }

    /// Projection onto the subgame induced by `keep` (renumbered densely).
    pub fn restrict(&self, keep: VertexSet) -> Self {
        let mut out = Self::empty(keep.len());
        for s in keep.subsets() {
            if self.contains_set(s) {
                out.set(s.compress(keep).bits());
            }
        }
        out
    }

    pub fn check_arena(&self, arena: &GameArena) -> Result<()> {
        if self.width != arena.num_vertices() {
            Err(Error::WidthMismatch {
                expected: arena.num_vertices(),
                found: self.width,
            })
        } else {
            Ok(())
        }
    }
}

fn check_within(arena: &GameArena, s: VertexSet) -> Result<()> {
    let extra = s.difference(arena.all());
    match extra.first() {
        Some(v) => Err(Error::VertexOutOfRange(v)),
        None => Ok(()),
    }
}

/// One objective per player, indexed by player id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveProfile(Vec<MullerObjective>);

impl ObjectiveProfile {
    pub fn new(arena: &GameArena, objectives: Vec<MullerObjective>) -> Result<Self> {
        if objectives.len() != arena.num_players() {
            return Err(Error::ProfileArity {
                expected: arena.num_players(),
                found: objectives.len(),
            });
        }
        for o in &objectives {
            o.check_arena(arena)?;
        }
        Ok(ObjectiveProfile(objectives))
    }

    pub fn get(&self, p: PlayerId) -> &MullerObjective {
        &self.0[p]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MullerObjective> {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn fam(o: &MullerObjective) -> Vec<VertexSet> {
        o.members().collect()
    }

    #[test]
    fn buchi_families() {
        let a = fixtures::fig1();
        let b = MullerObjective::from_buchi(&a, set(&[1])).unwrap();
        assert_eq!(
            fam(&b),
            vec![set(&[1]), set(&[0, 1]), set(&[1, 2]), set(&[0, 1, 2])]
        );
        assert!(MullerObjective::from_buchi(&a, VertexSet::EMPTY)
            .unwrap()
            .is_empty());
        assert!(MullerObjective::from_buchi(&a, a.all()).unwrap().is_full());
        assert_eq!(
            MullerObjective::from_buchi(&a, set(&[3])),
            Err(Error::VertexOutOfRange(3))
        );
    }

    #[test]
    fn parity_over_inf_sets() {
        // colors 1,2,1: exactly the sets containing v1 have an even maximum
        let a = fixtures::fig1();
        let p = MullerObjective::from_parity(&a, &[1, 2, 1]).unwrap();
        assert_eq!(p, MullerObjective::from_buchi(&a, set(&[1])).unwrap());
    }

    #[test]
    fn rabin_single_pair_is_buchi() {
        let a = fixtures::fig1();
        let r = MullerObjective::from_rabin(&a, &[(VertexSet::EMPTY, set(&[1]))]).unwrap();
        assert_eq!(r, MullerObjective::from_buchi(&a, set(&[1])).unwrap());
        let s = MullerObjective::from_streett(&a, &[(VertexSet::EMPTY, set(&[1]))]).unwrap();
        assert_eq!(s, r.complement());
        assert_eq!(s, MullerObjective::from_cobuchi(&a, set(&[1])).unwrap());
    }

    #[test]
    fn boolean_laws_on_small_universe() {
        let two = MullerObjective::from_sets(2, [set(&[0])]).unwrap();
        assert_eq!(fam(&two.complement()), vec![set(&[1]), set(&[0, 1])]);
        assert!(two.intersect(&two.complement()).unwrap().is_empty());
        assert!(two.union(&two.complement()).unwrap().is_full());
        let three = MullerObjective::empty(3);
        assert!(two.union(&three).is_err());
    }

    #[test]
    fn contains_play_examples() {
        let a = fixtures::fig1();
        let v1 = MullerObjective::from_buchi(&a, set(&[1])).unwrap();
        let none = MullerObjective::empty(3);
        let rho = Lasso::new(vec![0], vec![1]).unwrap();
        assert!(v1.contains_play(&rho).unwrap());
        assert!(!none.contains_play(&rho).unwrap());
        let b = fixtures::fig2();
        let v0 = MullerObjective::from_buchi(&b, set(&[0])).unwrap();
        assert!(v0
            .contains_play(&Lasso::new(vec![], vec![0, 1, 2]).unwrap())
            .unwrap());
    }

    #[test]
    fn emptiness_and_equivalence_on_fig1() {
        let a = fixtures::fig1();
        let b = |vs: &[usize]| MullerObjective::from_buchi(&a, set(vs)).unwrap();
        assert!(b(&[0]).is_empty_on(&a).unwrap());
        assert!(b(&[]).is_empty_on(&a).unwrap());
        assert!(!b(&[1]).is_empty_on(&a).unwrap());
        assert!(b(&[]).arena_equivalent(&b(&[0]), &a).unwrap());
        assert!(b(&[2]).arena_equivalent(&b(&[0, 2]), &a).unwrap());
        assert!(!b(&[1]).arena_equivalent(&b(&[2]), &a).unwrap());
    }

    #[test]
    fn description_lengths() {
        let a = fixtures::fig1();
        let v1 = MullerObjective::from_buchi(&a, set(&[1])).unwrap();
        assert_eq!(v1.description_length(), 12);
        assert_eq!(MullerObjective::empty(3).description_length(), 0);
        assert_eq!(MullerObjective::full(3).description_length(), 21);
    }

    #[test]
    fn restrict_to_subgame() {
        let o = MullerObjective::from_sets(3, [set(&[0, 2]), set(&[1])]).unwrap();
        let r = o.restrict(set(&[0, 2]));
        assert_eq!(fam(&r), vec![set(&[0, 1])]);
    }

    #[test]
    fn agree_is_xnor() {
        let a = MullerObjective::from_sets(2, [set(&[0])]).unwrap();
        let b = MullerObjective::from_sets(2, [set(&[0]), set(&[1])]).unwrap();
        let expect = a
            .intersect(&b)
            .unwrap()
            .union(&a.complement().intersect(&b.complement()).unwrap())
            .unwrap();
        assert_eq!(a.agree(&b).unwrap(), expect);
    }
}
