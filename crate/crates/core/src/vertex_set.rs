//! Fixed-width vertex sets.
//!
//! Bit `i` of a [`VertexSet`] stands for the vertex with dense index `i` in
//! the ambient arena. The numeric value of the bit vector doubles as the
//! canonical ordering used everywhere families of sets are listed.

use std::fmt;

/// Largest number of vertices an arena may have.
///
/// Objectives are explicit families over `2^|V|` sets, so this is a hard
/// ceiling rather than a tuning knob.
pub const MAX_VERTICES: usize = 16;

/// Dense index of a vertex in declaration order.
pub type VertexId = usize;

/// A subset of the vertices of an arena, stored as a bit vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The set `{0, .., width-1}`.
    pub fn full(width: usize) -> Self {
        debug_assert!(width <= MAX_VERTICES);
        if width == 0 {
            VertexSet(0)
        } else {
            VertexSet(u32::MAX >> (32 - width))
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: VertexId) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: VertexId) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<VertexId> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self` (including the empty set and `self`) in
    /// ascending bit-vector order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Packs the members of `self` that lie in `keep` into the dense index
    /// space of `keep` (the `k`-th smallest member of `keep` becomes bit `k`).
    pub fn compress(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u32;
        for (k, v) in keep.iter().enumerate() {
            if self.contains(v) {
                out |= 1 << k;
            }
        }
        VertexSet(out)
    }

    /// Inverse of [`VertexSet::compress`].
    pub fn expand(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u32;
        for (k, v) in keep.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << v;
            }
        }
        VertexSet(out)
    }

    /// The `k`-th smallest member.
    pub fn nth(self, k: usize) -> Option<VertexId> {
        self.iter().nth(k)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Iterator over the members of a [`VertexSet`] in ascending order.
#[derive(Clone)]
pub struct Iter(u32);

impl Iterator for Iter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Iterator over all submasks of a mask, ascending.
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        // standard "next submask in increasing order" step
        self.next = if cur == self.mask {
            None
        } else {
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_ascending_and_complete() {
        let mask = VertexSet::from_bits(0b1011);
        let subs: Vec<u32> = mask.subsets().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_roundtrip() {
        let keep = VertexSet::from_iter([1, 3, 4]);
        let s = VertexSet::from_iter([1, 4]);
        let c = s.compress(keep);
        assert_eq!(c, VertexSet::from_iter([0, 2]));
        assert_eq!(c.expand(keep), s);
        assert_eq!(keep.nth(1), Some(3));
    }

    #[test]
    fn full_width() {
        assert_eq!(VertexSet::full(0), VertexSet::EMPTY);
        assert_eq!(VertexSet::full(3).bits(), 0b111);
        assert_eq!(VertexSet::full(16).len(), 16);
    }
}
