//! Squarefree vertex sets over a dense universe of at most 64 ids.

use std::fmt;

/// Maximum number of interned vertices a [`VertexSet`] can address.
pub const MAX_UNIVERSE: usize = 64;

/// A set of vertex ids stored as a single machine word.
///
/// Iteration is always in increasing id order. The same type doubles as the
/// support of a squarefree monomial, so `union` is lcm and `is_subset` is
/// divisibility.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Panics if an id is `>= 64`; callers validate against the universe first.
    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut bits = 0u64;
        for id in ids {
            assert!(id < MAX_UNIVERSE, "vertex id {id} out of range");
            bits |= 1 << id;
        }
        VertexSet(bits)
    }

    /// `{lo, lo+1, ..., hi-1}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::from_ids(lo..hi)
    }

    pub fn singleton(id: usize) -> Self {
        Self::from_ids([id])
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, id: usize) -> bool {
        id < 64 && self.0 >> id & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < MAX_UNIVERSE);
        self.0 |= 1 << id;
    }

    pub fn remove(&mut self, id: usize) {
        if id < MAX_UNIVERSE {
            self.0 &= !(1 << id);
        }
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest id plus one, or 0 for the empty set.
    pub const fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { full: self.0, cur: 0, done: false }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_ids(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Gosper-free subset walk: `cur = (cur - full) & full` visits every subset once.
pub struct Subsets {
    full: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = VertexSet(self.cur);
        self.cur = self.cur.wrapping_sub(self.full) & self.full;
        if self.cur == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// Drops every set that strictly contains another one and removes duplicates.
/// Output is sorted by (size, bits) so equal inputs give equal outputs.
pub fn minimalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Drops every set strictly contained in another one and removes duplicates.
pub fn maximalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.bits()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let s = VertexSet::from_ids([1, 4, 7]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.contains(&VertexSet::EMPTY));
        assert!(all.contains(&s));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn minimalize_keeps_antichain() {
        let a = VertexSet::from_ids([0, 1]);
        let b = VertexSet::from_ids([1]);
        let c = VertexSet::from_ids([2, 3]);
        assert_eq!(minimalize(vec![a, b, c, c]), vec![b, c]);
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::range(0, 4);
        let b = VertexSet::range(2, 6);
        assert_eq!(a.intersection(b), VertexSet::from_ids([2, 3]));
        assert_eq!(a.difference(b), VertexSet::from_ids([0, 1]));
        assert_eq!(a.union(b).len(), 6);
        assert_eq!(b.span(), 6);
        assert_eq!(format!("{}", VertexSet::from_ids([3, 1])), "{1,3}");
    }
}
