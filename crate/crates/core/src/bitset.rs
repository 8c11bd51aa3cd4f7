//! Fixed-width vertex sets.
//!
//! Every search in this crate manipulates sets of at most [`VertexSet::CAPACITY`]
//! vertices, so a single `u128` word is enough and keeps states `Copy` and
//! cheap to hash.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

/// The set of vertices on fire at the end of a round (or after a lazy
/// propagation step).
pub type FireState = VertexSet;

impl VertexSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "vertex set capacity exceeded");
        if n == Self::CAPACITY {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < Self::CAPACITY && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < Self::CAPACITY, "vertex {v} exceeds set capacity");
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < Self::CAPACITY {
            self.0 &= !(1u128 << v);
        }
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
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

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: VertexSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: VertexSet) {
        self.0 &= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iter() {
        assert_eq!(VertexSet::full(0), VertexSet::empty());
        assert_eq!(VertexSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(VertexSet::full(128).len(), 128);
        let s: VertexSet = [3usize, 127, 64].into_iter().collect();
        assert_eq!(s.to_vec(), vec![3, 64, 127]);
        assert_eq!(s.first(), Some(3));
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = [1usize, 2, 3].into_iter().collect();
        let b: VertexSet = [2usize, 3, 4].into_iter().collect();
        assert_eq!((a & b).to_vec(), vec![2, 3]);
        assert_eq!((a | b).len(), 4);
        assert_eq!((a - b).to_vec(), vec![1]);
        assert!((a & b).is_subset(a));
        assert!(!a.is_subset(b));
    }
}
