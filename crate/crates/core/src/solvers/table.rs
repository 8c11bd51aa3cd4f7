//! Bounded failure memo shared by both searches.
//!
//! An entry `state -> t` records that no completion of `state` exists using
//! `t` further moves, hence none with fewer. Entries are independent of the
//! path and of the overall target, so they stay valid across iterative
//! deepening. Evicting one only forgets a refutation.

use lru::LruCache;
use rustc_hash::FxBuildHasher;

use crate::bitset::VertexSet;

pub(crate) struct FailureTable {
    // grows on demand; a bounded LruCache would allocate `capacity` slots
    // up front on every solve
    cache: LruCache<VertexSet, usize, FxBuildHasher>,
    capacity: usize,
}

impl FailureTable {
    pub fn new(capacity: usize) -> Self {
        FailureTable {
            cache: LruCache::unbounded_with_hasher(FxBuildHasher),
            capacity: capacity.max(1),
        }
    }

    /// Whether `state` is already refuted with at least `budget` moves.
    pub fn refuted(&mut self, state: VertexSet, budget: usize) -> bool {
        matches!(self.cache.get(&state), Some(&t) if t >= budget)
    }

    pub fn record(&mut self, state: VertexSet, budget: usize) {
        match self.cache.get_mut(&state) {
            Some(t) => *t = (*t).max(budget),
            None => {
                if self.cache.len() >= self.capacity {
                    self.cache.pop_lru();
                }
                self.cache.put(state, budget);
            }
        }
    }
}
