//! Fixed-universe bit sets over ring element indices.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., universe-1}` stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { words: vec![0; universe.div_ceil(WORD_BITS)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD_BITS;
            let n = (universe - lo).min(WORD_BITS);
            *w = if n == WORD_BITS { !0 } else { (1u64 << n) - 1 };
        }
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Builds a set from the low `universe` bits of `mask`. Only for universes of at most 64.
    pub fn from_u64(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD_BITS);
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD_BITS { !0 } else { (1u64 << universe) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.universe && (self.words[e / WORD_BITS] >> (e % WORD_BITS)) & 1 == 1
    }

    /// Inserts `e`, returning `true` if it was absent.
    #[inline]
    pub fn insert(&mut self, e: usize) -> bool {
        assert!(e < self.universe, "element {e} outside universe {}", self.universe);
        let w = &mut self.words[e / WORD_BITS];
        let bit = 1u64 << (e % WORD_BITS);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(), universe: self.universe }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * WORD_BITS + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: cardinality first, then the mask read as a big unsigned integer.
    pub fn canonical_cmp(&self, other: &ElementSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        for n in [0, 1, 63, 64, 65, 130] {
            assert_eq!(ElementSet::full(n).len(), n);
            assert!(ElementSet::empty(n).is_empty());
            assert!(ElementSet::empty(n).is_subset(&ElementSet::full(n)));
        }
    }

    #[test]
    fn canonical_order_is_popcount_then_value() {
        let a = ElementSet::from_elements(70, [0, 65]);
        let b = ElementSet::from_elements(70, [0, 1, 2]);
        let c = ElementSet::from_elements(70, [0, 3]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
    }

    proptest! {
        #[test]
        fn iter_round_trips(elems in proptest::collection::btree_set(0usize..200, 0..40)) {
            let s = ElementSet::from_elements(200, elems.iter().copied());
            prop_assert_eq!(s.to_vec(), elems.into_iter().collect::<Vec<_>>());
        }

        #[test]
        fn subset_matches_intersection(x in any::<u64>(), y in any::<u64>()) {
            let a = ElementSet::from_u64(64, x);
            let b = ElementSet::from_u64(64, y);
            prop_assert_eq!(a.is_subset(&b), a.intersection(&b) == a);
        }
    }
}
