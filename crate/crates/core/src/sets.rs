//! Dense sets of nodes and outcomes.
//!
//! Both set types are bitsets over a fixed universe: [`NodeSet`] is indexed by
//! [`NodeId`], [`OutcomeSet`] by the left-to-right outcome index (`w1` is index
//! 0). Union, intersection and complement are linear in the universe size.

use std::fmt;

use crate::game::NodeId;

const WORD: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
struct BitSet {
    words: Vec<u64>,
    universe: usize,
}

impl BitSet {
    fn empty(universe: usize) -> Self {
        BitSet { words: vec![0; universe.div_ceil(WORD)], universe }
    }

    fn full(universe: usize) -> Self {
        let mut set = BitSet { words: vec![u64::MAX; universe.div_ceil(WORD)], universe };
        set.trim();
        set
    }

    // Clear the bits above `universe` in the last word.
    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    #[inline]
    fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "index {i} outside universe of size {}", self.universe);
        let word = &mut self.words[i / WORD];
        let mask = 1 << (i % WORD);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    #[inline]
    fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let word = &mut self.words[i / WORD];
        let mask = 1 << (i % WORD);
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_universe(&self, other: &BitSet) {
        assert_eq!(self.universe, other.universe, "set operation across different universes");
    }

    fn union_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
    }

    fn intersect_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    fn difference_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    fn complement(&self) -> BitSet {
        let mut out = BitSet { words: self.words.iter().map(|w| !w).collect(), universe: self.universe };
        out.trim();
        out
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }
}

macro_rules! set_ops {
    ($ty:ident, $elem:ty, $to:expr, $from:expr) => {
        impl $ty {
            /// The empty set over a universe of `universe` elements.
            pub fn empty(universe: usize) -> Self {
                $ty(BitSet::empty(universe))
            }

            /// The set containing every element of the universe.
            pub fn full(universe: usize) -> Self {
                $ty(BitSet::full(universe))
            }

            pub fn universe(&self) -> usize {
                self.0.universe
            }

            pub fn contains(&self, e: $elem) -> bool {
                self.0.contains($to(e))
            }

            /// Inserts `e`; returns `true` if it was not already present.
            ///
            /// Panics if `e` lies outside the universe.
            pub fn insert(&mut self, e: $elem) -> bool {
                self.0.insert($to(e))
            }

            pub fn remove(&mut self, e: $elem) -> bool {
                self.0.remove($to(e))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_full(&self) -> bool {
                self.len() == self.universe()
            }

            pub fn union(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.union_with(&other.0);
                out
            }

            pub fn intersection(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.intersect_with(&other.0);
                out
            }

            pub fn difference(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.difference_with(&other.0);
                out
            }

            pub fn union_with(&mut self, other: &Self) {
                self.0.union_with(&other.0);
            }

            pub fn intersect_with(&mut self, other: &Self) {
                self.0.intersect_with(&other.0);
            }

            pub fn difference_with(&mut self, other: &Self) {
                self.0.difference_with(&other.0);
            }

            /// Complement relative to the universe.
            pub fn complement(&self) -> Self {
                $ty(self.0.complement())
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.is_subset(&other.0)
            }

            pub fn is_proper_subset(&self, other: &Self) -> bool {
                self.is_subset(other) && self.len() < other.len()
            }

            /// Members in ascending order.
            pub fn iter(&self) -> impl Iterator<Item = $elem> + '_ {
                self.0.iter().map($from)
            }

            pub fn from_iter_in(universe: usize, items: impl IntoIterator<Item = $elem>) -> Self {
                let mut set = Self::empty(universe);
                for e in items {
                    set.insert(e);
                }
                set
            }
        }
    };
}

/// A set of nodes of one game.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet(BitSet);

set_ops!(NodeSet, NodeId, |n: NodeId| n.index(), NodeId::new);

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|n| n.index())).finish()
    }
}

/// A set of outcomes of one game, indexed by outcome position.
///
/// Index `i` denotes outcome `w{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSet(BitSet);

set_ops!(OutcomeSet, usize, |i: usize| i, |i: usize| i);

impl OutcomeSet {
    /// Builds a set from 1-based outcome numbers, so `[1, 3]` is `{w1, w3}`.
    pub fn from_numbers(universe: usize, numbers: &[usize]) -> Self {
        Self::from_iter_in(
            universe,
            numbers.iter().map(|&k| {
                assert!(k >= 1, "outcome numbers start at 1");
                k - 1
            }),
        )
    }

    /// Sorted outcome names (`w1`, `w2`, ...).
    pub fn names(&self) -> Vec<String> {
        self.iter().map(outcome_name).collect()
    }
}

/// Canonical name of the outcome at `index`.
pub fn outcome_name(index: usize) -> String {
    format!("w{}", index + 1)
}

impl fmt::Display for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "w{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
