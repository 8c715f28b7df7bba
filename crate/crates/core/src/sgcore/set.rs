use std::fmt;

use serde::{Serialize, Serializer};

/// Index of an element inside a [`CayleyTable`](super::CayleyTable).
///
/// Identity is positional; labels are display-only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(usize);

impl Element {
    #[inline]
    pub const fn new(index: usize) -> Self {
        Element(index)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Element {
    fn from(index: usize) -> Self {
        Element(index)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const WORD: usize = 64;

/// A subset of `[0, universe)` stored as a dense bitset.
///
/// Orders up to 64 fit in a single word; larger universes spill into more words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(WORD).max(1)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.words[i / WORD] |= 1 << (i % WORD);
        }
        set
    }

    pub fn singleton(universe: usize, x: Element) -> Self {
        let mut set = Self::empty(universe);
        set.insert(x);
        set
    }

    pub fn from_elements<I>(universe: usize, elements: I) -> Self
    where
        I: IntoIterator<Item = Element>,
    {
        let mut set = Self::empty(universe);
        for x in elements {
            set.insert(x);
        }
        set
    }

    pub fn from_indices<I>(universe: usize, indices: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        Self::from_elements(universe, indices.into_iter().map(Element::new))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `x`, returning whether it was newly added.
    ///
    /// Panics if `x` lies outside the universe.
    pub fn insert(&mut self, x: Element) -> bool {
        let i = x.index();
        assert!(
            i < self.universe,
            "element {i} outside universe of order {}",
            self.universe
        );
        let mask = 1u64 << (i % WORD);
        let word = &mut self.words[i / WORD];
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn remove(&mut self, x: Element) -> bool {
        let i = x.index();
        if i >= self.universe {
            return false;
        }
        let mask = 1u64 << (i % WORD);
        let word = &mut self.words[i / WORD];
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        let i = x.index();
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    fn check_universe(&self, other: &ElementSet) {
        assert_eq!(
            self.universe, other.universe,
            "set operation over different universes"
        );
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.check_universe(other);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.check_universe(other);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.check_universe(other);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(Element::index))
            .finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(Element(self.word_index * WORD + bit));
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}
