//! Fixed-length bitsets. Used both for sets of truth assignments
//! (valuations) and for events over a finite state space.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

/// Set of valuations of the declared atoms; bit `i` is valuation `i`.
pub type ValuationSet = BitSet;

/// Subset of a finite state space; bit `i` is state `i`.
pub type Event = BitSet;

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low `len` bits of `mask` (`len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask form only supports up to 64 elements");
        let mut set = Self::empty(len);
        if len > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Low word, for sets of at most 64 elements.
    pub fn as_mask(&self) -> u64 {
        assert!(self.len <= 64, "mask form only supports up to 64 elements");
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = BitSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        self.check_len(other);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    fn check_len(&self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "bitsets over different universes ({} vs {})",
            self.len, other.len
        );
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Partitions `0..len` into the atoms of the field generated by `generators`:
/// two elements share an atom iff every generator contains both or neither.
/// Atoms come back ordered by their smallest element.
pub fn field_atoms(len: usize, generators: &[BitSet]) -> Vec<BitSet> {
    let mut atoms: Vec<BitSet> = Vec::new();
    let mut signature_of: std::collections::HashMap<Vec<bool>, usize> =
        std::collections::HashMap::new();
    for i in 0..len {
        let sig: Vec<bool> = generators.iter().map(|g| g.contains(i)).collect();
        match signature_of.get(&sig) {
            Some(&a) => atoms[a].insert(i),
            None => {
                signature_of.insert(sig, atoms.len());
                atoms.push(BitSet::from_indices(len, [i]));
            }
        }
    }
    atoms
}

/// Union of the atoms selected by the bits of `mask`.
pub fn union_of_atoms(len: usize, atoms: &[BitSet], mask: u64) -> BitSet {
    let mut out = BitSet::empty(len);
    for (j, atom) in atoms.iter().enumerate() {
        if mask & (1 << j) != 0 {
            out = out.union(atom);
        }
    }
    out
}

/// Expresses `event` as a union of `atoms`; `None` if some atom is split.
pub fn atom_mask(event: &BitSet, atoms: &[BitSet]) -> Option<u64> {
    let mut mask = 0u64;
    for (j, atom) in atoms.iter().enumerate() {
        if atom.is_subset(event) {
            mask |= 1 << j;
        } else if atom.intersects(event) {
            return None;
        }
    }
    Some(mask)
}
