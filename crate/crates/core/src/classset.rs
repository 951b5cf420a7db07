use alloc::vec::Vec;
use core::fmt;

/// Most indecomposables a [`ClassSet`] can index.
pub const MAX_INDECS: usize = 64;

/// A set of indecomposable indices; stands for its additive closure.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClassSet(u64);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);

    /// Every index below `n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_INDECS);
        if n == 64 {
            ClassSet(u64::MAX)
        } else {
            ClassSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ClassSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        ClassSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(ClassSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ClassSet(self.0 | 1 << i)
    }

    pub fn union(self, other: ClassSet) -> Self {
        ClassSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ClassSet) -> Self {
        ClassSet(self.0 & other.0)
    }

    pub fn difference(self, other: ClassSet) -> Self {
        ClassSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ClassSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ClassSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
