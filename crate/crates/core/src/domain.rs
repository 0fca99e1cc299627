//! Finite integer domains, variable handles and full assignments.

use std::fmt;

/// Index of a variable inside a [`Model`](crate::Model).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A finite set of non-negative integer values, stored as a bitset.
///
/// Trailing zero words are always trimmed so that structural equality
/// coincides with set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DomainSet {
    words: Vec<u64>,
    len: usize,
}

impl DomainSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// All values in `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        let mut d = Self::empty();
        for v in lo..=hi {
            d.insert(v);
        }
        d
    }

    pub fn singleton(v: usize) -> Self {
        let mut d = Self::empty();
        d.insert(v);
        d
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1u64 << (v % 64)) != 0)
    }

    /// Adds `v`, returning whether it was absent.
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1u64 << b) == 0;
        if fresh {
            self.words[w] |= 1u64 << b;
            self.len += 1;
        }
        fresh
    }

    /// Removes `v`, returning whether it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let present = self.contains(v);
        if present {
            self.words[w] &= !(1u64 << b);
            self.len -= 1;
            self.trim();
        }
        present
    }

    /// Keeps only the values accepted by `keep`; returns whether anything was removed.
    pub fn retain(&mut self, mut keep: impl FnMut(usize) -> bool) -> bool {
        let doomed: Vec<usize> = self.iter().filter(|&v| !keep(v)).collect();
        for &v in &doomed {
            self.remove(v);
        }
        !doomed.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn max(&self) -> Option<usize> {
        // trimmed, so the last word is non-zero whenever the set is non-empty
        self.words
            .last()
            .map(|w| (self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    /// The single member of a singleton set.
    pub fn value(&self) -> Option<usize> {
        if self.len == 1 {
            self.min()
        } else {
            None
        }
    }

    pub fn is_subset(&self, other: &DomainSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for DomainSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut d = Self::empty();
        for v in iter {
            d.insert(v);
        }
        d
    }
}

impl fmt::Debug for DomainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Removes `v` from `domain`. Returns the resulting set and whether it changed;
/// an empty result is reported as `Err` and never handed back as a live domain.
pub fn remove_value(
    domain: &DomainSet,
    v: usize,
) -> Result<(DomainSet, bool), crate::Inconsistency> {
    let mut out = domain.clone();
    let changed = out.remove(v);
    if out.is_empty() {
        Err(crate::Inconsistency)
    } else {
        Ok((out, changed))
    }
}

/// A total assignment of values to the variables of a model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    pub values: Vec<usize>,
}

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Self { values }
    }

    pub fn get(&self, var: VarId) -> usize {
        self.values[var.0]
    }

    /// Values of `scope`, in scope order.
    pub fn project(&self, scope: &[VarId]) -> Vec<usize> {
        scope.iter().map(|&v| self.values[v.0]).collect()
    }
}
