use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// A set of variable indices (at most 64 variables per model).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn singleton(v: usize) -> Self {
        VarSet(1 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VarSet::EMPTY, |s, v| s.with(v))
    }

    /// `{0, 1, ..., n-1}`.
    pub fn first(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn with(self, v: usize) -> Self {
        VarSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VarSet(self.0 & !(1 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |v| bits & (1 << v) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, in increasing bit-pattern order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let members = self.to_vec();
        let n = members.len();
        (0u64..(1u64 << n))
            .map(move |mask| VarSet::from_indices((0..n).filter(|i| mask & (1 << i) != 0).map(|i| members[i])))
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VarSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VarSet::from_indices([0, 2, 5]);
        let b = VarSet::from_indices([2, 3]);
        assert_eq!(a.union(b).to_vec(), [0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), [2]);
        assert_eq!(a.difference(b).to_vec(), [0, 5]);
        assert!(!a.is_disjoint(b));
        assert!(VarSet::singleton(2).is_subset(a));
        assert_eq!(a.subsets().count(), 8);
        assert_eq!(VarSet::first(3).to_vec(), [0, 1, 2]);
    }
}
