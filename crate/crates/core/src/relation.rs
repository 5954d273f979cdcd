//! Fixed-width bitset encoding of relations (unions of base relations).

use std::fmt;
use std::ops::{BitAnd, BitOr};

/// Maximum number of base relations an algebra may declare.
pub const MAX_BASE_RELATIONS: usize = 64;

/// Index of a base relation inside its algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseRelation(pub(crate) u8);

impl BaseRelation {
    pub fn new(id: usize) -> Self {
        assert!(id < MAX_BASE_RELATIONS, "base relation id out of range");
        Self(id as u8)
    }

    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// A set of base relations. The empty relation is unsatisfiable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Relation(u64);

impl Relation {
    pub const EMPTY: Relation = Relation(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(b: BaseRelation) -> Self {
        Self(1u64 << b.0)
    }

    /// The relation containing the first `n` base relations.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, b: BaseRelation) -> bool {
        self.0 & (1u64 << b.0) != 0
    }

    pub fn is_subset(self, other: Relation) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Relation) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Relation) -> Self {
        Self(self.0 & other.0)
    }

    /// The single member, if this relation is a singleton.
    pub fn as_base(self) -> Option<BaseRelation> {
        (self.0.count_ones() == 1).then(|| BaseRelation(self.0.trailing_zeros() as u8))
    }

    /// Members in ascending id order.
    pub fn iter(self) -> impl Iterator<Item = BaseRelation> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let id = rest.trailing_zeros();
            rest &= rest - 1;
            Some(BaseRelation(id as u8))
        })
    }
}

impl FromIterator<BaseRelation> for Relation {
    fn from_iter<I: IntoIterator<Item = BaseRelation>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Relation::EMPTY, |acc, b| acc | Relation::singleton(b))
    }
}

impl BitOr for Relation {
    type Output = Relation;

    fn bitor(self, rhs: Relation) -> Relation {
        self.union(rhs)
    }
}

impl BitAnd for Relation {
    type Output = Relation;

    fn bitand(self, rhs: Relation) -> Relation {
        self.intersection(rhs)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|b| b.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_semantics() {
        let r: Relation = [3, 1, 3].into_iter().map(BaseRelation::new).collect();
        assert_eq!(r.len(), 2);
        assert_eq!(r.iter().map(BaseRelation::id).collect::<Vec<_>>(), vec![1, 3]);
        assert!(Relation::singleton(BaseRelation::new(1)).is_subset(r));
        assert!(Relation::EMPTY.is_subset(r));
        assert_eq!(r.as_base(), None);
        assert_eq!(
            Relation::singleton(BaseRelation::new(5)).as_base(),
            Some(BaseRelation::new(5))
        );
    }

    #[test]
    fn full_relation() {
        assert_eq!(Relation::full(13).len(), 13);
        assert_eq!(Relation::full(64).len(), 64);
        assert_eq!(Relation::full(0), Relation::EMPTY);
    }
}
