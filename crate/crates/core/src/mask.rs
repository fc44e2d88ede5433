//! Subsets of a carrier of at most 64 points, one bit per point.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Serialize};

/// Largest carrier a [`Mask`] can address.
pub const MAX_CARRIER: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mask(pub u64);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// All points of a carrier with `n` points.
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= MAX_CARRIER);
        if n >= 64 {
            Mask(u64::MAX)
        } else {
            Mask((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Mask {
        debug_assert!(i < MAX_CARRIER);
        Mask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Mask {
        it.into_iter().fold(Mask::EMPTY, |m, i| m | Mask::singleton(i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to a carrier of `n` points.
    #[inline]
    pub fn complement(self, n: usize) -> Mask {
        Mask(!self.0 & Mask::full(n).0)
    }

    /// True when no bit at or beyond `n` is set.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Mask::full(n))
    }

    pub fn iter(self) -> Ones {
        Ones(self.0)
    }

    pub fn to_indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lowest set index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Every submask of `self`, including the empty mask and `self`.
    pub fn submasks(self) -> Submasks {
        Submasks { of: self.0, next: Some(0) }
    }
}

impl BitOr for Mask {
    type Output = Mask;
    fn bitor(self, rhs: Mask) -> Mask {
        Mask(self.0 | rhs.0)
    }
}

impl BitAnd for Mask {
    type Output = Mask;
    fn bitand(self, rhs: Mask) -> Mask {
        Mask(self.0 & rhs.0)
    }
}

impl Sub for Mask {
    type Output = Mask;
    fn sub(self, rhs: Mask) -> Mask {
        Mask(self.0 & !rhs.0)
    }
}

impl std::ops::BitOrAssign for Mask {
    fn bitor_assign(&mut self, rhs: Mask) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAndAssign for Mask {
    fn bitand_assign(&mut self, rhs: Mask) {
        self.0 &= rhs.0;
    }
}

impl FromIterator<usize> for Mask {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Mask {
        Mask::from_indices(it)
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Set bits of a mask, ascending.
pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ones {}

/// Submask enumeration in increasing numeric order.
pub struct Submasks {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let cur = self.next?;
        self.next = if cur == self.of {
            None
        } else {
            // next submask above `cur`
            Some((cur | !self.of).wrapping_add(1) & self.of)
        };
        Some(Mask(cur))
    }
}
