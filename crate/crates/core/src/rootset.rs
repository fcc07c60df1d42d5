use std::fmt;

use crate::roots::Root;

/// A subset of the positive roots of one root system, stored as a bit vector
/// indexed by positive-root position. Every supported system has at most 120
/// positive roots, so one `u128` holds the whole set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosRootSet {
    bits: u128,
    width: u16,
}

impl PosRootSet {
    pub fn empty(width: usize) -> Self {
        assert!(width <= 128, "positive-root set wider than 128 bits");
        PosRootSet {
            bits: 0,
            width: width as u16,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.bits = if width == 128 {
            u128::MAX
        } else {
            (1u128 << width) - 1
        };
        s
    }

    pub fn from_bits(width: usize, bits: u128) -> Self {
        let full = Self::full(width);
        assert_eq!(bits & !full.bits, 0, "bits outside the set width");
        PosRootSet {
            bits,
            width: width as u16,
        }
    }

    pub fn from_roots<I: IntoIterator<Item = Root>>(width: usize, roots: I) -> Self {
        let mut s = Self::empty(width);
        for r in roots {
            s.insert(r);
        }
        s
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, r: Root) -> bool {
        r.index() < self.width() && self.bits >> r.index() & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, r: Root) {
        assert!(r.index() < self.width(), "root {} is not positive", r.index());
        self.bits |= 1 << r.index();
    }

    #[inline]
    pub fn remove(&mut self, r: Root) {
        if r.index() < self.width() {
            self.bits &= !(1 << r.index());
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &PosRootSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn union(&self, other: &PosRootSet) -> PosRootSet {
        PosRootSet {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &PosRootSet) -> PosRootSet {
        PosRootSet {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    #[inline]
    pub fn difference(&self, other: &PosRootSet) -> PosRootSet {
        PosRootSet {
            bits: self.bits & !other.bits,
            width: self.width,
        }
    }

    /// Complement inside the positive roots.
    pub fn complement(&self) -> PosRootSet {
        PosRootSet {
            bits: Self::full(self.width()).bits & !self.bits,
            width: self.width,
        }
    }

    pub fn iter(&self) -> Iter {
        Iter { bits: self.bits }
    }
}

impl fmt::Debug for PosRootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|r| r.index())).finish()
    }
}

impl IntoIterator for PosRootSet {
    type Item = Root;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &PosRootSet {
    type Item = Root;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iteration over member roots.
pub struct Iter {
    bits: u128,
}

impl Iterator for Iter {
    type Item = Root;

    #[inline]
    fn next(&mut self) -> Option<Root> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(Root::from_index(i as usize))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = PosRootSet::empty(6);
        assert!(s.is_empty());
        s.insert(Root::from_index(0));
        s.insert(Root::from_index(5));
        assert_eq!(s.len(), 2);
        assert!(s.contains(Root::from_index(5)));
        assert!(!s.contains(Root::from_index(6)));
        assert_eq!(s.complement().len(), 4);
        let v: Vec<usize> = s.iter().map(|r| r.index()).collect();
        assert_eq!(v, vec![0, 5]);
        s.remove(Root::from_index(0));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn full_width_128() {
        let s = PosRootSet::full(128);
        assert_eq!(s.len(), 128);
        assert!(s.complement().is_empty());
    }

    proptest! {
        #[test]
        fn complement_partitions(bits in any::<u64>(), width in 1usize..=64) {
            let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
            let s = PosRootSet::from_bits(width, (bits & mask) as u128);
            let c = s.complement();
            prop_assert!(s.intersection(&c).is_empty());
            prop_assert_eq!(s.union(&c), PosRootSet::full(width));
            prop_assert_eq!(s.len() + c.len(), width);
        }
    }
}
