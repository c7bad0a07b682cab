//! Helpers for `u128` vertex masks.

/// Iterator over the set bit positions of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u128);

impl Iterator for Bits {
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
}

#[inline]
pub fn bits(mask: u128) -> Bits {
    Bits(mask)
}

#[inline]
pub fn bit(i: usize) -> u128 {
    1u128 << i
}

/// Mask with bits `0..n` set.
#[inline]
pub fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Mask of positions strictly above `i`.
#[inline]
pub fn above(i: usize) -> u128 {
    if i >= 127 {
        0
    } else {
        u128::MAX << (i + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_order() {
        let v: alloc::vec::Vec<usize> = bits(0b1010_0101 | bit(127)).collect();
        assert_eq!(v, [0, 2, 5, 7, 127]);
        assert_eq!(low_mask(3), 7);
        assert_eq!(above(1) & 0xf, 0b1100);
        assert_eq!(above(127), 0);
    }
}
