//! Dense bit vectors backed by `u64` blocks.
//!
//! Everything downstream (F2 linear algebra, Pauli symplectic rows, Majorana
//! supports, Gray-code distance enumeration) runs on these, so the operations
//! that sit in inner loops (`xor_assign`, `count_ones`, `or_weight`) work
//! block-wise.

const BLOCK_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    nbits: usize,
    blocks: Vec<u64>,
}

impl BitVec {
    pub fn zeros(nbits: usize) -> Self {
        BitVec {
            nbits,
            blocks: vec![0; nbits.div_ceil(BLOCK_BITS)],
        }
    }

    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(nbits);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nbits == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        (self.blocks[i / BLOCK_BITS] >> (i % BLOCK_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.nbits);
        let mask = 1u64 << (i % BLOCK_BITS);
        if value {
            self.blocks[i / BLOCK_BITS] |= mask;
        } else {
            self.blocks[i / BLOCK_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.blocks[i / BLOCK_BITS] ^= 1u64 << (i % BLOCK_BITS);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    #[inline]
    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(k * BLOCK_BITS + b.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Parity of `self & other` (the F2 inner product).
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        let mut acc = 0u64;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Popcount of `self | other` without allocating.
    #[inline]
    pub fn or_weight(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(k, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(k * BLOCK_BITS + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.nbits).map(|i| self.get(i)).collect()
    }

    /// Concatenate two bit vectors (used to build symplectic rows).
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.nbits + other.nbits);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.nbits + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Number of set bits strictly above position `i`.
    pub fn count_ones_above(&self, i: usize) -> usize {
        let block = i / BLOCK_BITS;
        let bit = i % BLOCK_BITS;
        let mut count = 0usize;
        let high = if bit == BLOCK_BITS - 1 {
            0
        } else {
            self.blocks[block] >> (bit + 1)
        };
        count += high.count_ones() as usize;
        for &b in &self.blocks[block + 1..] {
            count += b.count_ones() as usize;
        }
        count
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.nbits {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_flip() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert!(v.get(0) && v.get(64) && v.get(129));
        assert_eq!(v.count_ones(), 3);
        v.flip(64);
        assert!(!v.get(64));
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn dot_and_weights() {
        let a = BitVec::from_indices(100, [1, 5, 70]);
        let b = BitVec::from_indices(100, [5, 70, 99]);
        assert!(!a.dot(&b)); // two common bits
        assert_eq!(a.or_weight(&b), 4);
        assert_eq!(a.count_ones_above(5), 1);
        assert_eq!(a.count_ones_above(0), 3);
    }

    #[test]
    fn iter_ones_roundtrip() {
        let idx = [3usize, 63, 64, 65, 127];
        let v = BitVec::from_indices(128, idx);
        let got: Vec<usize> = v.iter_ones().collect();
        assert_eq!(got, idx);
    }
}
