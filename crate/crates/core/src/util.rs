//! Small crate-internal helpers.

/// Fixed-size bit set used as a visited map over permutation ranks.
pub(crate) struct DenseBits {
    words: Vec<u64>,
}

impl DenseBits {
    pub fn new(len: u64) -> DenseBits {
        DenseBits {
            words: vec![0u64; len.div_ceil(64) as usize],
        }
    }

    pub fn set(&mut self, i: u64) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn get(&self, i: u64) -> bool {
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }
}

/// `m·(m−2)·(m−4)⋯`, with `0!! = (−1)!! = 1`.
pub fn double_factorial(m: u64) -> u64 {
    let mut acc = 1u64;
    let mut k = m;
    while k > 1 {
        acc = acc.checked_mul(k).expect("double factorial fits u64");
        k -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), 1);
        assert_eq!(double_factorial(1), 1);
        assert_eq!(double_factorial(3), 3);
        assert_eq!(double_factorial(7), 105);
        assert_eq!(double_factorial(15), 2_027_025);
    }

    #[test]
    fn bits_set_get() {
        let mut bits = DenseBits::new(130);
        bits.set(0);
        bits.set(64);
        bits.set(129);
        assert!(bits.get(0) && bits.get(64) && bits.get(129));
        assert!(!bits.get(1) && !bits.get(65) && !bits.get(128));
    }
}
