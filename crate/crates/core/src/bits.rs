//! Word-sized subsets of a poset's ground set.

/// Iterator over the set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
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

#[inline]
pub fn ones(word: u64) -> Ones {
    Ones(word)
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Renders a subset as a bitstring over positions `0..n`, position 0 first.
/// The empty ground set renders as `"e"`.
pub fn bitstring(word: u64, n: usize) -> String {
    if n == 0 {
        return "e".to_string();
    }
    (0..n)
        .map(|i| if word & bit(i) != 0 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`bitstring`]. Returns `None` on a length mismatch or a stray character.
pub fn parse_bitstring(s: &str, n: usize) -> Option<u64> {
    if n == 0 {
        return (s == "e" || s.is_empty()).then_some(0);
    }
    if s.len() != n {
        return None;
    }
    let mut word = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => word |= bit(i),
            '0' => {}
            _ => return None,
        }
    }
    Some(word)
}

/// Sort key used for every canonical subset listing: popcount, then numeric value.
#[inline]
pub fn canonical_key(word: u64) -> (u32, u64) {
    (word.count_ones(), word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_lists_positions() {
        assert_eq!(ones(0b1010_0101).collect::<Vec<_>>(), vec![0, 2, 5, 7]);
        assert_eq!(ones(0).count(), 0);
        assert_eq!(ones(u64::MAX).len(), 64);
    }

    #[test]
    fn bitstrings() {
        assert_eq!(bitstring(0b101, 3), "101");
        assert_eq!(bitstring(0b001, 3), "100");
        assert_eq!(bitstring(0, 0), "e");
        assert_eq!(parse_bitstring("100", 3), Some(1));
        assert_eq!(parse_bitstring("e", 0), Some(0));
        assert_eq!(parse_bitstring("10", 3), None);
        assert_eq!(parse_bitstring("1x0", 3), None);
    }
}
