//! Fixed-length binary words.
//!
//! Positions are 1-based and position 1 is the leftmost digit of the textual
//! form. Internally position `i` lives in bit `(i - 1) % 64` of block
//! `(i - 1) / 64`; words of up to 64 bits occupy a single inline block.
//!
//! Words of the same length are totally ordered by weight first and then
//! lexicographically by their support: `1000 < 0100 < 0010 < 0001 < 1100`.
//! This is the order every "pick any admissible word" step of the
//! constructors resolves to.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Blocks = SmallVec<[u64; 1]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    blocks: Blocks,
}

fn block_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitWord {
    /// The all-zero word `e^len_0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "a word has at least one position");
        BitWord {
            len,
            blocks: SmallVec::from_elem(0, block_count(len)),
        }
    }

    /// `e^len_i`: a single 1 at position `i`, or the zero word for `i = 0`.
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameters("word length must be positive".into()));
        }
        if i > len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let mut w = BitWord::zeros(len);
        if i > 0 {
            w.set(i, true);
        }
        Ok(w)
    }

    /// Builds a word of length `len <= 64` from its packed form (position 1 is bit 0).
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!((1..=64).contains(&len));
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        assert_eq!(bits & !mask, 0, "bits beyond the word length");
        let mut blocks = Blocks::new();
        blocks.push(bits);
        BitWord { len, blocks }
    }

    /// Packed form for words of at most 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.blocks[0])
    }

    /// Builds a word from a support given as 1-based positions.
    pub fn from_support(len: usize, positions: &[usize]) -> Result<Self> {
        let mut w = BitWord::zeros(len);
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::IndexOutOfRange { index: p, len });
            }
            w.set(p, true);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; words have at least one position.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "position {i} outside 1..={}", self.len);
        let k = i - 1;
        self.blocks[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i >= 1 && i <= self.len, "position {i} outside 1..={}", self.len);
        let k = i - 1;
        let mask = 1u64 << (k % 64);
        if value {
            self.blocks[k / 64] |= mask;
        } else {
            self.blocks[k / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    /// Hamming weight `||w||`.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        Error::check_len(self.len, other.len)?;
        let mut out = self.clone();
        out.xor_blocks(other);
        Ok(out)
    }

    pub fn hamming_distance(&self, other: &BitWord) -> Result<usize> {
        Error::check_len(self.len, other.len)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    fn xor_blocks(&mut self, other: &BitWord) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    /// Positions holding a 1, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            blocks: &self.blocks,
            block: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    /// Position of the rightmost 1, if any.
    pub fn last_one(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &b)| b != 0)
            .map(|(k, &b)| k * 64 + (63 - b.leading_zeros() as usize) + 1)
    }

    /// `x|_1^i`: keeps positions `1..=i` and clears the rest.
    pub fn truncate_to(&self, i: usize) -> BitWord {
        let mut out = self.clone();
        for (k, block) in out.blocks.iter_mut().enumerate() {
            let lo = k * 64;
            if lo >= i {
                *block = 0;
            } else if i - lo < 64 {
                *block &= (1u64 << (i - lo)) - 1;
            }
        }
        out
    }

    /// The digit string, position 1 first.
    pub fn to_digits(&self) -> String {
        (1..=self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidWord(s.to_string()));
        }
        let mut w = BitWord::zeros(s.len());
        for (k, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => w.set(k + 1, true),
                _ => return Err(Error::InvalidWord(s.to_string())),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({})", self.to_digits())
    }
}

impl BitXorAssign<&BitWord> for BitWord {
    /// Panics on length mismatch; use [`BitWord::xor`] for a checked form.
    fn bitxor_assign(&mut self, rhs: &BitWord) {
        assert_eq!(self.len, rhs.len, "xor of words with different lengths");
        self.xor_blocks(rhs);
    }
}

impl BitXor<&BitWord> for &BitWord {
    type Output = BitWord;

    fn bitxor(self, rhs: &BitWord) -> BitWord {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| {
                // the word holding a 1 at the first differing position comes first
                for (a, b) in self.blocks.iter().zip(&other.blocks) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let low = diff & diff.wrapping_neg();
                        return if a & low != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sort key of a packed word under the weight-then-lexicographic order.
pub fn packed_order_key(bits: u64) -> (u32, u64) {
    (bits.count_ones(), !bits.reverse_bits())
}

pub struct Ones<'a> {
    blocks: &'a [u64],
    block: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.block * 64 + tz + 1);
            }
            self.block += 1;
            if self.block >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.block];
        }
    }
}

/// Lazy enumeration of a Hamming ball restricted to a prefix support.
///
/// Yields every word of length `len` and weight at most `max_weight` whose
/// 1s lie in positions `1..=support`, weight-ascending and then in
/// lexicographic order of the support.
#[derive(Clone, Debug)]
pub struct Ball {
    len: usize,
    support: usize,
    max_weight: usize,
    weight: usize,
    // 1-based positions of the current combination
    combo: Vec<usize>,
    done: bool,
}

impl Ball {
    pub fn with_support(len: usize, max_weight: usize, support: usize) -> Result<Ball> {
        if len == 0 {
            return Err(Error::InvalidParameters("word length must be positive".into()));
        }
        if max_weight > len {
            return Err(Error::InvalidParameters(format!(
                "ball radius {max_weight} exceeds length {len}"
            )));
        }
        if support > len {
            return Err(Error::IndexOutOfRange { index: support, len });
        }
        Ok(Ball {
            len,
            support,
            max_weight: max_weight.min(support),
            weight: 0,
            combo: Vec::new(),
            done: false,
        })
    }

    fn advance(&mut self) {
        let w = self.weight;
        let p = self.support;
        // rightmost slot that can still move right
        let mut k = w;
        while k > 0 {
            if self.combo[k - 1] < p - (w - k) {
                self.combo[k - 1] += 1;
                for j in k..w {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return;
            }
            k -= 1;
        }
        self.weight += 1;
        if self.weight > self.max_weight {
            self.done = true;
        } else {
            self.combo = (1..=self.weight).collect();
        }
    }
}

impl Iterator for Ball {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        if self.done {
            return None;
        }
        let mut w = BitWord::zeros(self.len);
        for &p in &self.combo {
            w.set(p, true);
        }
        self.advance();
        Some(w)
    }
}

/// `B^m_n` restricted as in the constructors: words of length `m`, weight at
/// most `n`, supported in positions `1..prefix_limit` when `prefix_limit < m`,
/// or the whole ball when `prefix_limit == m`.
pub fn ball(m: usize, n: usize, prefix_limit: usize) -> Result<Ball> {
    if prefix_limit == 0 || prefix_limit > m {
        return Err(Error::IndexOutOfRange {
            index: prefix_limit,
            len: m,
        });
    }
    let support = if prefix_limit == m { m } else { prefix_limit - 1 };
    Ball::with_support(m, n, support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn units() {
        assert_eq!(BitWord::unit(6, 0).unwrap(), w("000000"));
        assert_eq!(BitWord::unit(6, 2).unwrap(), w("010000"));
        assert_eq!(BitWord::unit(3, 3).unwrap(), w("001"));
        assert!(matches!(
            BitWord::unit(3, 4),
            Err(Error::IndexOutOfRange { index: 4, len: 3 })
        ));
    }

    #[test]
    fn xor_and_weight() {
        assert_eq!(w("01010").xor(&w("11100")).unwrap(), w("10110"));
        assert_eq!(w("111110").xor(&w("011000")).unwrap(), w("100110"));
        assert!(w("1011").xor(&w("1011")).unwrap().is_zero());
        assert!(matches!(
            w("10").xor(&w("101")),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        ));
        assert_eq!(w("000000").weight(), 0);
        assert_eq!(w("011000").weight(), 2);
        assert_eq!(w("111110").weight(), 5);
    }

    #[test]
    fn text_form_is_position_one_first() {
        let x = BitWord::from_support(5, &[1, 4]).unwrap();
        assert_eq!(x.to_string(), "10010");
        assert!("10a".parse::<BitWord>().is_err());
        assert!("".parse::<BitWord>().is_err());
    }

    #[test]
    fn order_is_weight_then_support_lex() {
        let mut v: Vec<BitWord> = ["0001", "1100", "0000", "0100", "1000", "0011", "1010"]
            .iter()
            .map(|s| w(s))
            .collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["0000", "1000", "0100", "0001", "1100", "1010", "0011"]);
        assert!(packed_order_key(0b0001) < packed_order_key(0b0010));
        assert!(packed_order_key(0b0010) < packed_order_key(0b0011));
    }

    #[test]
    fn ball_examples() {
        let b: Vec<String> = ball(4, 1, 4).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(b, ["0000", "1000", "0100", "0010", "0001"]);
        assert_eq!(ball(6, 2, 6).unwrap().count(), 22);
        let b: Vec<String> = ball(6, 1, 3).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(b, ["000000", "100000", "010000"]);
        assert!(ball(3, 4, 3).is_err());
    }

    #[test]
    fn ball_sizes_match_binomial_sums() {
        for m in 1..=20 {
            for n in 0..=m {
                let expected: usize = (0..=n).map(|i| binom(m, i)).sum();
                assert_eq!(ball(m, n, m).unwrap().count(), expected, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn ball_respects_prefix_and_order() {
        for m in 2..=10 {
            for p in 1..m {
                for n in 0..=m {
                    let words: Vec<BitWord> = ball(m, n, p).unwrap().collect();
                    let support = p - 1;
                    let expected: usize = (0..=n.min(support)).map(|i| binom(support, i)).sum();
                    assert_eq!(words.len(), expected);
                    for x in &words {
                        assert!(x.weight() <= n);
                        assert!(x.last_one().is_none_or(|q| q < p));
                    }
                    assert!(words.windows(2).all(|pair| pair[0] < pair[1]));
                }
            }
        }
    }

    #[test]
    fn long_words_use_the_multi_block_path() {
        let mut a = BitWord::zeros(130);
        a.set(1, true);
        a.set(64, true);
        a.set(65, true);
        a.set(130, true);
        assert_eq!(a.weight(), 4);
        assert_eq!(a.ones().collect::<Vec<_>>(), [1, 64, 65, 130]);
        assert_eq!(a.last_one(), Some(130));
        assert_eq!(a.truncate_to(64).ones().collect::<Vec<_>>(), [1, 64]);
        assert_eq!(a.truncate_to(65).ones().collect::<Vec<_>>(), [1, 64, 65]);
        let text = a.to_string();
        assert_eq!(text.len(), 130);
        assert_eq!(text.parse::<BitWord>().unwrap(), a);
        assert_eq!(ball(70, 2, 70).unwrap().count(), 1 + 70 + 70 * 69 / 2);
        let b = BitWord::unit(130, 65).unwrap();
        assert!(b < BitWord::unit(130, 66).unwrap());
        assert!(BitWord::unit(130, 1).unwrap() < b);
    }

    fn word_pair(len: usize) -> impl Strategy<Value = (BitWord, BitWord, BitWord)> {
        let bits = proptest::collection::vec(any::<bool>(), len * 3);
        bits.prop_map(move |v| {
            let make = |chunk: &[bool]| {
                let mut x = BitWord::zeros(len);
                for (k, &b) in chunk.iter().enumerate() {
                    x.set(k + 1, b);
                }
                x
            };
            (make(&v[..len]), make(&v[len..2 * len]), make(&v[2 * len..]))
        })
    }

    proptest! {
        #[test]
        fn xor_algebra((a, b, c) in (1usize..150).prop_flat_map(word_pair)) {
            let zero = BitWord::zeros(a.len());
            prop_assert_eq!(a.xor(&b).unwrap(), b.xor(&a).unwrap());
            prop_assert_eq!(a.xor(&b).unwrap().xor(&c).unwrap(), a.xor(&b.xor(&c).unwrap()).unwrap());
            prop_assert_eq!(a.xor(&a).unwrap(), zero.clone());
            prop_assert_eq!(a.xor(&zero).unwrap(), a.clone());
            prop_assert_eq!(a.hamming_distance(&b).unwrap(), a.xor(&b).unwrap().weight());
            prop_assert_eq!(a.to_string().parse::<BitWord>().unwrap(), a.clone());
        }
    }
}
