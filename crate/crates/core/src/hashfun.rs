//! Linear hash functions stored as the table of unit-word images.
//!
//! A map `λ: {0,1}^L -> {0,1}^l` is linear exactly when
//! `λ(x) = x_1·v_1 ⊕ ... ⊕ x_L·v_L` for some `l`-bit words `v_i = λ(e^L_i)`,
//! so the table `v_1, ..., v_L` is the whole function.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitword::BitWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearHashFunction {
    message_len: usize,
    hash_len: usize,
    table: Vec<BitWord>,
    // packed copy of the table when l <= 64
    packed: Option<Vec<u64>>,
}

impl LinearHashFunction {
    /// Builds `λ` from `v_1, ..., v_L`; requires `1 <= l < L` and every entry of length `l`.
    pub fn new(hash_len: usize, table: Vec<BitWord>) -> Result<Self> {
        let message_len = table.len();
        if hash_len == 0 || hash_len >= message_len {
            return Err(Error::InvalidParameters(format!(
                "hash length {hash_len} must satisfy 1 <= l < L = {message_len}"
            )));
        }
        for v in &table {
            Error::check_len(hash_len, v.len())?;
        }
        let packed = (hash_len <= 64).then(|| table.iter().map(|v| v.to_u64().unwrap()).collect());
        Ok(LinearHashFunction {
            message_len,
            hash_len,
            table,
            packed,
        })
    }

    /// Builds `λ` from packed `l`-bit columns (`l <= 64`).
    pub fn from_packed(hash_len: usize, columns: &[u64]) -> Result<Self> {
        if hash_len == 0 || hash_len > 64 {
            return Err(Error::InvalidParameters(format!(
                "packed hash length {hash_len} outside 1..=64"
            )));
        }
        let table = columns
            .iter()
            .map(|&c| BitWord::from_u64(hash_len, c))
            .collect();
        LinearHashFunction::new(hash_len, table)
    }

    /// `L`
    pub fn message_len(&self) -> usize {
        self.message_len
    }

    /// `l`
    pub fn hash_len(&self) -> usize {
        self.hash_len
    }

    pub fn table(&self) -> &[BitWord] {
        &self.table
    }

    /// `v_i = λ(e^L_i)` for `1 <= i <= L`.
    pub fn column(&self, i: usize) -> &BitWord {
        &self.table[i - 1]
    }

    pub fn eval(&self, x: &BitWord) -> Result<BitWord> {
        Error::check_len(self.message_len, x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &BitWord) -> BitWord {
        match &self.packed {
            Some(cols) => BitWord::from_u64(self.hash_len, eval_packed(cols, x)),
            None => {
                let mut acc = BitWord::zeros(self.hash_len);
                for i in x.ones() {
                    acc ^= &self.table[i - 1];
                }
                acc
            }
        }
    }

    /// `λ̂(Z)`: the distinct hash values of `words`.
    pub fn image<I>(&self, words: I) -> Result<HashSet<BitWord>>
    where
        I: IntoIterator<Item = BitWord>,
    {
        words.into_iter().map(|w| self.eval(&w)).collect()
    }

    /// Samples `trials` random pairs and checks `λ(x ⊕ y) = λ(x) ⊕ λ(y)`.
    pub fn linearity_check(&self, trials: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_word = || {
            let mut w = BitWord::zeros(self.message_len);
            for i in 1..=self.message_len {
                w.set(i, rng.gen());
            }
            w
        };
        (0..trials).all(|_| {
            let x = random_word();
            let y = random_word();
            self.eval_unchecked(&(&x ^ &y)) == &self.eval_unchecked(&x) ^ &self.eval_unchecked(&y)
        })
    }
}

/// XOR of the packed columns selected by the 1s of `x`; positions beyond
/// `columns.len()` must be zero.
pub(crate) fn eval_packed(columns: &[u64], x: &BitWord) -> u64 {
    x.ones().fold(0, |acc, i| acc ^ columns[i - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn table(words: &[&str]) -> LinearHashFunction {
        let l = words[0].len();
        LinearHashFunction::new(l, words.iter().map(|s| w(s)).collect()).unwrap()
    }

    fn burst_corrector() -> LinearHashFunction {
        table(&["1000", "0100", "0010", "0001", "1111", "1000"])
    }

    #[test]
    fn eval_examples() {
        let alternating = table(&["1", "0", "1", "0", "1", "0"]);
        assert_eq!(alternating.eval(&w("000000")).unwrap(), w("0"));
        assert_eq!(alternating.eval(&w("011001")).unwrap(), w("1"));
        let h = burst_corrector();
        assert_eq!(h.eval(&w("100110")).unwrap(), w("0110"));
        assert_eq!(h.eval(&w("011010")).unwrap(), w("1001"));
        assert!(h.eval(&w("10")).is_err());
    }

    #[test]
    fn units_map_to_columns() {
        let h = burst_corrector();
        for i in 1..=6 {
            assert_eq!(&h.eval(&BitWord::unit(6, i).unwrap()).unwrap(), h.column(i));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(LinearHashFunction::new(2, vec![w("10"), w("01")]).is_err());
        assert!(LinearHashFunction::new(2, vec![w("10"), w("01"), w("1")]).is_err());
        assert!(LinearHashFunction::new(0, vec![w("1"), w("1")]).is_err());
    }

    #[test]
    fn exhaustive_linearity_small() {
        let h = table(&["101", "011", "110", "111", "001", "100", "010", "101", "000", "011", "110", "001"]);
        let len = 12u32;
        for x in 0..(1u64 << len) {
            let xw = BitWord::from_u64(12, x);
            for y in (0..(1u64 << len)).step_by(37) {
                let yw = BitWord::from_u64(12, y);
                let lhs = h.eval(&(&xw ^ &yw)).unwrap();
                let rhs = &h.eval(&xw).unwrap() ^ &h.eval(&yw).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(h.linearity_check(500, 7));
        let parity = table(&["1"; 9]);
        assert!(parity.linearity_check(500, 1));
    }

    #[test]
    fn wide_hash_values_use_the_unpacked_path() {
        let l = 70;
        let cols: Vec<BitWord> = (1..=72).map(|i| BitWord::unit(l, (i % l) + 1).unwrap()).collect();
        let h = LinearHashFunction::new(l, cols).unwrap();
        assert!(h.packed.is_none());
        let x = BitWord::from_support(72, &[1, 71]).unwrap();
        // columns 1 and 71 are e_2 and e_2
        assert!(h.eval(&x).unwrap().is_zero());
        assert!(h.linearity_check(50, 3));
    }

    #[test]
    fn image_of_burst_set() {
        let h = burst_corrector();
        let d = ["000011", "000110", "001100", "011000", "110000"].map(w);
        let img = h.image(d).unwrap();
        let mut got: Vec<String> = img.iter().map(|x| x.to_string()).collect();
        got.sort();
        assert_eq!(got, ["0011", "0110", "0111", "1100", "1110"]);
        let zero = h.image([BitWord::zeros(6)]).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero.contains(&BitWord::zeros(4)));
    }
}
