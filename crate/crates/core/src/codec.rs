//! Encoding into the kernel `A_0 = {x : λ(x) = 0}`, detection, and
//! syndrome-table correction.
//!
//! Every check position `p_j` satisfies `λ(e^L_{p_j}) = e^l_j`, so filling the
//! check symbols takes a single evaluation: with zeros at the check positions,
//! `w = λ(x*)` and writing `w_j` at `p_j` adds exactly `w` back.

use std::collections::BTreeMap;

use crate::bitword::BitWord;
use crate::distortions::DistortionSet;
use crate::error::{Error, Result};
use crate::hashfun::LinearHashFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Detect,
    Correct,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Detect => "detect",
            Mode::Correct => "correct",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "detect" => Ok(Mode::Detect),
            "correct" => Ok(Mode::Correct),
            _ => Err(Error::InvalidParameters(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    hash: LinearHashFunction,
    check_positions: Vec<usize>,
    info_positions: Vec<usize>,
    mode: Mode,
    /// Construction metadata as ordered `key=value` pairs.
    pub metadata: Vec<(String, String)>,
}

impl CodeSpec {
    /// Validates that `check_positions` are `l` distinct indices in `1..=L`
    /// whose unit words hash to `e^l_1, ..., e^l_l` in order.
    pub fn new(hash: LinearHashFunction, check_positions: Vec<usize>, mode: Mode) -> Result<Self> {
        let len = hash.message_len();
        let l = hash.hash_len();
        if check_positions.len() != l {
            return Err(Error::InvariantViolation(format!(
                "expected {l} check positions, found {}",
                check_positions.len()
            )));
        }
        let mut is_check = vec![false; len + 1];
        for &p in &check_positions {
            if p == 0 || p > len {
                return Err(Error::InvariantViolation(format!(
                    "check position {p} outside 1..={len}"
                )));
            }
            if is_check[p] {
                return Err(Error::InvariantViolation(format!("check position {p} repeated")));
            }
            is_check[p] = true;
        }
        for (j, &p) in check_positions.iter().enumerate() {
            if hash.column(p) != &BitWord::unit(l, j + 1)? {
                return Err(Error::InvariantViolation(format!(
                    "unit image: λ(e_{p}) = {} but check position {} needs e_{}",
                    hash.column(p),
                    j + 1,
                    j + 1
                )));
            }
        }
        let info_positions = (1..=len).filter(|&p| !is_check[p]).collect();
        Ok(CodeSpec {
            hash,
            check_positions,
            info_positions,
            mode,
            metadata: Vec::new(),
        })
    }

    /// Check symbols at `L-l+1, ..., L` (bounded-weight codes).
    pub fn with_trailing_checks(hash: LinearHashFunction, mode: Mode) -> Result<Self> {
        let (len, l) = (hash.message_len(), hash.hash_len());
        CodeSpec::new(hash, (len - l + 1..=len).collect(), mode)
    }

    /// Check symbols at `1, ..., l` (general codes).
    pub fn with_leading_checks(hash: LinearHashFunction, mode: Mode) -> Result<Self> {
        let l = hash.hash_len();
        CodeSpec::new(hash, (1..=l).collect(), mode)
    }

    pub fn with_metadata(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn hash(&self) -> &LinearHashFunction {
        &self.hash
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn check_positions(&self) -> &[usize] {
        &self.check_positions
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn message_len(&self) -> usize {
        self.hash.message_len()
    }

    pub fn check_len(&self) -> usize {
        self.hash.hash_len()
    }

    pub fn info_len(&self) -> usize {
        self.info_positions.len()
    }

    pub fn encode(&self, info: &BitWord) -> Result<BitWord> {
        Error::check_len(self.info_len(), info.len())?;
        let mut x = BitWord::zeros(self.message_len());
        for (k, &p) in self.info_positions.iter().enumerate() {
            if info.get(k + 1) {
                x.set(p, true);
            }
        }
        let w = self.hash.eval_unchecked(&x);
        for (j, &p) in self.check_positions.iter().enumerate() {
            if w.get(j + 1) {
                x.set(p, true);
            }
        }
        Ok(x)
    }

    pub fn extract_info(&self, x: &BitWord) -> Result<BitWord> {
        Error::check_len(self.message_len(), x.len())?;
        let mut info = BitWord::zeros(self.info_len());
        for (k, &p) in self.info_positions.iter().enumerate() {
            if x.get(p) {
                info.set(k + 1, true);
            }
        }
        Ok(info)
    }

    pub fn syndrome(&self, y: &BitWord) -> Result<BitWord> {
        self.hash.eval(y)
    }

    pub fn detect(&self, y: &BitWord) -> Result<Detection> {
        let s = self.syndrome(y)?;
        Ok(if s.is_zero() {
            Detection::Clean
        } else {
            Detection::ErrorDetected(s)
        })
    }

    /// Exact syndrome lookup; no nearest-codeword search.
    pub fn correct(&self, table: &SyndromeTable, y: &BitWord) -> Result<Correction> {
        let s = self.syndrome(y)?;
        if s.is_zero() {
            return Ok(Correction::Clean);
        }
        Ok(match table.get(&s) {
            Some(d) => Correction::Corrected {
                codeword: y ^ d,
                distortion: d.clone(),
            },
            None => Correction::Uncorrectable(s),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    Clean,
    ErrorDetected(BitWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correction {
    Clean,
    Corrected { codeword: BitWord, distortion: BitWord },
    Uncorrectable(BitWord),
}

/// Injective map from nonzero syndromes to distortions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SyndromeTable {
    entries: BTreeMap<BitWord, BitWord>,
}

impl SyndromeTable {
    /// `{λ(d) -> d : d ∈ D}`; fails on a zero syndrome or a collision.
    pub fn build(spec: &CodeSpec, distortions: &DistortionSet) -> Result<Self> {
        Error::check_len(spec.message_len(), distortions.message_len())?;
        let pairs = distortions.members().map(|d| (spec.hash.eval_unchecked(&d), d));
        SyndromeTable::from_pairs(spec, pairs)
    }

    /// Accepts `(syndrome, distortion)` pairs after checking each against `λ`.
    pub fn from_pairs<I>(spec: &CodeSpec, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BitWord, BitWord)>,
    {
        let mut entries = BTreeMap::new();
        for (s, d) in pairs {
            Error::check_len(spec.message_len(), d.len())?;
            Error::check_len(spec.check_len(), s.len())?;
            if spec.hash.eval_unchecked(&d) != s {
                return Err(Error::InvariantViolation(format!(
                    "syndrome entry {s} does not match λ({d})"
                )));
            }
            if s.is_zero() {
                return Err(Error::ZeroSyndrome(d));
            }
            if let Some(prev) = entries.get(&s) {
                return Err(Error::SyndromeCollision(BitWord::clone(prev), d));
            }
            entries.insert(s, d);
        }
        Ok(SyndromeTable { entries })
    }

    pub fn get(&self, syndrome: &BitWord) -> Option<&BitWord> {
        self.entries.get(syndrome)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in syndrome order.
    pub fn iter(&self) -> impl Iterator<Item = (&BitWord, &BitWord)> {
        self.entries.iter()
    }
}
