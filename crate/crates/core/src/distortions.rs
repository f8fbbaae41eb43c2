//! Distortion sets `D ⊂ {0,1}^L \ {0}` and the derived sets the general
//! constructors work from.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::bitword::{Ball, BitWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BurstVariant {
    /// The window is filled with 1s: exactly `b` adjacent flips.
    Strict,
    /// Any nonzero pattern inside a window of `b` consecutive positions.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistortionKind {
    Explicit(Vec<BitWord>),
    /// `B^L_t \ {0}`
    WeightBall { max_weight: usize },
    Burst { length: usize, variant: BurstVariant },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistortionSet {
    len: usize,
    kind: DistortionKind,
}

impl DistortionSet {
    pub fn explicit(len: usize, words: Vec<BitWord>) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameters("word length must be positive".into()));
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            Error::check_len(len, w.len())?;
            if w.is_zero() {
                return Err(Error::InvalidParameters("the zero word is not a distortion".into()));
            }
            if !seen.insert(w) {
                return Err(Error::InvalidParameters(format!("duplicate distortion {w}")));
            }
        }
        Ok(DistortionSet {
            len,
            kind: DistortionKind::Explicit(words),
        })
    }

    pub fn weight_ball(len: usize, max_weight: usize) -> Result<Self> {
        if len == 0 || max_weight > len {
            return Err(Error::InvalidParameters(format!(
                "weight bound {max_weight} outside 0..={len}"
            )));
        }
        Ok(DistortionSet {
            len,
            kind: DistortionKind::WeightBall { max_weight },
        })
    }

    pub fn burst(len: usize, length: usize, variant: BurstVariant) -> Result<Self> {
        if length == 0 || length > len {
            return Err(Error::InvalidParameters(format!(
                "burst length {length} outside 1..={len}"
            )));
        }
        Ok(DistortionSet {
            len,
            kind: DistortionKind::Burst { length, variant },
        })
    }

    /// `L`
    pub fn message_len(&self) -> usize {
        self.len
    }

    pub fn kind(&self) -> &DistortionKind {
        &self.kind
    }

    /// Deterministic enumeration of the members.
    pub fn members(&self) -> Box<dyn Iterator<Item = BitWord> + '_> {
        let len = self.len;
        match &self.kind {
            DistortionKind::Explicit(words) => Box::new(words.iter().cloned()),
            DistortionKind::WeightBall { max_weight } => Box::new(
                Ball::with_support(len, *max_weight, len)
                    .expect("validated")
                    .skip(1),
            ),
            DistortionKind::Burst {
                length,
                variant: BurstVariant::Strict,
            } => {
                let b = *length;
                Box::new((1..=len - b + 1).map(move |start| {
                    let mut w = BitWord::zeros(len);
                    for p in start..start + b {
                        w.set(p, true);
                    }
                    w
                }))
            }
            DistortionKind::Burst {
                length,
                variant: BurstVariant::General,
            } => {
                let b = *length;
                // each word is generated once, from the window opening at its first 1
                Box::new((1..=len).flat_map(move |first| {
                    let tail = (first + b - 1).min(len) - first;
                    let patterns: Box<dyn Iterator<Item = BitWord>> = if tail == 0 {
                        Box::new(std::iter::once(BitWord::zeros(1)))
                    } else {
                        Box::new(Ball::with_support(tail, tail, tail).expect("valid"))
                    };
                    patterns.map(move |pat| {
                        let mut w = BitWord::unit(len, first).expect("in range");
                        if tail > 0 {
                            for p in pat.ones() {
                                w.set(first + p, true);
                            }
                        }
                        w
                    })
                }))
            }
        }
    }

    pub fn count(&self) -> usize {
        match &self.kind {
            DistortionKind::Explicit(words) => words.len(),
            _ => self.members().count(),
        }
    }

    /// Short descriptor used in code-file metadata, e.g. `burst:2:strict`.
    pub fn descriptor(&self) -> String {
        match &self.kind {
            DistortionKind::Explicit(words) => format!("explicit:{}", words.len()),
            DistortionKind::WeightBall { max_weight } => format!("weight:{max_weight}"),
            DistortionKind::Burst { length, variant } => format!(
                "burst:{length}:{}",
                match variant {
                    BurstVariant::Strict => "strict",
                    BurstVariant::General => "general",
                }
            ),
        }
    }

    /// `D_i` (members whose last 1 is at position `i`) and `D'_i` (the same with bit `i` cleared).
    pub fn detection_sets(&self, i: usize) -> Result<(Vec<BitWord>, Vec<BitWord>)> {
        if i == 0 || i > self.len {
            return Err(Error::IndexOutOfRange { index: i, len: self.len });
        }
        let d_i: Vec<BitWord> = self.members().filter(|d| d.last_one() == Some(i)).collect();
        let d_prime = d_i
            .iter()
            .map(|d| {
                let mut x = d.clone();
                x.set(i, false);
                x
            })
            .collect();
        Ok((d_i, d_prime))
    }

    /// `D'_1, ..., D'_L` in one pass (index 0 is unused and empty).
    pub fn all_detection_primes(&self) -> Vec<Vec<BitWord>> {
        let mut out = vec![Vec::new(); self.len + 1];
        for mut d in self.members() {
            if let Some(i) = d.last_one() {
                d.set(i, false);
                out[i].push(d);
            }
        }
        out
    }

    /// Lazily computes `(G_i, H_i, F_i)` for `i = 1, ..., L`.
    pub fn correction_steps(&self) -> CorrectionSteps {
        let mut plus: Vec<BitWord> = vec![BitWord::zeros(self.len)];
        plus.extend(self.members());
        CorrectionSteps {
            plus,
            prev: BTreeSet::new(),
            i: 0,
            len: self.len,
        }
    }

    /// All `(G_i, H_i, F_i)`, `i = 1, ..., L`.
    pub fn correction_sets(&self) -> Vec<CorrectionStep> {
        self.correction_steps().collect()
    }
}

impl fmt::Display for DistortionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (L = {})", self.descriptor(), self.len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionStep {
    /// `G_i = {d|_1^i : d ∈ D ∪ {0}}`
    pub g: BTreeSet<BitWord>,
    /// `H_i = G_i \ G_{i-1}`, with `H_1 = G_1`
    pub h: BTreeSet<BitWord>,
    /// `F_i = {g ⊕ h ⊕ e_i : g ∈ G_{i-1}, h ∈ H_i}`
    pub f: BTreeSet<BitWord>,
}

pub struct CorrectionSteps {
    plus: Vec<BitWord>,
    prev: BTreeSet<BitWord>,
    i: usize,
    len: usize,
}

impl Iterator for CorrectionSteps {
    type Item = CorrectionStep;

    fn next(&mut self) -> Option<CorrectionStep> {
        if self.i >= self.len {
            return None;
        }
        self.i += 1;
        let i = self.i;
        let g: BTreeSet<BitWord> = self.plus.iter().map(|d| d.truncate_to(i)).collect();
        let h: BTreeSet<BitWord> = g.difference(&self.prev).cloned().collect();
        let unit = BitWord::unit(self.len, i).expect("in range");
        // the empty prefix truncates every word to zero, so G_0 contributes {0} here
        let zero_prefix = BTreeSet::from([BitWord::zeros(self.len)]);
        let base = if i == 1 { &zero_prefix } else { &self.prev };
        let mut f = BTreeSet::new();
        for hw in &h {
            let shifted = hw ^ &unit;
            for gw in base {
                f.insert(gw ^ &shifted);
            }
        }
        self.prev = g.clone();
        Some(CorrectionStep { g, h, f })
    }
}

/// Parses the distortion-file format: a header line `L <n>` followed by one
/// `n`-digit word per line. Zero words and duplicates are rejected.
pub fn parse_distortion_file(text: &str) -> Result<DistortionSet> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim_end_matches('\r')));
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let len: usize = header
        .strip_prefix("L ")
        .and_then(|n| n.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::parse(1, format!("expected header \"L <n>\", found {header:?}")))?;
    let mut words = Vec::new();
    let mut seen = HashSet::new();
    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        let w: BitWord = text
            .parse()
            .map_err(|_| Error::parse(line, format!("not a binary word: {text:?}")))?;
        if w.len() != len {
            return Err(Error::parse(line, format!("expected {len} digits, found {}", w.len())));
        }
        if w.is_zero() {
            return Err(Error::parse(line, "the zero word is not a distortion"));
        }
        if !seen.insert(w.clone()) {
            return Err(Error::parse(line, format!("duplicate distortion {w}")));
        }
        words.push(w);
    }
    DistortionSet::explicit(len, words)
}

/// Renders any distortion set in the file format.
pub fn to_distortion_file(set: &DistortionSet) -> String {
    let mut out = format!("L {}\n", set.message_len());
    for w in set.members() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}
