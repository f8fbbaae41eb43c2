//! Codes for an arbitrary distortion set `D`, check symbols at `1..=l`.
//!
//! The detector needs `λ(d) ≠ 0` on `D`; column `i > l` avoids `λ(D'_i)`.
//! The corrector needs `λ` injective on `D ∪ {0}`; column `i > l` avoids
//! `λ(F_i)`. In both cases `l` is the smallest value with room for one more
//! word than the largest forbidden set.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitword::BitWord;
use crate::bounded::smallest_outside;
use crate::codec::{CodeSpec, Mode};
use crate::distortions::DistortionSet;
use crate::error::{Error, Result};
use crate::hashfun::{eval_packed, LinearHashFunction};

/// Post-construction checks walk all of `D` up to this size and sample beyond it.
pub const EXHAUSTIVE_LIMIT: usize = 1 << 20;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Exhaustive,
    Sampled { checked: usize, total: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralCodeResult {
    pub hash: LinearHashFunction,
    pub check_positions: Vec<usize>,
    pub mode: Mode,
    /// `max_i |D'_i|` (detection) or `max_i |F_i|` (correction).
    pub max_derived: usize,
    pub verification: Verification,
}

impl GeneralCodeResult {
    pub fn to_spec(&self, distortions: &DistortionSet) -> Result<CodeSpec> {
        let spec = CodeSpec::new(self.hash.clone(), self.check_positions.clone(), self.mode)?;
        Ok(spec
            .with_metadata("constructor", match self.mode {
                Mode::Detect => "general-detect",
                Mode::Correct => "general-correct",
            })
            .with_metadata("distortions", distortions.descriptor())
            .with_metadata("max_derived", self.max_derived))
    }
}

/// Smallest `l >= 1` with `2^l - 1 >= m`.
fn bits_for(m: usize) -> usize {
    let mut l = 1;
    while (1u128 << l) - 1 < m as u128 {
        l += 1;
    }
    l
}

fn pick_l(len: usize, max_derived: usize) -> Result<usize> {
    let l = bits_for(max_derived);
    if l >= len {
        return Err(Error::NoSolution {
            message_len: len,
            check_bits: l,
        });
    }
    if l > 64 {
        return Err(Error::InstanceTooLarge(format!("{l} check bits exceed 64")));
    }
    Ok(l)
}

fn require_nonempty(distortions: &DistortionSet) -> Result<()> {
    if distortions.members().next().is_none() {
        return Err(Error::InvalidParameters("distortion set is empty".into()));
    }
    Ok(())
}

fn sampler(total: usize) -> (Verification, Box<dyn FnMut() -> bool>) {
    if total <= EXHAUSTIVE_LIMIT {
        return (Verification::Exhaustive, Box::new(|| true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let p = EXHAUSTIVE_LIMIT as f64 / total as f64;
    (
        Verification::Sampled {
            checked: 0,
            total,
        },
        Box::new(move || rng.gen_bool(p)),
    )
}

/// Detection code: `λ(e_i) = e^l_i` for `i <= l`, otherwise the smallest word outside `λ(D'_i)`.
pub fn construct_detector(distortions: &DistortionSet) -> Result<GeneralCodeResult> {
    require_nonempty(distortions)?;
    let len = distortions.message_len();
    let primes = distortions.all_detection_primes();
    let max_derived = primes.iter().map(Vec::len).max().unwrap_or(0);
    let l = pick_l(len, max_derived)?;

    let mut cols: Vec<u64> = Vec::with_capacity(len);
    for (i, prime) in primes.iter().enumerate().skip(1) {
        let v = if i <= l {
            1u64 << (i - 1)
        } else {
            let forbidden: HashSet<u64> = prime.iter().map(|x| eval_packed(&cols, x)).collect();
            smallest_outside(l, &forbidden).ok_or(Error::InternalExhaustion { step: i })?
        };
        cols.push(v);
    }
    let hash = LinearHashFunction::from_packed(l, &cols)?;

    let total = distortions.count();
    let (mut verification, mut take) = sampler(total);
    let mut checked = 0;
    for d in distortions.members() {
        if !take() {
            continue;
        }
        checked += 1;
        if eval_packed(&cols, &d) == 0 {
            return Err(Error::PostCondition {
                check: "detector nonzero on D",
                witness: d,
            });
        }
    }
    if let Verification::Sampled { checked: c, .. } = &mut verification {
        *c = checked;
    }
    Ok(GeneralCodeResult {
        hash,
        check_positions: (1..=l).collect(),
        mode: Mode::Detect,
        max_derived,
        verification,
    })
}

/// Correction code: `λ(e_i) = e^l_i` for `i <= l`, otherwise the smallest word outside `λ(F_i)`.
pub fn construct_corrector(distortions: &DistortionSet) -> Result<GeneralCodeResult> {
    require_nonempty(distortions)?;
    let len = distortions.message_len();
    let max_derived = distortions
        .correction_steps()
        .map(|s| s.f.len())
        .max()
        .unwrap_or(0);
    let l = pick_l(len, max_derived)?;

    let mut cols: Vec<u64> = Vec::with_capacity(len);
    for (k, step) in distortions.correction_steps().enumerate() {
        let i = k + 1;
        let v = if i <= l {
            1u64 << (i - 1)
        } else {
            let forbidden: HashSet<u64> = step.f.iter().map(|x| eval_packed(&cols, x)).collect();
            smallest_outside(l, &forbidden).ok_or(Error::InternalExhaustion { step: i })?
        };
        cols.push(v);
    }
    finish_corrector(distortions, l, cols, max_derived)
}

/// Checks a caller-supplied corrector table against the construction rule
/// (units at `1..=l`, every later column outside `λ(F_i)`) and verifies it.
pub fn replay_corrector(distortions: &DistortionSet, table: &[BitWord]) -> Result<GeneralCodeResult> {
    require_nonempty(distortions)?;
    let len = distortions.message_len();
    Error::check_len(len, table.len())?;
    let l = table[0].len();
    let max_derived = distortions
        .correction_steps()
        .map(|s| s.f.len())
        .max()
        .unwrap_or(0);
    if (1u128 << l.min(127)) - 1 < max_derived as u128 || l >= len || l > 64 {
        return Err(Error::InvalidParameters(format!(
            "{l} check bits cannot hold max |F_i| = {max_derived}"
        )));
    }
    let mut cols: Vec<u64> = Vec::with_capacity(len);
    for (k, step) in distortions.correction_steps().enumerate() {
        let i = k + 1;
        let v = &table[k];
        Error::check_len(l, v.len())?;
        let v = v.to_u64().expect("l <= 64");
        if i <= l && v != 1u64 << (i - 1) {
            return Err(Error::PostCondition {
                check: "unit column",
                witness: table[k].clone(),
            });
        }
        if i > l && step.f.iter().any(|x| eval_packed(&cols, x) == v) {
            return Err(Error::PostCondition {
                check: "column outside λ(F_i)",
                witness: table[k].clone(),
            });
        }
        cols.push(v);
    }
    finish_corrector(distortions, l, cols, max_derived)
}

fn finish_corrector(
    distortions: &DistortionSet,
    l: usize,
    cols: Vec<u64>,
    max_derived: usize,
) -> Result<GeneralCodeResult> {
    let hash = LinearHashFunction::from_packed(l, &cols)?;
    let total = distortions.count();
    let (mut verification, mut take) = sampler(total);
    let mut seen: HashMap<u64, BitWord> = HashMap::new();
    seen.insert(0, BitWord::zeros(distortions.message_len()));
    for d in distortions.members() {
        if !take() {
            continue;
        }
        let s = eval_packed(&cols, &d);
        if let Some(prev) = seen.get(&s) {
            return Err(if prev.is_zero() {
                Error::ZeroSyndrome(d)
            } else {
                Error::SyndromeCollision(prev.clone(), d)
            });
        }
        seen.insert(s, d);
    }
    if let Verification::Sampled { checked, .. } = &mut verification {
        *checked = seen.len() - 1;
    }
    Ok(GeneralCodeResult {
        hash,
        check_positions: (1..=l).collect(),
        mode: Mode::Correct,
        max_derived,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{Correction, SyndromeTable};
    use crate::distortions::BurstVariant;

    fn cols(h: &LinearHashFunction) -> Vec<String> {
        h.table().iter().map(|w| w.to_string()).collect()
    }

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn burst2() -> DistortionSet {
        DistortionSet::burst(6, 2, BurstVariant::Strict).unwrap()
    }

    #[test]
    fn bits_for_values() {
        assert_eq!(bits_for(0), 1);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 2);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 3);
        assert_eq!(bits_for(8), 4);
        assert_eq!(bits_for(15), 4);
        assert_eq!(bits_for(16), 5);
    }

    #[test]
    fn burst_detector() {
        let r = construct_detector(&burst2()).unwrap();
        assert_eq!(r.hash.hash_len(), 1);
        assert_eq!(cols(&r.hash), ["1", "0", "1", "0", "1", "0"]);
        assert_eq!(r.check_positions, [1]);
        assert_eq!(r.max_derived, 1);
        assert_eq!(r.verification, Verification::Exhaustive);
    }

    #[test]
    fn single_errors_give_parity() {
        for len in 2..=10 {
            let r = construct_detector(&DistortionSet::weight_ball(len, 1).unwrap()).unwrap();
            assert_eq!(r.hash.hash_len(), 1);
            assert!(r.hash.table().iter().all(|v| v.to_string() == "1"));
        }
    }

    #[test]
    fn everything_at_l3_has_no_solution() {
        let all = DistortionSet::weight_ball(3, 3).unwrap();
        match construct_detector(&all) {
            Err(Error::NoSolution { message_len: 3, check_bits: 3 }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn burst_corrector() {
        let d = burst2();
        let r = construct_corrector(&d).unwrap();
        assert_eq!(r.max_derived, 8);
        assert_eq!(r.hash.hash_len(), 4);
        assert_eq!(cols(&r.hash), ["1000", "0100", "0010", "0001", "1000", "0010"]);
        let spec = r.to_spec(&d).unwrap();
        let table = SyndromeTable::build(&spec, &d).unwrap();
        assert_eq!(table.len(), 5);
    }

    #[test]
    fn paper_choices_replay() {
        let d = burst2();
        let table: Vec<BitWord> = ["1000", "0100", "0010", "0001", "1111", "1000"]
            .iter()
            .map(|s| w(s))
            .collect();
        let r = replay_corrector(&d, &table).unwrap();
        let spec = r.to_spec(&d).unwrap();
        let st = SyndromeTable::build(&spec, &d).unwrap();
        let mut syndromes: Vec<String> = st.iter().map(|(s, _)| s.to_string()).collect();
        syndromes.sort();
        assert_eq!(syndromes, ["0011", "0110", "0111", "1100", "1110"]);
        match spec.correct(&st, &w("100110")).unwrap() {
            Correction::Corrected { codeword, distortion } => {
                assert_eq!(codeword, w("111110"));
                assert_eq!(distortion, w("011000"));
            }
            other => panic!("{other:?}"),
        }
        // a column inside λ(F_5) is refused
        let mut bad = table.clone();
        bad[4] = w("0000");
        assert!(replay_corrector(&d, &bad).is_err());
    }

    #[test]
    fn single_pattern_corrector() {
        let d = DistortionSet::explicit(4, vec![w("0110")]).unwrap();
        let r = construct_corrector(&d).unwrap();
        assert_eq!(r.max_derived, 2);
        assert_eq!(r.hash.hash_len(), 2);
        let spec = r.to_spec(&d).unwrap();
        let st = SyndromeTable::build(&spec, &d).unwrap();
        assert_eq!(st.len(), 1);
        let s = spec.syndrome(&w("0110")).unwrap();
        assert_eq!(st.get(&s), Some(&w("0110")));
    }

    #[test]
    fn single_error_corrector_l7() {
        let d = DistortionSet::weight_ball(7, 1).unwrap();
        let steps = d.correction_sets();
        let max_f = steps.iter().map(|s| s.f.len()).max().unwrap();
        let r = construct_corrector(&d).unwrap();
        assert_eq!(r.max_derived, max_f);
        assert_eq!(r.hash.hash_len(), 3);
        assert_eq!(cols(&r.hash), ["100", "010", "001", "110", "101", "011", "111"]);
    }

    #[test]
    fn corrector_roundtrip_exhaustive() {
        let sets = [
            burst2(),
            DistortionSet::burst(10, 3, BurstVariant::General).unwrap(),
            DistortionSet::weight_ball(9, 1).unwrap(),
            DistortionSet::weight_ball(12, 2).unwrap(),
            DistortionSet::explicit(5, vec![w("00111"), w("01110"), w("11100")]).unwrap(),
        ];
        for d in sets {
            let r = construct_corrector(&d).unwrap();
            let spec = r.to_spec(&d).unwrap();
            let st = SyndromeTable::build(&spec, &d).unwrap();
            let k = spec.info_len();
            for m in 0u64..1 << k {
                let m = BitWord::from_u64(k, m);
                let x = spec.encode(&m).unwrap();
                for e in d.members() {
                    match spec.correct(&st, &(&x ^ &e)).unwrap() {
                        Correction::Corrected { codeword, distortion } => {
                            assert_eq!(codeword, x);
                            assert_eq!(distortion, e);
                        }
                        other => panic!("{d}: {other:?}"),
                    }
                }
            }
        }
    }
}
