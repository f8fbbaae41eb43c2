//! Brute-force oracles for constructed codes and the Varshamov-Gilbert reference.
//!
//! These deliberately share no code with the constructors beyond
//! [`LinearHashFunction::eval`] and the codec: the ball check streams
//! `B^L_{d-1}` word by word, and the distance oracle enumerates every codeword.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitword::{ball, BitWord};
use crate::bounded::{ball_size, check_bits_vg};
use crate::codec::{CodeSpec, Correction, Detection, Mode, SyndromeTable};
use crate::distortions::DistortionSet;
use crate::error::{Error, Result};
use crate::hashfun::LinearHashFunction;

/// Largest ball the streaming check will walk.
pub const BALL_LIMIT: u64 = 1 << 24;
/// Largest `L - l` the codeword enumeration accepts.
pub const MAX_INFO_BITS: usize = 16;
/// Largest `L - l` for which the pairwise distance oracle also runs.
pub const MAX_PAIRWISE_INFO_BITS: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BallCheck {
    Pass,
    Counterexample(BitWord),
}

/// `λ(v) ≠ 0` for every nonzero `v` of weight at most `d - 1`; equivalent to
/// a minimum distance of at least `d` for the kernel of `λ`.
pub fn ball_nonzero_check(h: &LinearHashFunction, distance: usize) -> Result<BallCheck> {
    if distance < 2 {
        return Err(Error::InvalidParameters("ball check needs d >= 2".into()));
    }
    let len = h.message_len();
    let radius = (distance - 1).min(len);
    if ball_size(len, radius) > BigUint::from(BALL_LIMIT) {
        return Err(Error::InstanceTooLarge(format!(
            "B^{len}_{radius} exceeds {BALL_LIMIT} words"
        )));
    }
    for v in ball(len, radius, len)?.skip(1) {
        if h.eval(&v)?.is_zero() {
            return Ok(BallCheck::Counterexample(v));
        }
    }
    Ok(BallCheck::Pass)
}

fn all_info_words(info_len: usize) -> impl Iterator<Item = BitWord> {
    (0u64..1 << info_len).map(move |m| BitWord::from_u64(info_len, m))
}

fn all_codewords(spec: &CodeSpec) -> Result<Vec<BitWord>> {
    let k = spec.info_len();
    if k > MAX_INFO_BITS {
        return Err(Error::InstanceTooLarge(format!(
            "{k} information bits exceed {MAX_INFO_BITS}"
        )));
    }
    all_info_words(k).map(|m| spec.encode(&m)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDistance {
    /// Minimum weight over nonzero codewords.
    pub by_weight: usize,
    /// Minimum over all codeword pairs, when the pair count is small enough.
    pub pairwise: Option<usize>,
}

/// Minimum Hamming distance of the encoding set, by exhaustive enumeration.
///
/// The weight-based and pairwise values are cross-checked; a disagreement
/// (impossible for a linear code) is an error.
pub fn min_distance_bruteforce(spec: &CodeSpec) -> Result<MinDistance> {
    let words = all_codewords(spec)?;
    let by_weight = words
        .iter()
        .filter(|w| !w.is_zero())
        .map(BitWord::weight)
        .min()
        .ok_or_else(|| Error::InvariantViolation("code has a single codeword".into()))?;
    let pairwise = if spec.info_len() <= MAX_PAIRWISE_INFO_BITS {
        Some(pairwise_min(&words))
    } else {
        None
    };
    if let Some(p) = pairwise {
        if p != by_weight {
            return Err(Error::InvariantViolation(format!(
                "pairwise distance {p} differs from minimum weight {by_weight}"
            )));
        }
    }
    Ok(MinDistance {
        by_weight,
        pairwise,
    })
}

fn pairwise_min(words: &[BitWord]) -> usize {
    let packed: Option<Vec<u64>> = words.iter().map(BitWord::to_u64).collect();
    let mut best = usize::MAX;
    match packed {
        Some(p) => {
            for (i, a) in p.iter().enumerate() {
                for b in &p[i + 1..] {
                    best = best.min((a ^ b).count_ones() as usize);
                }
            }
        }
        None => {
            for (i, a) in words.iter().enumerate() {
                for b in &words[i + 1..] {
                    best = best.min(a.hamming_distance(b).expect("equal lengths"));
                }
            }
        }
    }
    best
}

/// `2^{L - ⌈log2(1 + Σ_{i=0}^{d-2} C(L-1, i))⌉}`: the code size the
/// Varshamov-Gilbert bound guarantees for minimum distance `d`.
pub fn vg_bound(message_len: usize, distance: usize) -> Result<BigUint> {
    if message_len < 2 || distance < 2 || distance > message_len {
        return Err(Error::InvalidParameters(format!(
            "need L >= 2 and 2 <= d <= L, got L = {message_len}, d = {distance}"
        )));
    }
    let l = if distance < message_len {
        check_bits_vg(message_len, distance)?
    } else {
        crate::bounded::ceil_log2(&(ball_size(message_len - 1, distance - 2) + 1u32))
    };
    Ok(BigUint::one() << (message_len - l))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    pub min_distance: Option<usize>,
    pub ball_check_max_weight: Option<usize>,
    pub counterexample: Option<Vec<BitWord>>,
    pub exhaustive: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a failure together with its witness words; the first one recorded wins.
    pub fn fail_with(&mut self, name: &str, detail: impl Into<String>, witness: Vec<BitWord>) {
        self.record(name, false, detail);
        if self.counterexample.is_none() {
            self.counterexample = Some(witness);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.min_distance = self.min_distance.or(other.min_distance);
        self.ball_check_max_weight = self.ball_check_max_weight.or(other.ball_check_max_weight);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.exhaustive &= other.exhaustive;
    }

    /// `key=value` lines for machine consumption.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status={}", if self.passed() { "pass" } else { "fail" });
        let _ = writeln!(out, "exhaustive={}", self.exhaustive);
        if let Some(d) = self.min_distance {
            let _ = writeln!(out, "min_distance={d}");
        }
        if let Some(w) = self.ball_check_max_weight {
            let _ = writeln!(out, "ball_check_max_weight={w}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "check.{}={}", c.name, if c.passed { "pass" } else { "fail" });
        }
        if let Some(words) = &self.counterexample {
            let joined: Vec<String> = words.iter().map(BitWord::to_string).collect();
            let _ = writeln!(out, "counterexample={}", joined.join(","));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verification {} ({})",
            if self.passed() { "PASSED" } else { "FAILED" },
            if self.exhaustive { "exhaustive" } else { "sampled" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        if let Some(d) = self.min_distance {
            writeln!(f, "  min_distance = {d}")?;
        }
        if let Some(words) = &self.counterexample {
            let joined: Vec<String> = words.iter().map(BitWord::to_string).collect();
            writeln!(f, "  counterexample: {}", joined.join(" "))?;
        }
        Ok(())
    }
}

/// Ball check plus exhaustive distance, cross-checked against each other.
pub fn verify_distance(spec: &CodeSpec, distance: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        exhaustive: true,
        ball_check_max_weight: Some(distance - 1),
        ..Default::default()
    };
    let ball = ball_nonzero_check(spec.hash(), distance)?;
    match &ball {
        BallCheck::Pass => report.record(
            "ball_nonzero",
            true,
            format!("no nonzero word of weight <= {} hashes to zero", distance - 1),
        ),
        BallCheck::Counterexample(v) => report.fail_with(
            "ball_nonzero",
            format!("{v} hashes to zero"),
            vec![v.clone()],
        ),
    }
    if spec.info_len() <= MAX_INFO_BITS {
        let md = min_distance_bruteforce(spec)?;
        report.min_distance = Some(md.by_weight);
        report.record(
            "min_distance",
            md.by_weight >= distance,
            format!("minimum distance {} (target {distance})", md.by_weight),
        );
        let agree = (ball == BallCheck::Pass) == (md.by_weight >= distance);
        report.record(
            "ball_vs_distance",
            agree,
            "ball check and distance oracle agree".to_string(),
        );
    } else {
        report.exhaustive = false;
    }
    Ok(report)
}

/// Round trips `(info, distortion)` pairs through the channel model.
///
/// Detection codes must flag every corrupted frame and pass every clean one;
/// correction codes must recover the codeword and the distortion exactly.
/// The whole product space is covered when it has at most `trials` elements.
pub fn fuzz_roundtrip(
    spec: &CodeSpec,
    distortions: &DistortionSet,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    Error::check_len(spec.message_len(), distortions.message_len())?;
    let members: Vec<BitWord> = distortions.members().collect();
    let table = match spec.mode() {
        Mode::Correct => Some(SyndromeTable::build(spec, distortions)?),
        Mode::Detect => None,
    };
    let k = spec.info_len();
    let space = if k >= 64 {
        None
    } else {
        (1u128 << k).checked_mul(members.len() as u128 + 1)
    };
    let exhaustive = space.is_some_and(|s| s <= trials as u128);

    let mut report = VerificationReport {
        exhaustive,
        ..Default::default()
    };
    let mut failures = 0usize;
    let mut runs = 0usize;
    let mut first_failure: Option<Vec<BitWord>> = None;

    let mut run_one = |info: &BitWord, d: Option<&BitWord>| -> Result<()> {
        runs += 1;
        let x = spec.encode(info)?;
        let y = match d {
            Some(d) => &x ^ d,
            None => x.clone(),
        };
        let ok = match (&table, d) {
            (None, None) => spec.detect(&y)? == Detection::Clean,
            (None, Some(_)) => matches!(spec.detect(&y)?, Detection::ErrorDetected(_)),
            (Some(t), None) => spec.correct(t, &y)? == Correction::Clean,
            (Some(t), Some(d)) => {
                spec.correct(t, &y)?
                    == Correction::Corrected {
                        codeword: x.clone(),
                        distortion: d.clone(),
                    }
            }
        };
        if !ok {
            failures += 1;
            if first_failure.is_none() {
                let mut w = vec![info.clone(), y.clone()];
                w.extend(d.cloned());
                first_failure = Some(w);
            }
        }
        Ok(())
    };

    if exhaustive {
        for info in all_info_words(k) {
            run_one(&info, None)?;
            for d in &members {
                run_one(&info, Some(d))?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut info = BitWord::zeros(k);
            for i in 1..=k {
                info.set(i, rng.gen());
            }
            let pick = rng.gen_range(0..=members.len());
            run_one(&info, members.get(pick))?;
        }
    }

    let name = match spec.mode() {
        Mode::Detect => "detect_roundtrip",
        Mode::Correct => "correct_roundtrip",
    };
    let detail = format!("{runs} frames, {failures} failures, |D| = {}", members.len());
    match first_failure {
        Some(w) => report.fail_with(name, detail, w),
        None => report.record(name, true, detail),
    }
    Ok(report)
}

/// `λ(d) ≠ 0` for every `d ∈ D` (detection) or `λ` injective on `D ∪ {0}`
/// (correction).
pub fn distortion_check(spec: &CodeSpec, distortions: &DistortionSet) -> Result<VerificationReport> {
    Error::check_len(spec.message_len(), distortions.message_len())?;
    let mut report = VerificationReport {
        exhaustive: true,
        ..Default::default()
    };
    match spec.mode() {
        Mode::Detect => {
            let mut count = 0usize;
            for d in distortions.members() {
                count += 1;
                if spec.hash().eval(&d)?.is_zero() {
                    report.fail_with("nonzero_on_d", format!("{d} hashes to zero"), vec![d]);
                    return Ok(report);
                }
            }
            report.record("nonzero_on_d", true, format!("all {count} distortions detected"));
        }
        Mode::Correct => match SyndromeTable::build(spec, distortions) {
            Ok(table) => report.record(
                "syndrome_injective",
                true,
                format!("{} distinct nonzero syndromes", table.len()),
            ),
            Err(Error::SyndromeCollision(a, b)) => {
                report.fail_with("syndrome_injective", format!("{a} and {b} collide"), vec![a, b])
            }
            Err(Error::ZeroSyndrome(d)) => {
                report.fail_with("syndrome_injective", format!("{d} hashes to zero"), vec![d])
            }
            Err(e) => return Err(e),
        },
    }
    Ok(report)
}

/// Distinct syndromes of `D`, used by reports.
pub fn syndrome_count(spec: &CodeSpec, distortions: &DistortionSet) -> Result<usize> {
    let set: HashSet<BitWord> = spec.hash().image(distortions.members())?;
    Ok(set.len())
}
