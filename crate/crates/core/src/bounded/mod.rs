//! Codes for a bounded number of bit errors.
//!
//! All three constructors build a pre-permutation table `λ̂` column by column:
//! the first `l` columns are the unit words `e^l_1, ..., e^l_l`, and column
//! `i > l` must avoid `λ̂(B^{i-1}_{d-2})`, which guarantees `λ(v) ≠ 0` for
//! every nonzero `v` of weight at most `d - 1`. A final reindexing moves the
//! unit columns to the end so the check bits are the last `l` positions.
//!
//! Construction cost is dominated by the image sets, bounded by
//! `Σ_{j<=d-2} C(L-1, j)` values; no asymptotic claim is tested here.

mod formulas;
mod uvz;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use formulas::{
    ball_size, binomial, ceil_log2, check_bits_improved, check_bits_vg, random_collision_budget,
    rational_to_decimal, success_bound, z_size,
};
pub use uvz::{uvz_sets, UvzSets};

use crate::bitword::{packed_order_key, Ball, BitWord};
use crate::error::{Error, Result};
use crate::hashfun::LinearHashFunction;

/// Identifier of the generator Algorithm 3 draws from.
pub const RNG_ID: &str = "chacha8";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundedWeightParams {
    pub message_len: usize,
    pub distance: usize,
    /// Extra check bits for Algorithm 3.
    pub delta: usize,
    pub seed: u64,
}

impl BoundedWeightParams {
    pub fn new(message_len: usize, distance: usize) -> Self {
        BoundedWeightParams {
            message_len,
            distance,
            delta: 0,
            seed: 0,
        }
    }

    pub fn with_randomness(mut self, delta: usize, seed: u64) -> Self {
        self.delta = delta;
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        formulas::check_domain(self.message_len, self.distance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg3,
}

impl Algorithm {
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg3 => "alg3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub algorithm: Algorithm,
    pub check_bits: usize,
    /// `λ̂(e^L_1), ..., λ̂(e^L_L)` before the final reindexing.
    pub pre_permutation: Vec<BitWord>,
    pub permuted: bool,
    pub rng: Option<&'static str>,
    pub seed: Option<u64>,
    pub delta: Option<usize>,
}

/// Images of `B^{i-1}_k` for `k = 0..=max_weight`, extended one column at a time
/// via `λ̂(B^i_k) = λ̂(B^{i-1}_k) ∪ (v_i ⊕ λ̂(B^{i-1}_{k-1}))`.
struct ImageLevels {
    levels: Vec<HashSet<u64>>,
}

impl ImageLevels {
    fn new(max_weight: usize) -> Self {
        ImageLevels {
            levels: (0..=max_weight).map(|_| HashSet::from([0u64])).collect(),
        }
    }

    fn level(&self, k: usize) -> &HashSet<u64> {
        &self.levels[k]
    }

    fn push(&mut self, column: u64) {
        for k in (1..self.levels.len()).rev() {
            let (lower, upper) = self.levels.split_at_mut(k);
            upper[0].extend(lower[k - 1].iter().map(|&x| x ^ column));
        }
    }
}

fn check_hash_width(l: usize) -> Result<()> {
    if l > 64 {
        return Err(Error::InstanceTooLarge(format!("{l} check bits exceed 64")));
    }
    Ok(())
}

/// Smallest `l`-bit word outside `forbidden` in weight-then-lexicographic order.
pub(crate) fn smallest_outside(l: usize, forbidden: &HashSet<u64>) -> Option<u64> {
    if l < 64 && forbidden.len() as u128 >= 1u128 << l {
        return None;
    }
    Ball::with_support(l, l, l)
        .expect("valid ball")
        .map(|w| w.to_u64().expect("l <= 64"))
        .find(|w| !forbidden.contains(w))
}

fn finish(
    algorithm: Algorithm,
    l: usize,
    pre: Vec<u64>,
    p: &BoundedWeightParams,
) -> Result<(LinearHashFunction, ConstructionTrace)> {
    let len = pre.len();
    // λ(e_i) = λ̂(e_{i+l}) for i <= L-l, λ(e_{L-l+i}) = λ̂(e_i)
    let mut columns = Vec::with_capacity(len);
    columns.extend_from_slice(&pre[l..]);
    columns.extend_from_slice(&pre[..l]);
    let hash = LinearHashFunction::from_packed(l, &columns)?;
    let random = algorithm == Algorithm::Alg3;
    let trace = ConstructionTrace {
        algorithm,
        check_bits: l,
        pre_permutation: pre.iter().map(|&v| BitWord::from_u64(l, v)).collect(),
        permuted: true,
        rng: random.then_some(RNG_ID),
        seed: random.then_some(p.seed),
        delta: random.then_some(p.delta),
    };
    Ok((hash, trace))
}

/// Algorithm 1: `l` from the Varshamov-Gilbert count, each later column the
/// smallest word outside `λ̂(B^{i-1}_{d-2})`.
pub fn construct_alg1(p: &BoundedWeightParams) -> Result<(LinearHashFunction, ConstructionTrace)> {
    p.validate()?;
    let l = check_bits_vg(p.message_len, p.distance)?;
    check_hash_width(l)?;
    let mut images = ImageLevels::new(p.distance - 2);
    let mut pre = Vec::with_capacity(p.message_len);
    for i in 1..=p.message_len {
        let v = if i <= l {
            1u64 << (i - 1)
        } else {
            smallest_outside(l, images.level(p.distance - 2))
                .ok_or(Error::InternalExhaustion { step: i })?
        };
        images.push(v);
        pre.push(v);
    }
    finish(Algorithm::Alg1, l, pre, p)
}

/// Algorithm 2: `l` from the improved count; column `i > l` is the smallest
/// word of `λ̂(B^{i-1}_{d-1}) \ λ̂(B^{i-1}_{d-2})`. The result is ball-checked
/// before it is returned.
pub fn construct_alg2(p: &BoundedWeightParams) -> Result<(LinearHashFunction, ConstructionTrace)> {
    p.validate()?;
    let d = p.distance;
    let l = check_bits_improved(p.message_len, d)?;
    check_hash_width(l)?;
    let mut images = ImageLevels::new(d - 1);
    let mut pre = Vec::with_capacity(p.message_len);
    for i in 1..=p.message_len {
        let v = if i <= l {
            1u64 << (i - 1)
        } else {
            let forbidden = images.level(d - 2);
            images
                .level(d - 1)
                .iter()
                .copied()
                .filter(|w| !forbidden.contains(w))
                .min_by_key(|&w| packed_order_key(w))
                .ok_or(Error::ChoiceSetEmpty { step: i })?
        };
        images.push(v);
        pre.push(v);
    }
    let (hash, trace) = finish(Algorithm::Alg2, l, pre, p)?;
    if let crate::verify::BallCheck::Counterexample(w) = crate::verify::ball_nonzero_check(&hash, d)? {
        return Err(Error::PostCondition {
            check: "alg2 ball check",
            witness: w,
        });
    }
    Ok((hash, trace))
}

/// Algorithm 3: `l + Δ` check bits, columns past the first `l + Δ` drawn
/// uniformly from the seeded generator. Fails with `ConstructionFailed` when
/// some draw lands in `λ̂(B^{i-1}_{d-2})`.
pub fn construct_alg3(p: &BoundedWeightParams) -> Result<(LinearHashFunction, ConstructionTrace)> {
    p.validate()?;
    let base = check_bits_vg(p.message_len, p.distance)?;
    let l = base + p.delta;
    if l >= p.message_len {
        return Err(Error::InvalidParameters(format!(
            "l + delta = {l} leaves no information bits for L = {}",
            p.message_len
        )));
    }
    check_hash_width(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut images = ImageLevels::new(p.distance - 2);
    let mut pre = Vec::with_capacity(p.message_len);
    let mut failed_at = None;
    for i in 1..=p.message_len {
        let v = if i <= l {
            1u64 << (i - 1)
        } else {
            (0..l).fold(0u64, |acc, bit| acc | (rng.gen::<bool>() as u64) << bit)
        };
        if failed_at.is_none() && images.level(p.distance - 2).contains(&v) {
            failed_at = Some(i);
        }
        images.push(v);
        pre.push(v);
    }
    let (hash, trace) = finish(Algorithm::Alg3, l, pre, p)?;
    match failed_at {
        Some(step) => Err(Error::ConstructionFailed {
            seed: p.seed,
            step,
            rejected: Box::new(hash),
        }),
        None => Ok((hash, trace)),
    }
}
