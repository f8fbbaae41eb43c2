//! Exact check-bit counts and the randomized success bound.
//!
//! Everything here is big-integer arithmetic; `⌈log2 n⌉` is the bit length of
//! `n - 1`, never a floating-point logarithm.

use num_bigint::BigUint;
use num_integer::binomial as num_binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_binomial(BigUint::from(n), BigUint::from(k))
}

/// `⌈log2 n⌉` for `n >= 1`.
pub fn ceil_log2(n: &BigUint) -> usize {
    assert!(!n.is_zero(), "log of zero");
    if n.is_one() {
        0
    } else {
        (n - 1u32).bits() as usize
    }
}

/// `|B^m_n| = Σ_{i=0}^{n} C(m, i)`.
pub fn ball_size(m: usize, n: usize) -> BigUint {
    (0..=n).map(|i| binomial(m, i)).sum()
}

pub(crate) fn check_domain(message_len: usize, distance: usize) -> Result<()> {
    if distance < 2 || distance >= message_len {
        return Err(Error::InvalidParameters(format!(
            "need L > d >= 2, got L = {message_len}, d = {distance}"
        )));
    }
    Ok(())
}

fn bits_or_no_solution(message_len: usize, count: &BigUint) -> Result<usize> {
    let l = ceil_log2(count);
    if l >= message_len {
        Err(Error::NoSolution {
            message_len,
            check_bits: l,
        })
    } else {
        Ok(l)
    }
}

/// Check bits of Algorithm 1: `⌈log2(Σ_{i=0}^{d-2} C(L-1, i) + 1)⌉`.
pub fn check_bits_vg(message_len: usize, distance: usize) -> Result<usize> {
    check_domain(message_len, distance)?;
    let count = ball_size(message_len - 1, distance - 2) + 1u32;
    bits_or_no_solution(message_len, &count)
}

/// `|Z|` in closed form: `Σ_{s=1}^{d-3} C(d-1, s) Σ_{j=0}^{min(s-1, d-3-s)} C(L-d-1, j)`.
///
/// `s = ||x||` and `j = ||y||` range over `j <= s - 1` and `s + j <= d - 3`;
/// the inner range is pinned to the exhaustive enumeration of `Z`.
pub fn z_size(message_len: usize, distance: usize) -> BigUint {
    if distance < 4 || message_len <= distance {
        return BigUint::zero();
    }
    let tail = message_len - distance - 1;
    (1..=distance - 3)
        .map(|s| {
            let inner: BigUint = (0..=(s - 1).min(distance - 3 - s))
                .map(|j| binomial(tail, j))
                .sum();
            binomial(distance - 1, s) * inner
        })
        .sum()
}

/// Check bits of Algorithm 2: the Algorithm 1 count reduced by `|Z|` pairs
/// of ball words forced to share a hash value.
pub fn check_bits_improved(message_len: usize, distance: usize) -> Result<usize> {
    check_domain(message_len, distance)?;
    let count = ball_size(message_len - 1, distance - 2) - z_size(message_len, distance) + 1u32;
    bits_or_no_solution(message_len, &count)
}

/// `Σ_{j=0}^{d-2} C(L, j+1)`, the collision budget of the randomized construction.
pub fn random_collision_budget(message_len: usize, distance: usize) -> BigUint {
    (0..=distance - 2).map(|j| binomial(message_len, j + 1)).sum()
}

/// Lower bound on the success probability of Algorithm 3:
/// `max(0, 1 - 2^{-(l+Δ)} Σ_{j=0}^{d-2} C(L, j+1))` as an exact rational.
pub fn success_bound(message_len: usize, distance: usize, delta: usize) -> Result<BigRational> {
    let l = check_bits_vg(message_len, distance)?;
    let budget = random_collision_budget(message_len, distance);
    let denom = BigUint::one() << (l + delta);
    if budget >= denom {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new((denom.clone() - budget).into(), denom.into()))
}

/// Decimal rendering of a non-negative rational, truncated to `digits` places.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let numer = r.numer().to_biguint().expect("non-negative");
    let denom = r.denom().to_biguint().expect("positive");
    let int = &numer / &denom;
    let mut rem = &numer % &denom;
    let mut out = int.to_string();
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            rem *= 10u32;
            out.push_str(&(&rem / &denom).to_string());
            rem %= &denom;
        }
    }
    out
}
