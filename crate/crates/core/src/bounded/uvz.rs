//! The sets `Z`, `U`, `V` behind the improved check-bit count.
//!
//! `Z` holds the words `x y 00` with `|x| = d-1`, `|y| = L-d-1`,
//! `||x|| + ||y|| <= d-3` and `||y|| <= ||x|| - 1`. Translating `Z` by
//! `0...010` gives `U`, by `1^{d-1} 0...0` gives `V`. Once Algorithm 2 has
//! forced `λ̂(0...010) = λ̂(1^{d-1}0...0)`, every `u ∈ U` shares its hash value
//! with a distinct `v ∈ V`, so `λ̂(B^{L-1}_{d-2})` has at most
//! `|B^{L-1}_{d-2}| - |Z|` elements.

use std::collections::HashSet;

use crate::bitword::{BitWord, Ball};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct UvzSets {
    pub z: Vec<BitWord>,
    pub u: Vec<BitWord>,
    pub v: Vec<BitWord>,
}

/// Materializes `Z`, `U`, `V` for `L > d >= 2` and checks that `U` and `V`
/// are disjoint, equally sized, and inside `B^{L-1}_{d-2}`.
///
/// All three sets are empty for `d <= 3`.
pub fn uvz_sets(message_len: usize, distance: usize) -> Result<UvzSets> {
    super::formulas::check_domain(message_len, distance)?;
    let len = message_len;
    let d = distance;
    if d < 4 {
        return Ok(UvzSets {
            z: Vec::new(),
            u: Vec::new(),
            v: Vec::new(),
        });
    }
    let x_len = d - 1;
    let y_len = len - d - 1;

    let mut z = Vec::new();
    for x in Ball::with_support(x_len, d - 3, x_len)? {
        let s = x.weight();
        if s == 0 {
            continue;
        }
        let max_j = (s - 1).min(d - 3 - s);
        let ys: Vec<BitWord> = if y_len == 0 {
            vec![]
        } else {
            Ball::with_support(y_len, max_j.min(y_len), y_len)?.collect()
        };
        let mut emit = |y: Option<&BitWord>| {
            let mut word = BitWord::zeros(len);
            for p in x.ones() {
                word.set(p, true);
            }
            if let Some(y) = y {
                for p in y.ones() {
                    word.set(x_len + p, true);
                }
            }
            z.push(word);
        };
        if y_len == 0 {
            emit(None);
        } else {
            for y in &ys {
                emit(Some(y));
            }
        }
    }

    let shift_u = BitWord::unit(len, len - 1)?;
    let shift_v = BitWord::from_support(len, &(1..d).collect::<Vec<_>>())?;
    let u: Vec<BitWord> = z.iter().map(|w| w ^ &shift_u).collect();
    let v: Vec<BitWord> = z.iter().map(|w| w ^ &shift_v).collect();

    let sets = UvzSets { z, u, v };
    sets.check_claims(len, d)?;
    Ok(sets)
}

impl UvzSets {
    fn check_claims(&self, len: usize, d: usize) -> Result<()> {
        let u: HashSet<&BitWord> = self.u.iter().collect();
        let v: HashSet<&BitWord> = self.v.iter().collect();
        if u.len() != self.z.len() || v.len() != self.z.len() {
            return Err(Error::InvariantViolation("|U| = |Z| = |V|".into()));
        }
        if u.iter().any(|w| v.contains(w)) {
            return Err(Error::InvariantViolation("U and V are disjoint".into()));
        }
        let in_ball = |w: &BitWord| w.weight() <= d - 2 && !w.get(len);
        if !self.u.iter().chain(&self.v).all(in_ball) {
            return Err(Error::InvariantViolation("U, V inside B^{L-1}_{d-2}".into()));
        }
        if !self.u.iter().all(|w| w.get(len - 1) && !w.get(len))
            || !self.v.iter().all(|w| !w.get(len - 1) && !w.get(len))
        {
            return Err(Error::InvariantViolation("U ends in 10, V ends in 00".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounded::formulas::z_size;
    use num_bigint::BigUint;

    #[test]
    fn d4_is_not_empty() {
        // ||x|| = 1, ||y|| = 0 is admissible
        let sets = uvz_sets(8, 4).unwrap();
        let z: Vec<String> = sets.z.iter().map(|w| w.to_string()).collect();
        assert_eq!(z, ["10000000", "01000000", "00100000"]);
        assert_eq!(z_size(8, 4), BigUint::from(3u32));
    }

    #[test]
    fn small_d_is_empty() {
        assert!(uvz_sets(10, 3).unwrap().z.is_empty());
        assert!(uvz_sets(10, 2).unwrap().u.is_empty());
    }

    #[test]
    fn sizes_match_closed_form() {
        for d in 4..=8 {
            for len in d + 1..=20 {
                let sets = uvz_sets(len, d).unwrap();
                assert_eq!(BigUint::from(sets.z.len()), z_size(len, d), "L={len} d={d}");
            }
        }
        assert_eq!(uvz_sets(12, 6).unwrap().z.len(), 75);
    }

    #[test]
    fn last_two_digits() {
        let sets = uvz_sets(12, 7).unwrap();
        assert!(sets.u.iter().all(|w| w.to_string().ends_with("10")));
        assert!(sets.v.iter().all(|w| w.to_string().ends_with("00")));
    }
}
