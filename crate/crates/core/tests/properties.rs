use std::collections::HashSet;

use proptest::prelude::*;

use linhash::bounded::{construct_alg3, BoundedWeightParams};
use linhash::codefile;
use linhash::general::{construct_corrector, construct_detector};
use linhash::verify::{ball_nonzero_check, BallCheck};
use linhash::{BitWord, CodeSpec, DistortionSet, Error, LinearHashFunction, Mode, SyndromeTable};

fn distortion_set() -> impl Strategy<Value = DistortionSet> {
    (4usize..=10).prop_flat_map(|len| {
        proptest::collection::hash_set(1u64..(1 << len), 1..12).prop_map(move |set| {
            let words = set.into_iter().map(|m| BitWord::from_u64(len, m)).collect();
            DistortionSet::explicit(len, words).unwrap()
        })
    })
}

fn spec_strategy() -> impl Strategy<Value = CodeSpec> {
    (2usize..=12, 1usize..=4, any::<u64>(), any::<bool>()).prop_filter_map(
        "l < L",
        |(len, l, bits, correct)| {
            if l >= len {
                return None;
            }
            let mut table: Vec<BitWord> = (0..len - l)
                .map(|k| BitWord::from_u64(l, bits.rotate_left(5 * k as u32) & ((1 << l) - 1)))
                .collect();
            table.extend((1..=l).map(|j| BitWord::unit(l, j).unwrap()));
            let h = LinearHashFunction::new(l, table).unwrap();
            let mode = if correct { Mode::Correct } else { Mode::Detect };
            Some(CodeSpec::with_trailing_checks(h, mode).unwrap())
        },
    )
}

proptest! {
    #[test]
    fn detector_flags_every_distortion(d in distortion_set()) {
        match construct_detector(&d) {
            Ok(r) => {
                let spec = r.to_spec(&d).unwrap();
                for e in d.members() {
                    prop_assert!(!spec.syndrome(&e).unwrap().is_zero());
                    let x = spec.encode(&BitWord::from_u64(spec.info_len(), 1)).unwrap();
                    prop_assert!(spec.syndrome(&(&x ^ &e)).unwrap() == spec.syndrome(&e).unwrap());
                }
            }
            Err(Error::NoSolution { check_bits, message_len }) => prop_assert!(check_bits >= message_len),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn corrector_is_injective(d in distortion_set()) {
        match construct_corrector(&d) {
            Ok(r) => {
                let spec = r.to_spec(&d).unwrap();
                let mut seen = HashSet::new();
                seen.insert(BitWord::zeros(spec.check_len()));
                for e in d.members() {
                    prop_assert!(seen.insert(spec.syndrome(&e).unwrap()));
                }
                prop_assert!(SyndromeTable::build(&spec, &d).is_ok());
            }
            Err(Error::NoSolution { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn encode_lands_in_kernel(spec in spec_strategy(), m in any::<u64>()) {
        let k = spec.info_len();
        let info = BitWord::from_u64(k, m & ((1u64 << k) - 1));
        let x = spec.encode(&info).unwrap();
        prop_assert!(spec.syndrome(&x).unwrap().is_zero());
        prop_assert_eq!(spec.extract_info(&x).unwrap(), info);
    }

    #[test]
    fn codefile_roundtrip(spec in spec_strategy(), note in "[a-z0-9 =:]{0,12}") {
        let spec = spec.with_metadata("note", note);
        let text = codefile::to_string(&spec, None);
        let back = codefile::parse(&text).unwrap();
        prop_assert_eq!(&back.spec, &spec);
        prop_assert_eq!(codefile::to_string(&back.spec, None), text);
    }

    #[test]
    fn alg3_success_iff_ball_check(len in 6usize..=16, d in 2usize..=4, delta in 0usize..=3, seed in any::<u64>()) {
        prop_assume!(d < len);
        match construct_alg3(&BoundedWeightParams::new(len, d).with_randomness(delta, seed)) {
            Ok((h, _)) => prop_assert_eq!(ball_nonzero_check(&h, d).unwrap(), BallCheck::Pass),
            Err(Error::ConstructionFailed { rejected, .. }) => {
                prop_assert!(ball_nonzero_check(&rejected, d).unwrap() != BallCheck::Pass)
            }
            Err(Error::InvalidParameters(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
