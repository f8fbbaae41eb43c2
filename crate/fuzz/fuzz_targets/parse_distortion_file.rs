#![no_main]

use libfuzzer_sys::fuzz_target;
use linhash::distortions::{parse_distortion_file, to_distortion_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_distortion_file(text) {
        let saved = to_distortion_file(&set);
        let again = parse_distortion_file(&saved).expect("saved set reloads");
        assert_eq!(again, set);
    }
});
