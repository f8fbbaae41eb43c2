#![no_main]

use libfuzzer_sys::fuzz_target;
use linhash::BitWord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = text.parse::<BitWord>() {
        assert_eq!(w.to_string(), text);
        assert_eq!(w.to_string().parse::<BitWord>().unwrap(), w);
        assert!(w.weight() <= w.len());
    }
});
