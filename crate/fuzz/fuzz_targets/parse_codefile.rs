#![no_main]

use libfuzzer_sys::fuzz_target;
use linhash::codefile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = codefile::parse(text) {
        let saved = codefile::to_string(&file.spec, file.syndromes.as_ref());
        let again = codefile::parse(&saved).expect("saved file reloads");
        assert_eq!(again, file);
        assert_eq!(codefile::to_string(&again.spec, again.syndromes.as_ref()), saved);
    }
});
