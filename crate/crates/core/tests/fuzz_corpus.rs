//! Replays the checked-in fuzz seeds on stable so parser regressions show up
//! without a libFuzzer toolchain.

use std::fs;
use std::path::PathBuf;

use linhash::codefile;
use linhash::distortions::{parse_distortion_file, to_distortion_file};
use linhash::frame::{read_frames, write_frames, Format};
use linhash::BitWord;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn codefile_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("parse_codefile") {
        let text = String::from_utf8(data).unwrap();
        if let Ok(file) = codefile::parse(&text) {
            assert_eq!(codefile::to_string(&file.spec, file.syndromes.as_ref()), text, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn distortion_file_seeds() {
    for (name, data) in seeds("parse_distortion_file") {
        let text = String::from_utf8(data).unwrap();
        match parse_distortion_file(&text) {
            Ok(set) => assert_eq!(to_distortion_file(&set), text, "{name}"),
            Err(_) => assert!(name.ends_with("duplicate"), "{name}"),
        }
    }
}

#[test]
fn bitword_seeds() {
    for (name, data) in seeds("parse_bitword") {
        let text = String::from_utf8(data).unwrap();
        let w: BitWord = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(w.to_string(), text);
    }
}

#[test]
fn frame_seeds() {
    for (name, data) in seeds("decode_frames") {
        let (&selector, rest) = data.split_first().unwrap();
        let format = if selector & 1 == 0 { Format::Bits } else { Format::Bytes };
        let frame_len = 1 + (selector >> 1) as usize % 16;
        let frames = read_frames(rest, format, frame_len).unwrap_or_else(|e| panic!("{name}: {e}"));
        let bytes = write_frames(&frames, format).unwrap();
        assert_eq!(read_frames(&bytes, format, frame_len).unwrap(), frames, "{name}");
    }
}
