#![no_main]

use libfuzzer_sys::fuzz_target;
use linhash::codefile;
use linhash::frame::{read_frames, write_frames, Format};
use linhash::Correction;

const CODE: &str = "LINHASH v1\nL=6\nl=4\nmode=correct\nchecks=1,2,3,4\n\
1000\n0100\n0010\n0001\n1111\n1000\nSYNDROMES\n\
0011 001100\n0110 011000\n0111 000011\n1100 110000\n1110 000110\n";

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let format = if selector & 1 == 0 { Format::Bits } else { Format::Bytes };
    let frame_len = 1 + (selector >> 1) as usize % 16;
    if let Ok(frames) = read_frames(rest, format, frame_len) {
        if let Ok(bytes) = write_frames(&frames, format) {
            assert_eq!(read_frames(&bytes, format, frame_len).unwrap(), frames);
        }
    }

    let code = codefile::parse(CODE).unwrap();
    let table = code.syndromes.unwrap();
    if let Ok(frames) = read_frames(rest, format, code.spec.message_len()) {
        for y in frames {
            match code.spec.correct(&table, &y).unwrap() {
                Correction::Clean => assert!(code.spec.syndrome(&y).unwrap().is_zero()),
                Correction::Corrected { codeword, .. } => {
                    assert!(code.spec.syndrome(&codeword).unwrap().is_zero())
                }
                Correction::Uncorrectable(s) => assert!(table.get(&s).is_none()),
            }
        }
    }
});
