//! Bit streams cut into fixed-length frames.
//!
//! `Bits` is ASCII `0`/`1` text (whitespace ignored on input, one trailing
//! newline on output). `Bytes` packs bits most significant first; a stream
//! whose bit count is not a multiple of 8 cannot be written and is rejected.

use std::str::FromStr;

use crate::bitword::BitWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Bits,
    Bytes,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" => Ok(Format::Bits),
            "bytes" => Ok(Format::Bytes),
            _ => Err(Error::InvalidParameters(format!("unknown format {s:?}"))),
        }
    }
}

pub fn read_bits(data: &[u8], format: Format) -> Result<Vec<bool>> {
    match format {
        Format::Bits => data
            .iter()
            .filter(|b| !b.is_ascii_whitespace())
            .map(|&b| match b {
                b'0' => Ok(false),
                b'1' => Ok(true),
                other => Err(Error::Frame(format!("unexpected byte 0x{other:02x} in bit text"))),
            })
            .collect(),
        Format::Bytes => Ok(data
            .iter()
            .flat_map(|&b| (0..8).rev().map(move |k| (b >> k) & 1 == 1))
            .collect()),
    }
}

/// Splits into `frame_len`-bit words; a partial last frame is an error.
pub fn split_frames(bits: &[bool], frame_len: usize) -> Result<Vec<BitWord>> {
    if frame_len == 0 {
        return Err(Error::Frame("frame length must be positive".into()));
    }
    if !bits.len().is_multiple_of(frame_len) {
        return Err(Error::Frame(format!(
            "{} bits do not split into {frame_len}-bit frames ({} left over)",
            bits.len(),
            bits.len() % frame_len
        )));
    }
    Ok(bits
        .chunks(frame_len)
        .map(|chunk| {
            let mut w = BitWord::zeros(frame_len);
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    w.set(k + 1, true);
                }
            }
            w
        })
        .collect())
}

pub fn read_frames(data: &[u8], format: Format, frame_len: usize) -> Result<Vec<BitWord>> {
    split_frames(&read_bits(data, format)?, frame_len)
}

pub fn write_frames(frames: &[BitWord], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Bits => {
            let mut out: Vec<u8> = Vec::with_capacity(frames.iter().map(BitWord::len).sum::<usize>() + 1);
            for f in frames {
                out.extend(f.to_string().bytes());
            }
            out.push(b'\n');
            Ok(out)
        }
        Format::Bytes => {
            let total: usize = frames.iter().map(BitWord::len).sum();
            if !total.is_multiple_of(8) {
                return Err(Error::Frame(format!(
                    "{total} output bits are not a whole number of bytes"
                )));
            }
            let mut out = vec![0u8; total / 8];
            let mut pos = 0;
            for f in frames {
                for i in 1..=f.len() {
                    if f.get(i) {
                        out[pos / 8] |= 0x80 >> (pos % 8);
                    }
                    pos += 1;
                }
            }
            Ok(out)
        }
    }
}
