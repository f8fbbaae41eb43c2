//! Text persistence for a [`CodeSpec`] and optional [`SyndromeTable`].
//!
//! ```text
//! LINHASH v1
//! L=6
//! l=1
//! mode=detect
//! checks=1
//! 1
//! 0
//! 1
//! 0
//! 1
//! 0
//! #constructor=general-detect
//! ```
//!
//! Correction codes may add a `SYNDROMES` line followed by
//! `<syndrome> <distortion>` pairs before the metadata. Lines end in a single
//! line feed and words print position 1 first.

use std::fs;
use std::path::Path;

use crate::bitword::BitWord;
use crate::codec::{CodeSpec, Mode, SyndromeTable};
use crate::error::{Error, Result};
use crate::hashfun::LinearHashFunction;

pub const HEADER: &str = "LINHASH v1";
const SYNDROMES: &str = "SYNDROMES";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub spec: CodeSpec,
    pub syndromes: Option<SyndromeTable>,
}

impl CodeFile {
    pub fn new(spec: CodeSpec, syndromes: Option<SyndromeTable>) -> Self {
        CodeFile { spec, syndromes }
    }
}

pub fn to_string(spec: &CodeSpec, syndromes: Option<&SyndromeTable>) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("L={}\n", spec.message_len()));
    out.push_str(&format!("l={}\n", spec.check_len()));
    out.push_str(&format!("mode={}\n", spec.mode().as_str()));
    let checks: Vec<String> = spec.check_positions().iter().map(usize::to_string).collect();
    out.push_str(&format!("checks={}\n", checks.join(",")));
    for v in spec.hash().table() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    if let Some(table) = syndromes {
        out.push_str(SYNDROMES);
        out.push('\n');
        for (s, d) in table.iter() {
            out.push_str(&format!("{s} {d}\n"));
        }
    }
    for (k, v) in &spec.metadata {
        out.push_str(&format!("#{k}={v}\n"));
    }
    out
}

fn field<'a>(line_no: usize, line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::parse(line_no, format!("missing {key}= line")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::parse(line_no, format!("expected {key}=..., found {line:?}")))
}

fn number(line_no: usize, s: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(Error::parse(line_no, format!("not a decimal number: {s:?}")));
    }
    s.parse()
        .map_err(|_| Error::parse(line_no, format!("number out of range: {s:?}")))
}

fn word(line_no: usize, s: &str, len: usize) -> Result<BitWord> {
    let w: BitWord = s
        .parse()
        .map_err(|_| Error::parse(line_no, format!("not a binary word: {s:?}")))?;
    if w.len() != len {
        return Err(Error::parse(
            line_no,
            format!("expected {len} digits, found {}", w.len()),
        ));
    }
    Ok(w)
}

pub fn parse(text: &str) -> Result<CodeFile> {
    if text.contains('\r') {
        return Err(Error::parse(1, "carriage return in file; lines must end in LF"));
    }
    let mut lines = text.split('\n').collect::<Vec<_>>();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let mut it = lines.iter().copied().enumerate().map(|(k, l)| (k + 1, l));

    match it.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(Error::parse(n, format!("expected {HEADER:?}, found {other:?}"))),
        None => return Err(Error::parse(1, "empty file")),
    }
    let (n, line) = it.next().unzip();
    let len = number(n.unwrap_or(2), field(n.unwrap_or(2), line, "L")?)?;
    let (n, line) = it.next().unzip();
    let l = number(n.unwrap_or(3), field(n.unwrap_or(3), line, "l")?)?;
    let (n, line) = it.next().unzip();
    let n = n.unwrap_or(4);
    let mode: Mode = field(n, line, "mode")?
        .parse()
        .map_err(|_| Error::parse(n, "mode must be detect or correct"))?;
    let (n, line) = it.next().unzip();
    let n = n.unwrap_or(5);
    let checks_text = field(n, line, "checks")?;
    let checks = if checks_text.is_empty() {
        Vec::new()
    } else {
        checks_text
            .split(',')
            .map(|s| number(n, s))
            .collect::<Result<Vec<_>>>()?
    };
    if len == 0 || l == 0 || l >= len {
        return Err(Error::InvariantViolation(format!(
            "lengths: need 1 <= l < L, found l = {l}, L = {len}"
        )));
    }

    let mut table = Vec::new();
    for i in 0..len {
        match it.next() {
            Some((n, s)) => table.push(word(n, s, l)?),
            None => {
                return Err(Error::parse(
                    6 + i,
                    format!("expected {len} table lines, found {i}"),
                ))
            }
        }
    }
    let hash = LinearHashFunction::new(l, table)?;
    let mut spec = CodeSpec::new(hash, checks, mode)?;

    let mut pairs: Option<Vec<(BitWord, BitWord)>> = None;
    let mut in_metadata = false;
    for (n, line) in it {
        if let Some(meta) = line.strip_prefix('#') {
            let (k, v) = meta
                .split_once('=')
                .ok_or_else(|| Error::parse(n, "metadata must be #key=value"))?;
            if k.is_empty() {
                return Err(Error::parse(n, "empty metadata key"));
            }
            spec.metadata.push((k.to_string(), v.to_string()));
            in_metadata = true;
        } else if in_metadata {
            return Err(Error::parse(n, "only metadata may follow metadata"));
        } else if line == SYNDROMES {
            if pairs.is_some() {
                return Err(Error::parse(n, "repeated SYNDROMES section"));
            }
            if mode != Mode::Correct {
                return Err(Error::InvariantViolation(
                    "syndrome section requires mode=correct".into(),
                ));
            }
            pairs = Some(Vec::new());
        } else if let Some(p) = pairs.as_mut() {
            let (s, d) = line
                .split_once(' ')
                .ok_or_else(|| Error::parse(n, "expected \"<syndrome> <distortion>\""))?;
            p.push((word(n, s, l)?, word(n, d, len)?));
        } else {
            return Err(Error::parse(n, format!("unexpected line {line:?}")));
        }
    }

    let syndromes = match pairs {
        None => None,
        Some(p) => Some(SyndromeTable::from_pairs(&spec, p).map_err(|e| match e {
            Error::InvariantViolation(m) => Error::InvariantViolation(m),
            other => Error::InvariantViolation(format!("syndrome table: {other}")),
        })?),
    };
    Ok(CodeFile { spec, syndromes })
}

pub fn save(path: impl AsRef<Path>, spec: &CodeSpec, syndromes: Option<&SyndromeTable>) -> Result<()> {
    fs::write(path, to_string(spec, syndromes))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<CodeFile> {
    let text = fs::read_to_string(path)?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortions::{BurstVariant, DistortionSet};
    use crate::general::{construct_corrector, construct_detector, replay_corrector};

    const DETECT: &str = "LINHASH v1\nL=6\nl=1\nmode=detect\nchecks=1\n1\n0\n1\n0\n1\n0\n";

    fn burst2() -> DistortionSet {
        DistortionSet::burst(6, 2, BurstVariant::Strict).unwrap()
    }

    #[test]
    fn detector_file_layout() {
        let d = burst2();
        let mut spec = construct_detector(&d).unwrap().to_spec(&d).unwrap();
        spec.metadata.clear();
        assert_eq!(to_string(&spec, None), DETECT);
        let back = parse(DETECT).unwrap();
        assert_eq!(back.spec, spec);
        assert!(back.syndromes.is_none());
    }

    #[test]
    fn paper_corrector_file() {
        let d = burst2();
        let table: Vec<BitWord> = ["1000", "0100", "0010", "0001", "1111", "1000"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let spec = replay_corrector(&d, &table).unwrap().to_spec(&d).unwrap();
        let st = SyndromeTable::build(&spec, &d).unwrap();
        let text = to_string(&spec, Some(&st));
        let expected_head = "LINHASH v1\nL=6\nl=4\nmode=correct\nchecks=1,2,3,4\n\
                             1000\n0100\n0010\n0001\n1111\n1000\nSYNDROMES\n";
        assert!(text.starts_with(expected_head), "{text}");
        let syndrome_lines = text.lines().skip(12).take_while(|l| !l.starts_with('#')).count();
        assert_eq!(syndrome_lines, 5);
        let back = parse(&text).unwrap();
        assert_eq!(to_string(&back.spec, back.syndromes.as_ref()), text);
    }

    #[test]
    fn roundtrip_with_metadata() {
        let d = DistortionSet::burst(9, 3, BurstVariant::General).unwrap();
        let spec = construct_corrector(&d)
            .unwrap()
            .to_spec(&d)
            .unwrap()
            .with_metadata("note", "a=b c");
        let st = SyndromeTable::build(&spec, &d).unwrap();
        let text = to_string(&spec, Some(&st));
        let back = parse(&text).unwrap();
        assert_eq!(back.spec, spec);
        assert_eq!(back.syndromes.as_ref(), Some(&st));
        assert_eq!(to_string(&back.spec, back.syndromes.as_ref()), text);
    }

    #[test]
    fn file_io() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.lh");
        let spec = parse(DETECT).unwrap().spec;
        save(&path, &spec, None).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), DETECT);
        assert_eq!(load(&path).unwrap().spec, spec);
    }

    fn expect_parse(text: &str, line: usize) {
        match parse(text) {
            Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        expect_parse("", 1);
        expect_parse("LINHASH v2\n", 1);
        expect_parse("LINHASH v1\nL=x\n", 2);
        expect_parse("LINHASH v1\nL=6\nl=1\nmode=fix\n", 4);
        expect_parse(&DETECT.replace("\n0\n1\n0\n1\n0\n", "\n0\n1\n00\n1\n0\n"), 9);
        expect_parse(&DETECT.replace("\n0\n1\n0\n1\n0\n", "\n0\n1\n0\n1\n"), 11);
        expect_parse(&format!("{DETECT}junk\n"), 12);
        expect_parse(&format!("{DETECT}#k=v\n1\n"), 13);
        expect_parse(&DETECT.replace('\n', "\r\n"), 1);
    }

    #[test]
    fn invariant_violations() {
        // check position 2 hashes to 0, not e_1
        match parse(&DETECT.replace("checks=1", "checks=2")) {
            Err(Error::InvariantViolation(m)) => assert!(m.contains("unit image"), "{m}"),
            other => panic!("{other:?}"),
        }
        match parse(&format!("{DETECT}SYNDROMES\n")) {
            Err(Error::InvariantViolation(m)) => assert!(m.contains("mode=correct")),
            other => panic!("{other:?}"),
        }
        let corr = "LINHASH v1\nL=3\nl=2\nmode=correct\nchecks=1,2\n10\n01\n11\nSYNDROMES\n10 010\n";
        assert!(matches!(parse(corr), Err(Error::InvariantViolation(_))));
        assert!(parse(&corr.replace("10 010", "10 100")).is_ok());
    }
}
