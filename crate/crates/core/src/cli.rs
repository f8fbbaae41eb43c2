//! The `linhash` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitword::BitWord;
use crate::bounded::{
    check_bits_improved, check_bits_vg, construct_alg1, construct_alg2, construct_alg3,
    rational_to_decimal, success_bound, z_size, BoundedWeightParams, RNG_ID,
};
use crate::codec::{CodeSpec, Correction, Detection, Mode, SyndromeTable};
use crate::codefile::{self, CodeFile};
use crate::distortions::{parse_distortion_file, BurstVariant, DistortionSet};
use crate::error::{Error, Result};
use crate::frame::{self, Format};
use crate::general::{construct_corrector, construct_detector};
use crate::verify::{distortion_check, fuzz_roundtrip, verify_distance, vg_bound, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_CONSTRUCTION_FAILED: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;
pub const EXIT_UNCORRECTABLE: i32 = 5;

/// Random round trips `verify` runs when the product space is too big to walk.
const SAMPLED_TRIALS: usize = 1 << 16;
const EXHAUSTIVE_TRIALS: usize = 1 << 26;

#[derive(Parser, Debug)]
#[command(name = "linhash", version, about = "Build and run linear hash codes over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a code and write it to a code file
    Build(BuildArgs),
    /// Encode information frames into codewords
    Encode(CodecArgs),
    /// Check or correct received frames
    Decode(CodecArgs),
    /// Run the brute-force oracles against a code file
    Verify(VerifyArgs),
    /// Print the check-bit bounds for a length and distance
    Bounds(BoundsArgs),
    /// Push random frames through a simulated channel
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Default)]
struct DistortionArgs {
    /// Distortion file: "L <n>" then one word per line
    #[arg(long)]
    distortions: Option<PathBuf>,
    /// All nonzero words of weight at most t
    #[arg(long)]
    weight: Option<usize>,
    /// Bursts of length b; variant strict (default) or general
    #[arg(long, value_name = "b[:variant]")]
    burst: Option<String>,
}

impl DistortionArgs {
    fn given(&self) -> bool {
        self.distortions.is_some() || self.weight.is_some() || self.burst.is_some()
    }

    fn resolve(&self, len: usize) -> Result<DistortionSet> {
        let count = [self.distortions.is_some(), self.weight.is_some(), self.burst.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if count != 1 {
            return Err(Error::InvalidParameters(
                "give exactly one of --distortions, --weight, --burst".into(),
            ));
        }
        if let Some(path) = &self.distortions {
            let set = parse_distortion_file(&fs::read_to_string(path)?)?;
            Error::check_len(len, set.message_len())?;
            return Ok(set);
        }
        if let Some(t) = self.weight {
            if t == 0 {
                return Err(Error::InvalidParameters("--weight must be at least 1".into()));
            }
            return DistortionSet::weight_ball(len, t);
        }
        let spec = self.burst.as_deref().unwrap_or_default();
        let (b, variant) = match spec.split_once(':') {
            Some((b, "strict")) => (b, BurstVariant::Strict),
            Some((b, "general")) => (b, BurstVariant::General),
            Some((_, v)) => {
                return Err(Error::InvalidParameters(format!("unknown burst variant {v:?}")))
            }
            None => (spec, BurstVariant::Strict),
        };
        let b: usize = b
            .parse()
            .map_err(|_| Error::InvalidParameters(format!("bad burst length {b:?}")))?;
        DistortionSet::burst(len, b, variant)
    }
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long = "L", value_name = "n")]
    message_len: usize,
    /// Minimum distance (bounded-weight constructors)
    #[arg(long = "d", value_name = "n")]
    distance: Option<usize>,
    #[command(flatten)]
    distortions: DistortionArgs,
    /// 1, 2 or 3; only with --d
    #[arg(long)]
    algorithm: Option<u8>,
    #[arg(long, default_value_t = 0)]
    delta: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CodecArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "bits", value_parser = parse_format)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long = "d", value_name = "n")]
    distance: Option<usize>,
    #[command(flatten)]
    distortions: DistortionArgs,
    /// Refuse to fall back to sampling
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long = "L", value_name = "n")]
    message_len: usize,
    #[arg(long = "d", value_name = "n")]
    distance: usize,
    #[arg(long, default_value_t = 0)]
    delta: usize,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Error model as weight ball: d-1 for detection codes, (d-1)/2 for correction codes
    #[arg(long = "d", value_name = "n")]
    distance: Option<usize>,
    #[command(flatten)]
    distortions: DistortionArgs,
    #[arg(long)]
    frames: usize,
    #[arg(long = "error-prob")]
    error_prob: f64,
    #[arg(long)]
    seed: u64,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Build(a) => build(a, stdout),
        Command::Encode(a) => encode(a, stdout),
        Command::Decode(a) => decode(a, stdout, stderr),
        Command::Verify(a) => verify(a, stdout),
        Command::Bounds(a) => bounds(a, stdout),
        Command::Simulate(a) => simulate(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoSolution { .. } | Error::ChoiceSetEmpty { .. } | Error::InternalExhaustion { .. } => {
            EXIT_NO_SOLUTION
        }
        Error::ConstructionFailed { .. } => EXIT_CONSTRUCTION_FAILED,
        Error::PostCondition { .. } | Error::SyndromeCollision(..) | Error::ZeroSyndrome(_) => {
            EXIT_VERIFY_FAILED
        }
        _ => EXIT_USAGE,
    }
}

fn usage(msg: &str) -> Error {
    Error::InvalidParameters(msg.to_string())
}

fn write_output(path: Option<&Path>, data: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, data)?,
        None => stdout.write_all(data)?,
    }
    Ok(())
}

fn build(a: BuildArgs, stdout: &mut dyn Write) -> Result<i32> {
    let len = a.message_len;
    let (spec, syndromes, extra) = match (a.distance, a.distortions.given()) {
        (Some(_), true) => return Err(usage("--d and a distortion flag are exclusive")),
        (None, false) => return Err(usage("give --d or one of --distortions, --weight, --burst")),
        (Some(d), false) => build_bounded(&a, len, d)?,
        (None, true) => {
            if a.algorithm.is_some() {
                return Err(usage("--algorithm applies only with --d"));
            }
            let set = a.distortions.resolve(len)?;
            match a.mode {
                Mode::Detect => {
                    let r = construct_detector(&set)?;
                    (r.to_spec(&set)?, None, None)
                }
                Mode::Correct => {
                    let r = construct_corrector(&set)?;
                    let spec = r.to_spec(&set)?;
                    let table = SyndromeTable::build(&spec, &set)?;
                    (spec, Some(table), None)
                }
            }
        }
    };
    codefile::save(&a.out, &spec, syndromes.as_ref())?;
    writeln!(stdout, "l={} info={}", spec.check_len(), spec.info_len())?;
    if let Some(line) = extra {
        writeln!(stdout, "{line}")?;
    }
    Ok(EXIT_OK)
}

type Built = (CodeSpec, Option<SyndromeTable>, Option<String>);

fn build_bounded(a: &BuildArgs, len: usize, d: usize) -> Result<Built> {
    let algorithm = a.algorithm.unwrap_or(1);
    let t = (d - 1) / 2;
    if a.mode == Mode::Correct && t == 0 {
        return Err(usage("a correction code needs --d 3 or more"));
    }
    let mut params = BoundedWeightParams::new(len, d);
    let (hash, extra) = match algorithm {
        1 => (construct_alg1(&params)?.0, None),
        2 => (construct_alg2(&params)?.0, None),
        3 => {
            let seed = a.seed.ok_or_else(|| usage("--algorithm 3 needs --seed"))?;
            params = params.with_randomness(a.delta, seed);
            let bound = success_bound(len, d, a.delta)?;
            let line = format!(
                "success_bound={} ({})",
                bound,
                rational_to_decimal(&bound, 8)
            );
            (construct_alg3(&params)?.0, Some(line))
        }
        other => return Err(usage(&format!("unknown algorithm {other}"))),
    };
    let mut spec = CodeSpec::with_trailing_checks(hash, a.mode)?
        .with_metadata("algorithm", format!("alg{algorithm}"))
        .with_metadata("distance", d);
    if algorithm == 3 {
        spec = spec
            .with_metadata("rng", RNG_ID)
            .with_metadata("seed", params.seed)
            .with_metadata("delta", params.delta);
    }
    let table = if a.mode == Mode::Correct {
        let set = DistortionSet::weight_ball(len, t)?;
        spec = spec.with_metadata("distortions", set.descriptor());
        Some(SyndromeTable::build(&spec, &set)?)
    } else {
        None
    };
    Ok((spec, table, extra))
}

fn encode(a: CodecArgs, stdout: &mut dyn Write) -> Result<i32> {
    let code = codefile::load(&a.code)?;
    let frames = frame::read_frames(&fs::read(&a.input)?, a.format, code.spec.info_len())?;
    let words = frames
        .iter()
        .map(|m| code.spec.encode(m))
        .collect::<Result<Vec<_>>>()?;
    write_output(a.out.as_deref(), &frame::write_frames(&words, a.format)?, stdout)?;
    Ok(EXIT_OK)
}

fn decode(a: CodecArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let CodeFile { spec, syndromes } = codefile::load(&a.code)?;
    let frames = frame::read_frames(&fs::read(&a.input)?, a.format, spec.message_len())?;
    let mut status = EXIT_OK;
    match spec.mode() {
        Mode::Detect => {
            let mut out = String::with_capacity(frames.len() + 1);
            for y in &frames {
                out.push(match spec.detect(y)? {
                    Detection::Clean => 'C',
                    Detection::ErrorDetected(_) => 'E',
                });
            }
            out.push('\n');
            write_output(a.out.as_deref(), out.as_bytes(), stdout)?;
        }
        Mode::Correct => {
            let table = syndromes
                .ok_or_else(|| usage("correction code file has no SYNDROMES section"))?;
            let mut info = Vec::with_capacity(frames.len());
            for (k, y) in frames.iter().enumerate() {
                let x = match spec.correct(&table, y)? {
                    Correction::Clean => y.clone(),
                    Correction::Corrected { codeword, distortion } => {
                        writeln!(stderr, "frame {k}: corrected {distortion}")?;
                        codeword
                    }
                    Correction::Uncorrectable(s) => {
                        writeln!(stderr, "frame {k}: uncorrectable syndrome {s}")?;
                        status = EXIT_UNCORRECTABLE;
                        y.clone()
                    }
                };
                info.push(spec.extract_info(&x)?);
            }
            write_output(a.out.as_deref(), &frame::write_frames(&info, a.format)?, stdout)?;
        }
    }
    Ok(status)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let CodeFile { spec, syndromes } = codefile::load(&a.code)?;
    let len = spec.message_len();
    let mut report = VerificationReport {
        exhaustive: true,
        ..Default::default()
    };
    match (a.distance, a.distortions.given()) {
        (Some(_), true) => return Err(usage("--d and a distortion flag are exclusive")),
        (None, false) => return Err(usage("give --d or one of --distortions, --weight, --burst")),
        (Some(d), false) => {
            if d < 2 || d > len {
                return Err(usage(&format!("--d must lie in 2..={len}")));
            }
            report.merge(verify_distance(&spec, d)?);
        }
        (None, true) => {
            let set = a.distortions.resolve(len)?;
            let check = distortion_check(&spec, &set)?;
            let ok = check.passed();
            report.merge(check);
            if ok {
                if let Some(stored) = &syndromes {
                    let rebuilt = SyndromeTable::build(&spec, &set)?;
                    report.record(
                        "stored_table",
                        *stored == rebuilt,
                        format!("{} stored entries", stored.len()),
                    );
                }
                let trials = if a.exhaustive { EXHAUSTIVE_TRIALS } else { SAMPLED_TRIALS };
                report.merge(fuzz_roundtrip(&spec, &set, trials, a.seed)?);
            }
        }
    }
    if a.exhaustive && !report.exhaustive {
        return Err(Error::InstanceTooLarge(
            "exhaustive verification is out of reach; drop --exhaustive to sample".into(),
        ));
    }
    write!(stdout, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn bounds(a: BoundsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (len, d) = (a.message_len, a.distance);
    let l_vg = check_bits_vg(len, d)?;
    let l_improved = check_bits_improved(len, d)?;
    let bound = success_bound(len, d, a.delta)?;
    writeln!(stdout, "L={len} d={d} delta={}", a.delta)?;
    writeln!(stdout, "vg_size={}", vg_bound(len, d)?)?;
    writeln!(stdout, "l_vg={l_vg}")?;
    writeln!(stdout, "l_improved={l_improved}")?;
    writeln!(stdout, "improved={}", if l_improved < l_vg { "yes" } else { "no" })?;
    writeln!(stdout, "l_saving={}", l_vg - l_improved)?;
    writeln!(stdout, "z_size={}", z_size(len, d))?;
    writeln!(stdout, "success_bound={bound}")?;
    writeln!(stdout, "success_bound_decimal={}", rational_to_decimal(&bound, 8))?;
    Ok(EXIT_OK)
}

fn simulate(a: SimulateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let CodeFile { spec, syndromes } = codefile::load(&a.code)?;
    let len = spec.message_len();
    if !(0.0..=1.0).contains(&a.error_prob) {
        return Err(usage("--error-prob must lie in [0, 1]"));
    }
    let set = match (a.distance, a.distortions.given()) {
        (Some(_), true) => return Err(usage("--d and a distortion flag are exclusive")),
        (None, false) => return Err(usage("give --d or one of --distortions, --weight, --burst")),
        (Some(d), false) => {
            let t = match spec.mode() {
                Mode::Detect => d.saturating_sub(1),
                Mode::Correct => d.saturating_sub(1) / 2,
            };
            if t == 0 || t > len {
                return Err(usage("--d gives an empty error model"));
            }
            DistortionSet::weight_ball(len, t)?
        }
        (None, true) => a.distortions.resolve(len)?,
    };
    let members: Vec<BitWord> = set.members().collect();
    let table = match (spec.mode(), syndromes) {
        (Mode::Correct, Some(t)) => Some(t),
        (Mode::Correct, None) => Some(SyndromeTable::build(&spec, &set)?),
        (Mode::Detect, _) => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let k = spec.info_len();
    let (mut corrupted, mut detected, mut missed, mut corrected, mut uncorrectable) = (0, 0, 0, 0, 0);
    for _ in 0..a.frames {
        let mut m = BitWord::zeros(k);
        for i in 1..=k {
            m.set(i, rng.gen());
        }
        let x = spec.encode(&m)?;
        let d = if rng.gen_bool(a.error_prob) {
            Some(&members[rng.gen_range(0..members.len())])
        } else {
            None
        };
        let y = match d {
            Some(d) => {
                corrupted += 1;
                &x ^ d
            }
            None => x.clone(),
        };
        match &table {
            None => {
                if let Detection::ErrorDetected(_) = spec.detect(&y)? {
                    detected += 1;
                } else if d.is_some() {
                    missed += 1;
                }
            }
            Some(t) => match spec.correct(t, &y)? {
                Correction::Clean => missed += d.is_some() as usize,
                Correction::Corrected { codeword, .. } => {
                    detected += 1;
                    if codeword == x {
                        corrected += 1;
                    } else {
                        missed += 1;
                    }
                }
                Correction::Uncorrectable(_) => {
                    detected += 1;
                    uncorrectable += 1;
                }
            },
        }
    }
    writeln!(stdout, "frames={}", a.frames)?;
    writeln!(stdout, "corrupted={corrupted}")?;
    writeln!(stdout, "detected={detected}")?;
    writeln!(stdout, "missed={missed}")?;
    if spec.mode() == Mode::Correct {
        writeln!(stdout, "corrected={corrected}")?;
        writeln!(stdout, "uncorrectable={uncorrectable}")?;
    }
    Ok(EXIT_OK)
}
