use std::io;

use thiserror::Error;

use crate::bitword::BitWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid binary word {0:?}")]
    InvalidWord(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The check-bit formula gives `l >= L`: no code of this kind exists.
    #[error("no solution: {check_bits} check bits needed for length {message_len}")]
    NoSolution { message_len: usize, check_bits: usize },

    /// Algorithm 1 found no admissible value at `step`; the size argument says this cannot happen.
    #[error("internal exhaustion at step {step}: no admissible hash value left")]
    InternalExhaustion { step: usize },

    /// Algorithm 2's choice set was empty at `step`.
    #[error("choice set empty at step {step}")]
    ChoiceSetEmpty { step: usize },

    /// The random draw of Algorithm 3 left a low-weight word in the kernel.
    #[error("construction failed for seed {seed}: draw at step {step} hit an existing image")]
    ConstructionFailed {
        seed: u64,
        step: usize,
        rejected: Box<crate::hashfun::LinearHashFunction>,
    },

    #[error("syndrome collision between {0} and {1}")]
    SyndromeCollision(BitWord, BitWord),

    #[error("distortion {0} has the zero syndrome")]
    ZeroSyndrome(BitWord),

    #[error("post-construction check failed: {check} (witness {witness})")]
    PostCondition { check: &'static str, witness: BitWord },

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("frame error: {0}")]
    Frame(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, found })
        }
    }
}
