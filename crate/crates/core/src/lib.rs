//! Error-detecting and error-correcting codes built from linear hash
//! functions `λ: {0,1}^L -> {0,1}^l`.
//!
//! A code is the kernel `{x : λ(x) = 0}`. The [`bounded`] constructors give
//! codes of a prescribed minimum distance, the [`general`] constructors codes
//! for an arbitrary set of error patterns. [`codec`] encodes and decodes,
//! [`verify`] holds brute-force oracles, and [`codefile`] persists codes.

pub mod bitword;
pub mod bounded;
pub mod cli;
pub mod codec;
pub mod codefile;
pub mod distortions;
pub mod error;
pub mod frame;
pub mod general;
pub mod hashfun;
pub mod verify;

pub use bitword::BitWord;
pub use codec::{CodeSpec, Correction, Detection, Mode, SyndromeTable};
pub use distortions::{BurstVariant, DistortionSet};
pub use error::{Error, Result};
pub use hashfun::LinearHashFunction;
