//! Finite-state lossy compression of individual sequences.
//!
//! The crate covers, at desk scale and with exact arithmetic wherever an
//! inequality is claimed:
//!
//! - exact LZ78 incremental parsing and a bit-faithful block codec
//!   ([`lz78`]);
//! - single-letter distortion models with rational arithmetic and pruned
//!   distortion-ball enumeration ([`distortion`]);
//! - explicit finite-state reproduction encoders and lossless encoders, with
//!   validity, information-losslessness, and compliance checks ([`fsm`]);
//! - block empirical distributions and enumerative type-class coding
//!   ([`empirical`]);
//! - the universal distribution proportional to `2^(-LZ)` over reproduction
//!   blocks, with exact ball masses and reproducible sampling ([`universal`]);
//! - two computable lower bounds on the compression ratio of any
//!   reproduction-encoder/lossless-encoder cascade, and the chain of
//!   inequalities connecting them to ball masses ([`bounds`]);
//! - three d-semifaithful block coding schemes sharing one container format
//!   ([`schemes`]).

pub mod alphabet;
pub mod bits;
pub mod bounds;
pub mod distortion;
pub mod dyadic;
pub mod empirical;
pub mod error;
pub mod fsm;
pub mod lz78;
pub mod prf;
pub mod schemes;
pub mod universal;

pub use alphabet::{Alphabet, Sequence, Sym};
pub use bits::{BitReader, BitString};
pub use bounds::{BoundReport, ChainReport};
pub use distortion::{ball_contains, distortion, Budget, DistortionModel, Rat};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use fsm::{FsleSpec, FsreSpec, FsvqSpec};
pub use lz78::{LzLengths, LzParse};
pub use prf::Prf;
pub use schemes::{Objective, RateReport, SchemeId};
pub use universal::UniversalModel;

/// Search and enumeration ceilings. Exceeding one is an error, never a silent
/// approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Candidate prefixes in a single ball enumeration.
    pub ball_nodes: u64,
    /// Largest full product space `beta^k` that may be tabulated.
    pub table_len: u64,
    /// Nodes explored by the information-losslessness search.
    pub il_nodes: u64,
    /// Longest output overhang tracked by the information-losslessness
    /// search, in bits.
    pub il_overhang_bits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            ball_nodes: 1 << 26,
            table_len: 1 << 22,
            il_nodes: 1 << 20,
            il_overhang_bits: 256,
        }
    }
}
