//! Counter-based deterministic pseudorandom function.
//!
//! All randomness in the crate flows through this keyed function from
//! `(seed, stream, counter)` to 64-bit words; there is no ambient RNG. The
//! construction is pinned so that encoder and decoder, on any platform and in
//! any version, derive bit-identical words from a shared seed:
//!
//! `word = LE64( SHA-256( "fslz.prf.v1" || LE64(seed) || LE64(stream) ||
//! LE64(counter) )[0..8] )`
//!
//! Changing this construction in any way requires a new version tag.

use sha2::{Digest, Sha256};

/// Version tag mixed into every invocation.
pub const PRF_VERSION: &str = "fslz.prf.v1";

/// Keyed counter-based pseudorandom function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prf {
    seed: u64,
}

impl Prf {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The 64-bit word at `(stream, counter)`.
    pub fn word(&self, stream: u64, counter: u64) -> u64 {
        let mut h = Sha256::new();
        h.update(PRF_VERSION.as_bytes());
        h.update(self.seed.to_le_bytes());
        h.update(stream.to_le_bytes());
        h.update(counter.to_le_bytes());
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }

    /// Uniform value in `[0, 1)` with 53 bits of precision.
    pub fn unit_f64(&self, stream: u64, counter: u64) -> f64 {
        (self.word(stream, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform draw from `[0, bound)` by rejection over 128-bit
    /// words. Consumes counters `counter_base, counter_base + 1, ...` in
    /// pairs; at most 256 counters are ever touched.
    pub fn uniform_below(&self, stream: u64, counter_base: u64, bound: u128) -> u128 {
        assert!(bound > 0);
        let rem = (u128::MAX % bound + 1) % bound;
        let zone = u128::MAX - rem;
        let mut ctr = counter_base;
        for _ in 0..128 {
            let hi = self.word(stream, ctr) as u128;
            let lo = self.word(stream, ctr + 1) as u128;
            ctr += 2;
            let v = (hi << 64) | lo;
            if v <= zone {
                return v % bound;
            }
        }
        // Reachable with probability <= 2^(-128); the residual bias is nil.
        let hi = self.word(stream, ctr) as u128;
        let lo = self.word(stream, ctr + 1) as u128;
        ((hi << 64) | lo) % bound
    }
}
