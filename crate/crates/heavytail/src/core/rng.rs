//! Deterministic randomness.
//!
//! All stochastic code in the crate draws from [`RngHandle`], a thin wrapper
//! over the ChaCha12 stream cipher generator. ChaCha output is specified
//! byte-for-byte, so a given (seed, stream) pair reproduces the exact same
//! sample sequence on every platform and every run.
//!
//! Parallel work never shares a handle: each task receives its own child
//! stream via [`RngHandle::child`], keyed by a deterministic task index, so
//! results do not depend on thread scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Seeded, splittable random generator. The root handle owns stream 0 of the
/// keyed cipher; children occupy streams `index + 1`.
#[derive(Debug, Clone)]
pub struct RngHandle {
    seed: u64,
    inner: ChaCha12Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child generator for parallel task `index`. Children of the
    /// same handle never overlap with each other or with their parent.
    pub fn child(&self, index: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(self.seed);
        inner.set_stream(
            index
                .checked_add(1)
                .expect("child index must stay below u64::MAX"),
        );
        Self {
            seed: self.seed,
            inner,
        }
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}
