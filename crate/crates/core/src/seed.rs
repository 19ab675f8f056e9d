//! Deterministic seed derivation.
//!
//! Every randomized stage derives its own stream from a master seed plus a
//! stable context (a domain label and optionally strings or indices), so
//! execution order and parallelism never change results.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Accumulates seed material and hashes it into a child seed.
pub struct SeedMixer {
    hasher: Sha256,
}

impl SeedMixer {
    pub fn new(master: u64) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(master.to_le_bytes());
        Self { hasher }
    }

    pub fn text(mut self, s: &str) -> Self {
        // Length prefix keeps ("ab","c") distinct from ("a","bc").
        self.hasher.update((s.len() as u64).to_le_bytes());
        self.hasher.update(s.as_bytes());
        self
    }

    pub fn index(mut self, i: u64) -> Self {
        self.hasher.update(i.to_le_bytes());
        self
    }

    pub fn seed(self) -> u64 {
        let digest = self.hasher.finalize();
        u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed())
    }
}

/// Child seed for a named stage.
pub fn derive_seed(master: u64, domain: &str, index: u64) -> u64 {
    SeedMixer::new(master).text(domain).index(index).seed()
}

/// RNG for a named stage.
pub fn derive_rng(master: u64, domain: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, domain, index))
}
