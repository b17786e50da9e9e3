//! Seeded random streams.
//!
//! Every random artifact is driven by a ChaCha8 stream. Child streams are
//! derived from a master seed and a textual label, so any circuit, shot
//! block or bootstrap replicate can be regenerated in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type Rng = ChaCha8Rng;

/// First eight bytes of `sha256(master_le ‖ label)`, read little-endian.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(label.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn derived_rng(master: u64, label: &str) -> Rng {
    rng_from_seed(derive_seed(master, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    #[test]
    fn derivation_is_stable_and_label_sensitive() {
        assert_eq!(derive_seed(7, "a"), derive_seed(7, "a"));
        assert_ne!(derive_seed(7, "a"), derive_seed(7, "b"));
        assert_ne!(derive_seed(7, "a"), derive_seed(8, "a"));
        let x: u64 = derived_rng(1, "x").gen();
        let y: u64 = derived_rng(1, "x").gen();
        assert_eq!(x, y);
    }
}
