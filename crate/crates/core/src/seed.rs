//! Seed derivation.
//!
//! Every random choice in the pipeline draws from a [`ChaCha8Rng`] whose seed
//! is derived from the user's master seed plus a fixed stream tag, so results
//! are identical across platforms and independent of evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags. Adding a new consumer means adding a new tag, never reusing one.
pub mod stream {
    pub const SPLIT_POSITIVE: u64 = 0x01;
    pub const SPLIT_NEGATIVE: u64 = 0x02;
    pub const REBALANCE: u64 = 0x10;
    pub const MODEL: u64 = 0x20;
    pub const FOREST_TREE: u64 = 0x21;
    pub const SVM_SHUFFLE: u64 = 0x22;
}

/// One round of the splitmix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from `master` for the consumer identified by `stream`.
pub fn derive(master: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(master) ^ stream.wrapping_mul(0xD605_BBB5_8C8A_BE7B))
}

/// Seed for tree `index` of a forest trained with `master`.
pub fn derive_indexed(master: u64, stream: u64, index: u64) -> u64 {
    derive(derive(master, stream), index)
}

pub fn rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, stream))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_do_not_collide() {
        let a = derive(7, stream::SPLIT_POSITIVE);
        let b = derive(7, stream::SPLIT_NEGATIVE);
        let c = derive(8, stream::SPLIT_POSITIVE);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive(7, stream::SPLIT_POSITIVE));
    }

    #[test]
    fn splitmix_reference_value() {
        // First output of the reference splitmix64 generator seeded with 0.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
    }
}
