//! Seeded, platform-stable randomness.
//!
//! Every randomized routine in the crate takes an explicit `u64` seed and
//! draws from ChaCha20, so identical seeds give identical instances on every
//! platform.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Rng = ChaCha20Rng;

pub fn from_seed(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// FNV-1a, used to turn a check id into a stream selector.
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Sub-seed for trial `index` of stream `stream` under base seed `base`.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ splitmix64(stream)).wrapping_add(index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let a = derive_seed(1, stream_id("x"), 0);
        let b = derive_seed(1, stream_id("x"), 1);
        let c = derive_seed(1, stream_id("y"), 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(1, stream_id("x"), 0));
    }

    #[test]
    fn generator_is_reproducible() {
        let x: Vec<u64> = from_seed(9).random_iter().take(4).collect();
        let y: Vec<u64> = from_seed(9).random_iter().take(4).collect();
        assert_eq!(x, y);
    }
}
