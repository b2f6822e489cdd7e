//! Per-trial seed derivation.
//!
//! `trial_seed(master, point, trial)` folds the three words through the
//! SplitMix64 finalizer: `s = mix(master); s = mix(s ^ point); s = mix(s ^ trial)`.
//! Each trial's randomness depends only on its own coordinates, so worker
//! scheduling cannot change results.

/// Default master seed used when none is configured.
pub const DEFAULT_SEED: u64 = 0x5eed_c11c_0e5a_7001;

/// The SplitMix64 output function applied to `x + golden gamma`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, point: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ point) ^ trial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // First output of the reference SplitMix64 generator seeded with 0.
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_ne!(trial_seed(1, 0, 0), trial_seed(1, 0, 1));
        assert_ne!(trial_seed(1, 0, 1), trial_seed(1, 1, 0));
        assert_eq!(trial_seed(7, 3, 9), trial_seed(7, 3, 9));
    }
}
