//! Seed derivation for independent RNG streams.

/// One SplitMix64 step.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stream seed for `(a, b)` under `master`; distinct tuples give unrelated seeds.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ a) ^ b.wrapping_mul(0xd1b5_4a32_d192_ed03))
}
