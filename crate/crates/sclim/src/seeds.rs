//! Deterministic seed derivation.
//!
//! Every randomized component of the toolkit (comparator encoders, noise
//! injection, Monte-Carlo trials, per-pixel streams) derives its seed from a
//! master seed plus a list of integer tags. Derivation is a fixed function of
//! its inputs, so results are reproducible across runs, platforms and thread
//! schedules.

/// SplitMix64 finalizer. Stable by construction; do not replace with
/// `std::hash` which is unspecified across releases.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive a child seed from `master` and an ordered list of tags.
pub fn derive(master: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &tag in tags {
        // The rotation keeps the accumulated state distinguishable from the
        // incoming tag, so swapping master and tag cannot collide.
        state = splitmix64(state.rotate_left(32) ^ splitmix64(tag));
    }
    state
}
