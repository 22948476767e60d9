//! Deterministic seed derivation.
//!
//! Experiments need many independent RNG streams (one per graph instance,
//! strategy, repetition, ...) that stay stable when a subset of the work is
//! re-run. Deriving every stream from a base seed plus a path of integers
//! gives exactly that: the stream for `(base, [3, 1, 7])` never depends on
//! what other streams exist.

/// 64-bit finalizer (the Murmur3/SplitMix construction): bijective, cheap,
/// and scrambles low-entropy inputs like small vertex ids.
pub fn mix64(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    x ^= x >> 33;
    x
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Derives a child seed from `base` and a path of component values.
/// Different paths give unrelated streams; the same path always gives the
/// same stream.
pub fn child_seed(base: u64, path: &[u64]) -> u64 {
    let mut state = mix64(base ^ GOLDEN);
    for &part in path {
        state = mix64(state.wrapping_add(GOLDEN) ^ mix64(part.wrapping_add(1)));
    }
    state
}

/// Stable identifier for a named stream (e.g. a strategy tag) usable as a
/// `child_seed` path component.
pub fn stream_id(name: &str) -> u64 {
    let mut state = 0x243f_6a88_85a3_08d3u64; // pi, nothing up the sleeve
    for &byte in name.as_bytes() {
        state = mix64(state ^ u64::from(byte));
    }
    state
}
