//! HyperLogLog registers, stripped down to what the neighborhood-function
//! estimator needs: seeded insertion, register-wise max merging, and the
//! classic cardinality estimate with the small-range (linear counting)
//! correction. Hashes are 64-bit, which makes the large-range correction
//! irrelevant at any size this library will ever see.

use crate::error::{Error, Result};

pub(crate) const MIN_REGISTER_EXPONENT: u32 = 4;
pub(crate) const MAX_REGISTER_EXPONENT: u32 = 16;

pub(crate) fn validate_register_exponent(b: u32) -> Result<()> {
    if (MIN_REGISTER_EXPONENT..=MAX_REGISTER_EXPONENT).contains(&b) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "register exponent must be in {MIN_REGISTER_EXPONENT}..={MAX_REGISTER_EXPONENT}, got {b}"
        )))
    }
}

/// Records hash `h` into a register bank of length `2^b`: the low `b` bits
/// pick the register, the leading-zero count of the rest sets its value.
pub(crate) fn add_hash(registers: &mut [u8], h: u64) {
    let b = registers.len().trailing_zeros();
    let index = (h & (registers.len() as u64 - 1)) as usize;
    let rest = h >> b;
    // The top `b` bits of `rest` are zero, so subtract them back out.
    let rank = (rest.leading_zeros() + 1 - b) as u8;
    if rank > registers[index] {
        registers[index] = rank;
    }
}

/// Register-wise max; estimates the cardinality of the union of the two
/// underlying sets.
pub(crate) fn merge_max(dst: &mut [u8], src: &[u8]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, &s) in dst.iter_mut().zip(src) {
        if s > *d {
            *d = s;
        }
    }
}

const INV_POW2: [f64; 65] = {
    let mut table = [0.0f64; 65];
    let mut i = 0;
    while i < 65 {
        table[i] = 1.0 / ((1u128 << i) as f64);
        i += 1;
    }
    table
};

fn alpha(m: usize) -> f64 {
    match m {
        16 => 0.673,
        32 => 0.697,
        64 => 0.709,
        _ => 0.7213 / (1.0 + 1.079 / m as f64),
    }
}

/// Cardinality estimate for one register bank.
pub(crate) fn estimate(registers: &[u8]) -> f64 {
    let m = registers.len();
    let mut inv_sum = 0.0;
    let mut zeros = 0usize;
    for &r in registers {
        inv_sum += INV_POW2[r as usize];
        if r == 0 {
            zeros += 1;
        }
    }
    let mf = m as f64;
    let raw = alpha(m) * mf * mf / inv_sum;
    if raw <= 2.5 * mf && zeros > 0 {
        mf * (mf / zeros as f64).ln()
    } else {
        raw
    }
}
