//! Parallel stream-to-binary conversion.
//!
//! Counts the ones of a bundle with a pairwise adder tree built from
//! XOR (sum) and AND (carry) primitives, carries rippling into the next
//! significance column. The tree is simulated structurally rather than
//! shortcut by a popcount instruction, so step counts and intermediate
//! carries stay inspectable; a direct popcount serves only as the test
//! oracle.

use crate::bitstream::BitBundle;
use crate::error::{Error, Result};

/// Cost of one tree level: an XOR at 1.5 cycles plus AND/carry handling,
/// 4.5 cycles per step in total.
pub const CYCLES_PER_STEP: f64 = 4.5;

/// Result of converting a bundle back to a binary word.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S2BResult {
    /// The recovered count of ones; needs `log2(N) + 1` bits when the
    /// stream is all-ones.
    pub count: u32,
    /// Tree depth taken: `log2(N)` pairwise-merge levels.
    pub steps: u32,
    /// Modeled latency: `4.5 * log2(N)` cycles.
    pub cycles: f64,
}

fn half_add(a: bool, b: bool) -> (bool, bool) {
    (a ^ b, a & b)
}

/// Add two equal-width little-endian bit vectors, one output bit wider.
/// Each column is two half-adders with an OR carry merge.
fn ripple_add(a: &[bool], b: &[bool]) -> Vec<bool> {
    debug_assert_eq!(a.len(), b.len());
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut carry = false;
    for (&x, &y) in a.iter().zip(b.iter()) {
        let (s1, c1) = half_add(x, y);
        let (s2, c2) = half_add(s1, carry);
        out.push(s2);
        carry = c1 | c2;
    }
    out.push(carry);
    out
}

/// Convert a bundle to its binary count via the adder tree.
pub fn s2b_convert(b: &BitBundle) -> S2BResult {
    let n = b.len();
    let mut numbers: Vec<Vec<bool>> = (0..n).map(|j| vec![b.get(j)]).collect();
    let mut steps = 0;
    while numbers.len() > 1 {
        steps += 1;
        numbers = numbers
            .chunks(2)
            .map(|pair| ripple_add(&pair[0], &pair[1]))
            .collect();
    }
    let count = numbers[0]
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &bit)| acc | ((bit as u32) << i));
    S2BResult {
        count,
        steps,
        cycles: CYCLES_PER_STEP * steps as f64,
    }
}

/// Modeled conversion latency for a stream of length `n`.
pub fn s2b_cycles(n: u32) -> Result<f64> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::Parameter(format!(
            "stream length must be a power of two >= 2, got {n}"
        )));
    }
    Ok(CYCLES_PER_STEP * n.trailing_zeros() as f64)
}
