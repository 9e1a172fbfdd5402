//! Gate-level stream operations and the stochastic arithmetic wrappers.
//!
//! Gates act position-wise over whole bundles, mirroring the array-parallel
//! execution model: one logical operation covers all N bits at once. The
//! `sc_*` wrappers add the correlation discipline each operator needs:
//! multiplication and approximate addition demand independent operand
//! streams, while min/max/absolute-difference require correlated ones
//! (thermometer by default, shared replication pattern as an opt-in).

use crate::bitstream::{
    encode_deterministic, encode_thermometer, BitBundle, MappingPattern, PatternAllocator,
    Provenance,
};
use crate::error::{Error, Result};

/// Correlation discipline expected between two operand streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationMode {
    /// Distinct pattern variants or independent seeds.
    Independent,
    /// Thermometer encodings (default) or an identical pattern variant.
    Correlated,
}

/// Position-wise AND.
pub fn gate_and(a: &BitBundle, b: &BitBundle) -> Result<BitBundle> {
    a.binary_op(b, |x, y| x & y)
}

/// Position-wise OR.
pub fn gate_or(a: &BitBundle, b: &BitBundle) -> Result<BitBundle> {
    a.binary_op(b, |x, y| x | y)
}

/// Position-wise XOR.
pub fn gate_xor(a: &BitBundle, b: &BitBundle) -> Result<BitBundle> {
    a.binary_op(b, |x, y| x ^ y)
}

/// Position-wise complement.
pub fn gate_not(a: &BitBundle) -> BitBundle {
    a.complement()
}

/// Position-wise NAND.
pub fn gate_nand(a: &BitBundle, b: &BitBundle) -> Result<BitBundle> {
    a.binary_op(b, |x, y| !(x & y))
}

/// Position-wise multiplexer: a select bit of 1 picks `a`, 0 picks `b`.
pub fn gate_mux(a: &BitBundle, b: &BitBundle, sel: &BitBundle) -> Result<BitBundle> {
    let picked_a = a.binary_op(sel, |x, s| x & s)?;
    let picked_b = b.binary_op(sel, |x, s| x & !s)?;
    picked_a.binary_op(&picked_b, |x, y| x | y)
}

fn ensure_independent(a: &BitBundle, b: &BitBundle) -> Result<()> {
    let violation = match (a.provenance(), b.provenance()) {
        (
            Provenance::Deterministic {
                rotation: r1,
                xor_mask: x1,
            },
            Provenance::Deterministic {
                rotation: r2,
                xor_mask: x2,
            },
        ) => r1 == r2 && x1 == x2,
        (Provenance::Random { seed: s1 }, Provenance::Random { seed: s2 }) => s1 == s2,
        (Provenance::Thermometer, Provenance::Thermometer) => true,
        _ => false,
    };
    if violation {
        return Err(Error::Parameter(
            "operands share a stream source; this operator requires independent streams".into(),
        ));
    }
    Ok(())
}

/// Multiply two streams (AND). Rejects operand pairs whose provenance marks
/// them as the same source: correctness here hinges on decorrelation, so
/// reuse is a programming error rather than a silent bias.
pub fn sc_mul_streams(a: &BitBundle, b: &BitBundle) -> Result<BitBundle> {
    ensure_independent(a, b)?;
    gate_and(a, b)
}

/// The partner variant multiplication pairs with the base pattern: a
/// half-width rotation whose mask sets one bit per rotation step. Measured
/// over the whole family, this pair class minimizes the AND-product error.
fn mul_partner_variant(m: u32) -> (u32, u32) {
    if m == 1 {
        return (0, 1);
    }
    let rotation = (m / 2).max(1);
    let mut mask = 0u32;
    let mut bit = 0;
    while bit < m {
        mask |= 1 << bit;
        bit += rotation;
    }
    (rotation, mask & ((1 << m) - 1))
}

/// Encode a multiplication operand pair through its role patterns.
pub(crate) fn mul_operand_streams(
    a_val: u32,
    b_val: u32,
    alloc: &mut PatternAllocator,
) -> Result<(BitBundle, BitBundle)> {
    let (rot, mask) = mul_partner_variant(alloc.bit_width());
    let pa = alloc.take(0, 0)?;
    let pb = alloc.take(rot, mask)?;
    Ok((
        encode_deterministic(a_val, &pa)?,
        encode_deterministic(b_val, &pb)?,
    ))
}

/// Encode the scaled-addition operand pair and its select stream.
pub(crate) fn scaled_add_streams(
    a_val: u32,
    b_val: u32,
    alloc: &mut PatternAllocator,
) -> Result<(BitBundle, BitBundle, BitBundle)> {
    let m = alloc.bit_width();
    if m < 3 {
        return Err(Error::Config(format!(
            "scaled addition needs three distinct rotations, bit width {m} is too small"
        )));
    }
    let pa = alloc.take(0, 0)?;
    let pb = alloc.take(1, 0)?;
    let psel = alloc.take(2, 0)?;
    Ok((
        encode_deterministic(a_val, &pa)?,
        encode_deterministic(b_val, &pb)?,
        encode_deterministic(1 << (m - 1), &psel)?,
    ))
}

/// Multiply two m-bit operands: encode them through the base pattern and
/// its tuned partner, then AND. The decoded value approximates
/// `a_val * b_val / 2^(2m)`.
pub fn sc_mul(a_val: u32, b_val: u32, alloc: &mut PatternAllocator) -> Result<BitBundle> {
    let (ea, eb) = mul_operand_streams(a_val, b_val, alloc)?;
    sc_mul_streams(&ea, &eb)
}

/// Scaled addition `(a + b) / 2` via a multiplexer whose select stream is
/// the deterministic encoding of one half (exact, since `2^(m-1)` is
/// representable). The operands use rotation-adjacent patterns and the
/// select a third rotation: its single-index-bit half-set then splits every
/// digit class of both operand patterns evenly, which is what keeps the
/// multiplexer unbiased.
pub fn sc_scaled_add(a_val: u32, b_val: u32, alloc: &mut PatternAllocator) -> Result<BitBundle> {
    let (ea, eb, sel) = scaled_add_streams(a_val, b_val, alloc)?;
    gate_mux(&ea, &eb, &sel)
}

/// Approximate addition `a + b - a*b` via OR of independent streams; uses
/// the same pattern pair as multiplication.
pub fn sc_approx_add(a_val: u32, b_val: u32, alloc: &mut PatternAllocator) -> Result<BitBundle> {
    let m = alloc.bit_width();
    let (rot, mask) = mul_partner_variant(m);
    let ea = encode_deterministic(a_val, &alloc.take(0, 0)?)?;
    let eb = encode_deterministic(b_val, &alloc.take(rot, mask)?)?;
    ensure_independent(&ea, &eb)?;
    gate_or(&ea, &eb)
}

/// Minimum via AND of thermometer encodings; exact: `min(a,b)/N`.
pub fn sc_min(a_val: u32, b_val: u32, n: u32) -> Result<BitBundle> {
    let ea = encode_thermometer(a_val, n)?;
    let eb = encode_thermometer(b_val, n)?;
    gate_and(&ea, &eb)
}

/// Maximum via OR of thermometer encodings; exact: `max(a,b)/N`.
pub fn sc_max(a_val: u32, b_val: u32, n: u32) -> Result<BitBundle> {
    let ea = encode_thermometer(a_val, n)?;
    let eb = encode_thermometer(b_val, n)?;
    gate_or(&ea, &eb)
}

/// Absolute difference via XOR of thermometer encodings; exact: `|a-b|/N`.
pub fn sc_abs_sub(a_val: u32, b_val: u32, n: u32) -> Result<BitBundle> {
    let ea = encode_thermometer(a_val, n)?;
    let eb = encode_thermometer(b_val, n)?;
    gate_xor(&ea, &eb)
}

/// Negation: bitwise complement, decoding to exactly `1 - p`.
pub fn sc_negate(a: &BitBundle) -> BitBundle {
    gate_not(a)
}

/// Opt-in correlated mode: both operands through one replication pattern.
/// AND then realizes the bitwise-AND of the operand words, an approximation
/// of the minimum (the thermometer route is the exact one).
pub fn sc_min_shared_pattern(
    a_val: u32,
    b_val: u32,
    pattern: &MappingPattern,
) -> Result<BitBundle> {
    let ea = encode_deterministic(a_val, pattern)?;
    let eb = encode_deterministic(b_val, pattern)?;
    gate_and(&ea, &eb)
}

/// Opt-in correlated mode counterpart of [`sc_max`].
pub fn sc_max_shared_pattern(
    a_val: u32,
    b_val: u32,
    pattern: &MappingPattern,
) -> Result<BitBundle> {
    let ea = encode_deterministic(a_val, pattern)?;
    let eb = encode_deterministic(b_val, pattern)?;
    gate_or(&ea, &eb)
}

/// Opt-in correlated mode counterpart of [`sc_abs_sub`].
pub fn sc_abs_sub_shared_pattern(
    a_val: u32,
    b_val: u32,
    pattern: &MappingPattern,
) -> Result<BitBundle> {
    let ea = encode_deterministic(a_val, pattern)?;
    let eb = encode_deterministic(b_val, pattern)?;
    gate_xor(&ea, &eb)
}
