//! Stochastic bit-stream representation and deterministic generation.
//!
//! A value p in [0,1] is carried by the fraction of ones in a length-N
//! stream. Streams are materialized spatially as packed bit bundles so that
//! a whole bundle is processed in one step. Three generators are provided:
//!
//! * deterministic replication patterns, where binary digit `x_i` of an
//!   m-bit operand fills exactly `2^i` of the `N = 2^m` positions,
//! * thermometer (unary) encoding, used for correlated-operand arithmetic,
//! * a seeded comparator model (random number vs. target) for baselines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;
use std::fmt;

use crate::error::{Error, Result};

/// Smallest supported stream length.
pub const MIN_LEN: u32 = 2;
/// Largest supported stream length (2^16).
pub const MAX_LEN: u32 = 1 << 16;
/// Largest supported operand width in bits.
pub const MAX_BIT_WIDTH: u32 = 16;

/// Packed words backing a bundle. Streams up to 256 bits stay inline.
type Words = SmallVec<[u64; 4]>;

/// How a bundle was produced. Gate outputs are `Derived`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Deterministic replication pattern, identified by its variant.
    Deterministic { rotation: u32, xor_mask: u32 },
    /// Thermometer (unary) encoding.
    Thermometer,
    /// Seeded comparator encoding.
    Random { seed: u64 },
    /// Output of a gate or other stream-to-stream operation.
    Derived,
}

/// A length-N packed bit stream carrying a unipolar value `ones/N`.
///
/// Equality compares length and bit content; provenance is metadata.
#[derive(Clone, Debug)]
pub struct BitBundle {
    len: u32,
    words: Words,
    provenance: Provenance,
}

impl PartialEq for BitBundle {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}
impl Eq for BitBundle {}

fn check_len(n: u32) -> Result<()> {
    if !(MIN_LEN..=MAX_LEN).contains(&n) || !n.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "stream length must be a power of two in [{MIN_LEN}, {MAX_LEN}], got {n}"
        )));
    }
    Ok(())
}

fn word_count(n: u32) -> usize {
    (n as usize).div_ceil(64)
}

impl BitBundle {
    fn empty(len: u32, provenance: Provenance) -> Self {
        BitBundle {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
            provenance,
        }
    }

    /// All-zero bundle of length `n` (value 0).
    pub fn all_zeros(n: u32) -> Result<Self> {
        check_len(n)?;
        Ok(Self::empty(n, Provenance::Derived))
    }

    /// All-one bundle of length `n` (value exactly 1).
    pub fn all_ones(n: u32) -> Result<Self> {
        check_len(n)?;
        let mut b = Self::empty(n, Provenance::Derived);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.mask_tail();
        Ok(b)
    }

    /// Parse an ASCII '0'/'1' rendering, position 0 first.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let n = u32::try_from(s.len())
            .map_err(|_| Error::Parameter("stream text too long".into()))?;
        check_len(n)?;
        let mut b = Self::empty(n, Provenance::Derived);
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => b.set(j as u32),
                other => {
                    return Err(Error::Format(format!(
                        "invalid stream character {other:?} at position {j}"
                    )))
                }
            }
        }
        Ok(b)
    }

    /// Stream length N.
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= MIN_LEN
    }

    /// Generation provenance.
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    #[cfg(test)]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(len: u32, words: Words, provenance: Provenance) -> Self {
        let mut b = BitBundle {
            len,
            words,
            provenance,
        };
        b.mask_tail();
        b
    }

    /// Bit at position `j` (0-based, leftmost in textual rendering).
    pub fn get(&self, j: u32) -> bool {
        debug_assert!(j < self.len);
        (self.words[(j / 64) as usize] >> (j % 64)) & 1 == 1
    }

    fn set(&mut self, j: u32) {
        self.words[(j / 64) as usize] |= 1u64 << (j % 64);
    }

    pub(crate) fn toggle(&mut self, j: u32) {
        debug_assert!(j < self.len);
        self.words[(j / 64) as usize] ^= 1u64 << (j % 64);
    }

    pub(crate) fn set_provenance(&mut self, p: Provenance) {
        self.provenance = p;
    }

    /// Zero any storage bits past the logical length. All constructors and
    /// gate ops maintain this invariant so popcounts stay honest.
    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    /// Number of set bits.
    pub fn popcount(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// ASCII rendering: '0'/'1', position 0 first, no separators.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|j| if self.get(j) { '1' } else { '0' })
            .collect()
    }

    pub(crate) fn binary_op(
        &self,
        other: &BitBundle,
        op: impl Fn(u64, u64) -> u64,
    ) -> Result<BitBundle> {
        if self.len != other.len {
            return Err(Error::Parameter(format!(
                "stream length mismatch: {} vs {}",
                self.len, other.len
            )));
        }
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(BitBundle::from_words(self.len, words, Provenance::Derived))
    }

    pub(crate) fn complement(&self) -> BitBundle {
        let words = self.words.iter().map(|&w| !w).collect();
        BitBundle::from_words(self.len, words, Provenance::Derived)
    }
}

impl fmt::Display for BitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Exact decoded value of a bundle: `ones / N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitRatio {
    pub numer: u32,
    pub denom: u32,
}

impl UnitRatio {
    pub fn as_f64(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for UnitRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Decode a bundle to its exact rational value `popcount/N`.
pub fn decode_value(b: &BitBundle) -> UnitRatio {
    UnitRatio {
        numer: b.popcount(),
        denom: b.len(),
    }
}

/// Position assignment of one stream slot: a source digit or constant zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Index of the operand digit replicated at this position.
    Digit(u32),
    /// Position pinned to 0 (the replication counts sum to N-1).
    Const0,
}

/// A deterministic assignment of each of the N stream positions to one of
/// the m operand digits or constant zero. Digit `i` is assigned to exactly
/// `2^i` positions; the assignment depends only on the position index.
#[derive(Clone, Debug)]
pub struct MappingPattern {
    bit_width: u32,
    rotation: u32,
    xor_mask: u32,
    /// Per-digit position masks; `digit_masks[i]` has exactly 2^i set bits.
    digit_masks: Vec<Words>,
}

fn rotl_m(j: u32, r: u32, m: u32) -> u32 {
    if r == 0 {
        j
    } else {
        ((j << r) | (j >> (m - r))) & ((1u32 << m) - 1)
    }
}

impl MappingPattern {
    /// Operand width m; the stream length is `2^m`.
    pub fn bit_width(&self) -> u32 {
        self.bit_width
    }

    /// Stream length `N = 2^m`.
    pub fn stream_len(&self) -> u32 {
        1 << self.bit_width
    }

    /// Variant identifier `(rotation, xor_mask)`.
    pub fn variant(&self) -> (u32, u32) {
        (self.rotation, self.xor_mask)
    }

    /// Assignment rule for position `j`: relabel the index by an m-bit left
    /// rotation and an XOR mask, count its trailing ones `t`, and map to
    /// digit `m-1-t` (or constant 0 when the run covers all m bits).
    pub fn slot(&self, j: u32) -> Slot {
        let relabeled = rotl_m(j, self.rotation, self.bit_width) ^ self.xor_mask;
        let t = relabeled.trailing_ones();
        if t >= self.bit_width {
            Slot::Const0
        } else {
            Slot::Digit(self.bit_width - 1 - t)
        }
    }
}

/// Build the deterministic replication pattern for variant
/// `(rotation, xor_mask)` at operand width `m`.
pub fn make_pattern(m: u32, rotation: u32, xor_mask: u32) -> Result<MappingPattern> {
    if m == 0 || m > MAX_BIT_WIDTH {
        return Err(Error::Parameter(format!(
            "bit width must be in [1, {MAX_BIT_WIDTH}], got {m}"
        )));
    }
    if rotation >= m {
        return Err(Error::Parameter(format!(
            "rotation must be < {m}, got {rotation}"
        )));
    }
    let n = 1u32 << m;
    if xor_mask >= n {
        return Err(Error::Parameter(format!(
            "xor mask must be < {n}, got {xor_mask}"
        )));
    }
    let mut pattern = MappingPattern {
        bit_width: m,
        rotation,
        xor_mask,
        digit_masks: vec![SmallVec::from_elem(0, word_count(n)); m as usize],
    };
    for j in 0..n {
        if let Slot::Digit(i) = pattern.slot(j) {
            pattern.digit_masks[i as usize][(j / 64) as usize] |= 1u64 << (j % 64);
        }
    }
    Ok(pattern)
}

/// Encode an m-bit operand through a replication pattern. The decoded value
/// is exactly `value_bits / 2^m`.
pub fn encode_deterministic(value_bits: u32, pattern: &MappingPattern) -> Result<BitBundle> {
    let m = pattern.bit_width;
    let n = 1u32 << m;
    if value_bits >= n {
        return Err(Error::Parameter(format!(
            "value {value_bits} does not fit in {m} bits"
        )));
    }
    let mut words: Words = SmallVec::from_elem(0, word_count(n));
    for i in 0..m {
        if (value_bits >> i) & 1 == 1 {
            for (w, &d) in words.iter_mut().zip(pattern.digit_masks[i as usize].iter()) {
                *w |= d;
            }
        }
    }
    Ok(BitBundle::from_words(
        n,
        words,
        Provenance::Deterministic {
            rotation: pattern.rotation,
            xor_mask: pattern.xor_mask,
        },
    ))
}

/// Thermometer (unary) encoding: positions `[0, value_bits)` are 1.
/// Exact by construction; the default carrier for correlated operands.
pub fn encode_thermometer(value_bits: u32, n: u32) -> Result<BitBundle> {
    check_len(n)?;
    if value_bits > n {
        return Err(Error::Parameter(format!(
            "thermometer value {value_bits} exceeds stream length {n}"
        )));
    }
    let mut b = BitBundle::empty(n, Provenance::Thermometer);
    for j in 0..value_bits {
        b.set(j);
    }
    Ok(b)
}

/// Comparator-model encoding: bit j is 1 iff `r_j < value_bits`, where `r_j`
/// is the j-th draw of a seeded generator uniform over `[0, N)`. Identical
/// `(value, N, seed)` always yields identical streams.
pub fn encode_random(value_bits: u32, n: u32, seed: u64) -> Result<BitBundle> {
    check_len(n)?;
    if value_bits > n {
        return Err(Error::Parameter(format!(
            "value {value_bits} exceeds stream length {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = BitBundle::empty(n, Provenance::Random { seed });
    for j in 0..n {
        let r = rng.gen_range(0..n);
        if r < value_bits {
            b.set(j);
        }
    }
    Ok(b)
}

/// Quantize a real in [0,1] to an m-bit word: `round(x * (2^m - 1))`,
/// rounding half up.
pub fn quantize(x: f64, m: u32) -> Result<u32> {
    if m == 0 || m > MAX_BIT_WIDTH {
        return Err(Error::Parameter(format!(
            "bit width must be in [1, {MAX_BIT_WIDTH}], got {m}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!("input {x} outside [0, 1]")));
    }
    let full_scale = ((1u32 << m) - 1) as f64;
    let q = (x * full_scale + 0.5).floor() as u32;
    Ok(q.min((1u32 << m) - 1))
}

/// Stochastic cross-correlation of two equal-length streams.
///
/// +1 for maximally overlapping streams, 0 for independent, -1 for
/// maximally disjoint. Returns 0 whenever the applicable denominator is 0.
pub fn scc(a: &BitBundle, b: &BitBundle) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Parameter(format!(
            "stream length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as i64;
    let ca = a.popcount() as i64;
    let cb = b.popcount() as i64;
    let cab = a.binary_op(b, |x, y| x & y)?.popcount() as i64;

    // All quantities scaled by n^2 to stay exact in integers.
    let delta = n * cab - ca * cb;
    if delta > 0 {
        let denom = n * ca.min(cb) - ca * cb;
        if denom == 0 {
            return Ok(0.0);
        }
        Ok(delta as f64 / denom as f64)
    } else if delta < 0 {
        let denom = ca * cb - n * (ca + cb - n).max(0);
        if denom == 0 {
            return Ok(0.0);
        }
        Ok(delta as f64 / denom as f64)
    } else {
        Ok(0.0)
    }
}

/// Hand-tuned default variant sequence for 64-bit streams. The order keeps
/// consecutive draws (which end up ANDed inside one leaf) in strongly
/// decorrelated pair classes; it was selected by exhaustive accuracy
/// measurement over the whole variant family.
const TUNED_ORDER_M6: [(u32, u32); 12] = [
    (0, 0),
    (3, 9),
    (4, 2),
    (4, 8),
    (3, 41),
    (0, 5),
    (5, 33),
    (2, 9),
    (1, 30),
    (3, 20),
    (5, 13),
    (0, 9),
];

/// Hand-tuned prefix for 256-bit streams, selected the same way as the
/// 64-bit one but scored on the sigmoid and tanh blocks the image pipeline
/// evaluates.
const TUNED_ORDER_M8: [(u32, u32); 10] = [
    (2, 179),
    (4, 123),
    (6, 6),
    (7, 149),
    (6, 199),
    (5, 194),
    (6, 168),
    (1, 60),
    (0, 159),
    (4, 43),
];

/// Deterministic supply of fresh pattern variants.
///
/// The allocator is the freshness ledger of one circuit evaluation: a
/// variant pair is never handed out twice, whether reached through the
/// default enumeration ([`next_pattern`](Self::next_pattern)) or requested
/// explicitly ([`take`](Self::take)). The default enumeration cycles the
/// rotation fastest, so any short run of consecutive draws has pairwise
/// distinct rotations; mask blocks follow a golden-ratio multiplicative
/// order. For 64-bit streams a tuned prefix is served first.
#[derive(Clone, Debug)]
pub struct PatternAllocator {
    bit_width: u32,
    raw_index: u32,
    used: std::collections::HashSet<u32>,
}

impl PatternAllocator {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_BIT_WIDTH {
            return Err(Error::Parameter(format!(
                "bit width must be in [1, {MAX_BIT_WIDTH}], got {m}"
            )));
        }
        Ok(PatternAllocator {
            bit_width: m,
            raw_index: 0,
            used: std::collections::HashSet::new(),
        })
    }

    /// Allocator for streams of length `n = 2^m`.
    pub fn for_stream_len(n: u32) -> Result<Self> {
        check_len(n)?;
        Self::new(n.trailing_zeros())
    }

    pub fn bit_width(&self) -> u32 {
        self.bit_width
    }

    /// Stream length produced by patterns from this allocator.
    pub fn stream_len(&self) -> u32 {
        1 << self.bit_width
    }

    /// Total number of distinct variants.
    pub fn capacity(&self) -> u32 {
        self.bit_width << self.bit_width
    }

    /// Variants not yet handed out.
    pub fn remaining(&self) -> u32 {
        self.capacity() - self.used.len() as u32
    }

    /// The default enumeration: tuned prefix (when one exists for `m`),
    /// then rotation-fastest order with golden-ratio mask blocks. Prefix
    /// entries reappearing later in the base order are skipped at draw time.
    pub fn default_order(m: u32, index: u32) -> (u32, u32) {
        let prefix: &[(u32, u32)] = match m {
            6 => &TUNED_ORDER_M6,
            8 => &TUNED_ORDER_M8,
            _ => &[],
        };
        if let Some(&v) = prefix.get(index as usize) {
            return v;
        }
        Self::golden_order(m, index - prefix.len() as u32)
    }

    fn golden_order(m: u32, index: u32) -> (u32, u32) {
        let rotation = index % m;
        let block = index / m;
        let n = 1u32 << m;
        // Odd multiplier derived from the golden ratio: a bijection on
        // [0, 2^m) that keeps successive block masks far apart.
        let multiplier = ((0.618_033_988_749_894_9 * n as f64) as u32) | 1;
        let mask = block.wrapping_mul(multiplier) & (n - 1);
        (rotation, mask)
    }

    fn variant_key(&self, rotation: u32, mask: u32) -> u32 {
        (rotation << self.bit_width) | mask
    }

    /// Hand out the next unused pattern from the default enumeration.
    pub fn next_pattern(&mut self) -> Result<MappingPattern> {
        loop {
            if self.remaining() == 0 {
                return Err(Error::Exhausted(format!(
                    "all {} variants at bit width {} consumed",
                    self.capacity(),
                    self.bit_width
                )));
            }
            let (rotation, mask) = Self::default_order(self.bit_width, self.raw_index);
            self.raw_index += 1;
            if self.used.insert(self.variant_key(rotation, mask)) {
                return make_pattern(self.bit_width, rotation, mask);
            }
        }
    }

    /// Request a specific variant. Fails if it was already consumed in this
    /// evaluation; reuse would silently correlate streams.
    pub fn take(&mut self, rotation: u32, xor_mask: u32) -> Result<MappingPattern> {
        let pattern = make_pattern(self.bit_width, rotation, xor_mask)?;
        if !self.used.insert(self.variant_key(rotation, xor_mask)) {
            return Err(Error::Exhausted(format!(
                "variant ({rotation}, {xor_mask}) already consumed in this evaluation"
            )));
        }
        Ok(pattern)
    }

    /// Encode an operand through the next fresh pattern.
    pub fn encode_next(&mut self, value_bits: u32) -> Result<BitBundle> {
        let p = self.next_pattern()?;
        encode_deterministic(value_bits, &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_pattern_m3_assignments() {
        // Enumerated trailing-ones counts of j = 0..7.
        let p = make_pattern(3, 0, 0).unwrap();
        let expect = [
            Slot::Digit(2),
            Slot::Digit(1),
            Slot::Digit(2),
            Slot::Digit(0),
            Slot::Digit(2),
            Slot::Digit(1),
            Slot::Digit(2),
            Slot::Const0,
        ];
        for (j, want) in expect.iter().enumerate() {
            assert_eq!(p.slot(j as u32), *want, "position {j}");
        }
    }

    #[test]
    fn pattern_m1() {
        let p = make_pattern(1, 0, 0).unwrap();
        assert_eq!(p.slot(0), Slot::Digit(0));
        assert_eq!(p.slot(1), Slot::Const0);
    }

    #[test]
    fn rotation_preserves_digit_counts() {
        let p = make_pattern(3, 1, 0).unwrap();
        let count = (0..8)
            .filter(|&j| p.slot(j) == Slot::Digit(2))
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn replication_counts_all_variants() {
        // Digit i is assigned to exactly 2^i positions, for every variant.
        for m in 1..=6u32 {
            let n = 1u32 << m;
            for rot in 0..m {
                for mask in 0..n {
                    let p = make_pattern(m, rot, mask).unwrap();
                    let mut counts = vec![0u32; m as usize];
                    let mut zeros = 0;
                    for j in 0..n {
                        match p.slot(j) {
                            Slot::Digit(i) => counts[i as usize] += 1,
                            Slot::Const0 => zeros += 1,
                        }
                    }
                    for (i, &c) in counts.iter().enumerate() {
                        assert_eq!(c, 1 << i, "m={m} rot={rot} mask={mask} digit {i}");
                    }
                    assert_eq!(zeros, 1);
                }
            }
        }
    }

    #[test]
    fn variants_are_distinct_assignments() {
        // Injectivity of variant -> position assignment, exhaustive m <= 6.
        for m in 1..=6u32 {
            let n = 1u32 << m;
            let mut seen = std::collections::HashSet::new();
            for rot in 0..m {
                for mask in 0..n {
                    let p = make_pattern(m, rot, mask).unwrap();
                    let key: Vec<Slot> = (0..n).map(|j| p.slot(j)).collect();
                    assert!(
                        seen.insert(key),
                        "duplicate assignment at m={m} rot={rot} mask={mask}"
                    );
                }
            }
        }
    }

    #[test]
    fn paper_example_stream() {
        let p = make_pattern(3, 0, 0).unwrap();
        let b = encode_deterministic(0b011, &p).unwrap();
        assert_eq!(b.to_bit_string(), "01010100");
        assert_eq!(decode_value(&b), UnitRatio { numer: 3, denom: 8 });
    }

    #[test]
    fn encode_zero_and_full_scale() {
        let p = make_pattern(4, 2, 5).unwrap();
        let zero = encode_deterministic(0, &p).unwrap();
        assert_eq!(zero.popcount(), 0);
        let full = encode_deterministic(15, &p).unwrap();
        // All digits set leaves exactly the one CONST0 position unset.
        assert_eq!(full.popcount(), 15);
    }

    #[test]
    fn deterministic_decode_is_exact() {
        // decode(encode(v)) = v / 2^m: exhaustive over every variant and
        // value for m <= 6, spot-checked masks above that.
        for m in 1..=6u32 {
            let n = 1u32 << m;
            for rot in 0..m {
                for mask in 0..n {
                    let p = make_pattern(m, rot, mask).unwrap();
                    for v in 0..n {
                        let b = encode_deterministic(v, &p).unwrap();
                        assert_eq!(b.popcount(), v, "m={m} rot={rot} mask={mask} v={v}");
                    }
                }
            }
        }
        for m in 7..=8u32 {
            let n = 1u32 << m;
            for rot in 0..m {
                for mask in [0, 1, n / 2, n - 1] {
                    let p = make_pattern(m, rot, mask).unwrap();
                    for v in 0..n {
                        let b = encode_deterministic(v, &p).unwrap();
                        assert_eq!(b.popcount(), v, "m={m} rot={rot} mask={mask} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn thermometer_examples() {
        assert_eq!(
            encode_thermometer(3, 8).unwrap().to_bit_string(),
            "11100000"
        );
        assert_eq!(
            encode_thermometer(0, 8).unwrap().to_bit_string(),
            "00000000"
        );
        assert_eq!(
            encode_thermometer(8, 8).unwrap().to_bit_string(),
            "11111111"
        );
        assert!(encode_thermometer(9, 8).is_err());
    }

    #[test]
    fn random_extremes_and_reproducibility() {
        let zero = encode_random(0, 64, 42).unwrap();
        assert_eq!(zero.popcount(), 0);
        let ones = encode_random(64, 64, 42).unwrap();
        assert_eq!(ones.popcount(), 64);
        let a = encode_random(32, 64, 1).unwrap();
        let b = encode_random(32, 64, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_golden_vector() {
        // Frozen output of the ChaCha8 comparator encoder for (32, 64, 1).
        let b = encode_random(32, 64, 1).unwrap();
        assert_eq!(b.words()[0], GOLDEN_RANDOM_32_64_1);
    }

    // Captured once from the implementation and frozen; guards both the RNG
    // choice and the draw order.
    const GOLDEN_RANDOM_32_64_1: u64 = 0x843a609277e34454;

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize(0.5, 3).unwrap(), 4); // 0.5 * 7 = 3.5 rounds up
        assert_eq!(quantize(1.0, 6).unwrap(), 63);
        assert_eq!(quantize(0.0, 9).unwrap(), 0);
        assert!(quantize(-0.1, 3).is_err());
        assert!(quantize(1.1, 3).is_err());
    }

    #[test]
    fn decode_examples() {
        let b = BitBundle::from_bit_string("1100").unwrap();
        let v = decode_value(&b);
        assert_eq!((v.numer, v.denom), (2, 4));
        let z = BitBundle::all_zeros(16).unwrap();
        assert_eq!(decode_value(&z).numer, 0);
    }

    #[test]
    fn scc_identical_and_complement() {
        let a = encode_thermometer(3, 8).unwrap();
        assert_eq!(scc(&a, &a).unwrap(), 1.0);
        let not_a = a.complement();
        assert_eq!(scc(&a, &not_a).unwrap(), -1.0);
    }

    #[test]
    fn scc_thermometer_pairs_are_plus_one() {
        // Nested unary sets always overlap maximally.
        let a = encode_thermometer(3, 8).unwrap();
        let b = encode_thermometer(5, 8).unwrap();
        assert_eq!(scc(&a, &b).unwrap(), 1.0);
        for va in 1..16u32 {
            for vb in 1..16u32 {
                let x = encode_thermometer(va, 16).unwrap();
                let y = encode_thermometer(vb, 16).unwrap();
                assert_eq!(scc(&x, &y).unwrap(), 1.0, "va={va} vb={vb}");
            }
        }
    }

    #[test]
    fn scc_zero_value_streams_report_zero() {
        let a = encode_thermometer(0, 8).unwrap();
        let b = encode_thermometer(5, 8).unwrap();
        assert_eq!(scc(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn allocator_never_repeats() {
        // Full drain yields every variant exactly once, including at m=6
        // and m=8 where tuned prefixes precede the base enumeration.
        for m in [4u32, 6, 8] {
            let mut alloc = PatternAllocator::new(m).unwrap();
            let mut seen = std::collections::HashSet::new();
            for _ in 0..alloc.capacity() {
                let p = alloc.next_pattern().unwrap();
                assert!(seen.insert(p.variant()));
            }
            assert!(alloc.next_pattern().is_err());
            assert_eq!(seen.len(), alloc.capacity() as usize);
        }
    }

    #[test]
    fn allocator_take_marks_variants_used() {
        let mut alloc = PatternAllocator::new(4).unwrap();
        alloc.take(2, 5).unwrap();
        assert!(alloc.take(2, 5).is_err());
        assert_eq!(alloc.remaining(), 63);
        // The default enumeration skips what take() consumed.
        let mut seen = std::collections::HashSet::new();
        while alloc.remaining() > 0 {
            seen.insert(alloc.next_pattern().unwrap().variant());
        }
        assert!(!seen.contains(&(2, 5)));
        assert_eq!(seen.len(), 63);
    }

    #[test]
    fn allocator_consecutive_rotations_differ_in_base_order() {
        // Holds for the plain enumeration (no tuned prefix at m=5).
        let m = 5;
        for k in 0..(m * (1 << m) - 2) {
            let (r0, _) = PatternAllocator::default_order(m, k);
            let (r1, _) = PatternAllocator::default_order(m, k + 1);
            let (r2, _) = PatternAllocator::default_order(m, k + 2);
            assert_ne!(r0, r1);
            assert_ne!(r0, r2);
            assert_ne!(r1, r2);
        }
    }

    #[test]
    fn bit_string_round_trip() {
        let s = "0110100110010110";
        let b = BitBundle::from_bit_string(s).unwrap();
        assert_eq!(b.to_bit_string(), s);
        assert!(BitBundle::from_bit_string("01x0").is_err());
        assert!(BitBundle::from_bit_string("011").is_err()); // not a power of two
    }

    #[test]
    fn length_bounds_enforced() {
        assert!(BitBundle::all_zeros(1).is_err());
        assert!(BitBundle::all_zeros(3).is_err());
        assert!(BitBundle::all_zeros(2).is_ok());
        assert!(BitBundle::all_zeros(1 << 16).is_ok());
        assert!(make_pattern(3, 3, 0).is_err());
        assert!(make_pattern(3, 0, 8).is_err());
    }
}
