//! Transcendental function evaluation as cascaded NAND-AND stage chains.
//!
//! Each function is a factorized truncated Maclaurin form
//! `1 - q1*x^d*(1 - q2*x^d*(...))`, optionally multiplied by x at the end.
//! A stage consumes `d` fresh encodings of the operand plus one encoding of
//! its coefficient, ANDs them into a leaf, and NANDs the leaf with the
//! running stream. No delay elements appear anywhere: decorrelation comes
//! entirely from distinct deterministic patterns (or distinct seeds in the
//! comparator model).

use crate::bitstream::{encode_random, BitBundle, PatternAllocator};
use crate::error::{Error, Result};
use crate::gates::{gate_and, gate_nand};
use crate::seeds;

/// The function library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Sin,
    Cos,
    Tanh,
    Arctan,
    Sigmoid,
    Sinc,
    ExpNeg,
    Ln1p,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 8] = [
        FunctionKind::Sin,
        FunctionKind::Cos,
        FunctionKind::Tanh,
        FunctionKind::Arctan,
        FunctionKind::Sinc,
        FunctionKind::Sigmoid,
        FunctionKind::ExpNeg,
        FunctionKind::Ln1p,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FunctionKind::Sin => "sin",
            FunctionKind::Cos => "cos",
            FunctionKind::Tanh => "tanh",
            FunctionKind::Arctan => "arctan",
            FunctionKind::Sigmoid => "sigmoid",
            FunctionKind::Sinc => "sinc",
            FunctionKind::ExpNeg => "exp",
            FunctionKind::Ln1p => "ln",
        }
    }

    pub fn parse(name: &str) -> Option<FunctionKind> {
        match name {
            "sin" => Some(FunctionKind::Sin),
            "cos" => Some(FunctionKind::Cos),
            "tanh" => Some(FunctionKind::Tanh),
            "arctan" | "atan" => Some(FunctionKind::Arctan),
            "sigmoid" => Some(FunctionKind::Sigmoid),
            "sinc" => Some(FunctionKind::Sinc),
            "exp" | "expneg" => Some(FunctionKind::ExpNeg),
            "ln" | "ln1p" => Some(FunctionKind::Ln1p),
            _ => None,
        }
    }
}

/// One NAND stage: `t' = 1 - q * x^d * t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainStage {
    /// Operand power consumed by the leaf (0, 1 or 2).
    pub degree: u32,
    /// Coefficient numerator; the exact coefficient is `num/den` in (0, 1].
    pub coeff_num: u32,
    /// Coefficient denominator.
    pub coeff_den: u32,
}

impl ChainStage {
    pub fn coeff(&self) -> f64 {
        self.coeff_num as f64 / self.coeff_den as f64
    }
}

/// A compiled function: stages listed innermost first, plus a final
/// multiply-by-x flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub kind: FunctionKind,
    pub stages: Vec<ChainStage>,
    pub final_multiply_by_x: bool,
}

impl ChainSpec {
    /// Number of distinct streams one evaluation consumes.
    pub fn leaf_budget(&self) -> u32 {
        let stage_streams: u32 = self.stages.iter().map(|s| s.degree + 1).sum();
        stage_streams + u32::from(self.final_multiply_by_x)
    }
}

const fn stage(degree: u32, num: u32, den: u32) -> ChainStage {
    ChainStage {
        degree,
        coeff_num: num,
        coeff_den: den,
    }
}

/// Coefficient tables of the factorized truncated series, innermost first.
pub fn build_chain(kind: FunctionKind) -> ChainSpec {
    let (stages, final_multiply_by_x): (Vec<ChainStage>, bool) = match kind {
        // sin(x)  ~ x(1 - x^2/6 (1 - x^2/20 (1 - x^2/42)))
        FunctionKind::Sin => (
            vec![stage(2, 1, 42), stage(2, 1, 20), stage(2, 1, 6)],
            true,
        ),
        // cos(x)  ~ 1 - x^2/2 (1 - x^2/12 (1 - x^2/30 (1 - x^2/56)))
        FunctionKind::Cos => (
            vec![
                stage(2, 1, 56),
                stage(2, 1, 30),
                stage(2, 1, 12),
                stage(2, 1, 2),
            ],
            false,
        ),
        // tanh(x) ~ x(1 - x^2/3 (1 - 2x^2/5 (1 - 17x^2/42)))
        FunctionKind::Tanh => (
            vec![stage(2, 17, 42), stage(2, 2, 5), stage(2, 1, 3)],
            true,
        ),
        // arctan(x) ~ x(1 - x^2/3 (1 - 3x^2/5 (1 - 5x^2/7)))
        FunctionKind::Arctan => (
            vec![stage(2, 5, 7), stage(2, 3, 5), stage(2, 1, 3)],
            true,
        ),
        // sigmoid(x) ~ 1 - 1/2 (1 - x/2 (1 - x^2/12 (1 - x^2/10)))
        FunctionKind::Sigmoid => (
            vec![
                stage(2, 1, 10),
                stage(2, 1, 12),
                stage(1, 1, 2),
                stage(0, 1, 2),
            ],
            false,
        ),
        // sinc(x) ~ 1 - x^2/6 (1 - x^2/20 (1 - x^2/42))
        FunctionKind::Sinc => (
            vec![stage(2, 1, 42), stage(2, 1, 20), stage(2, 1, 6)],
            false,
        ),
        // exp(-x) ~ 1 - x(1 - x/2 (1 - x/3 (1 - x/4 (1 - x/5))))
        FunctionKind::ExpNeg => (
            vec![
                stage(1, 1, 5),
                stage(1, 1, 4),
                stage(1, 1, 3),
                stage(1, 1, 2),
                stage(1, 1, 1),
            ],
            false,
        ),
        // ln(1+x) ~ x(1 - x/2 (1 - 2x/3 (1 - 3x/4 (1 - 4x/5))))
        FunctionKind::Ln1p => (
            vec![
                stage(1, 4, 5),
                stage(1, 3, 4),
                stage(1, 2, 3),
                stage(1, 1, 2),
            ],
            true,
        ),
    };
    ChainSpec {
        kind,
        stages,
        final_multiply_by_x,
    }
}

/// Exact real-arithmetic evaluation of the truncated series: `t = 1`, then
/// `t <- 1 - q * x^d * t` per stage, returning `x*t` or `t`.
pub fn reference_poly(kind: FunctionKind, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!("input {x} outside [0, 1]")));
    }
    let spec = build_chain(kind);
    let mut t = 1.0;
    for s in &spec.stages {
        t = 1.0 - s.coeff() * x.powi(s.degree as i32) * t;
    }
    Ok(if spec.final_multiply_by_x { x * t } else { t })
}

/// Ground-truth oracle: the untruncated functions on [0,1].
pub fn true_function(kind: FunctionKind, x: f64) -> f64 {
    match kind {
        FunctionKind::Sin => x.sin(),
        FunctionKind::Cos => x.cos(),
        FunctionKind::Tanh => x.tanh(),
        FunctionKind::Arctan => x.atan(),
        FunctionKind::Sigmoid => 1.0 / (1.0 + (-x).exp()),
        FunctionKind::Sinc => {
            if x == 0.0 {
                1.0
            } else {
                x.sin() / x
            }
        }
        FunctionKind::ExpNeg => (-x).exp(),
        FunctionKind::Ln1p => x.ln_1p(),
    }
}

/// Coefficient word: the nearest representable stream value `k/2^m`.
pub fn coefficient_bits(q: f64, m: u32) -> u32 {
    let n = 1u32 << m;
    (((q * n as f64) + 0.5) as u32).min(n - 1)
}

/// Supplies the leaf streams an evaluation consumes. Deterministic sources
/// hand out fresh replication patterns; random sources hand out comparator
/// streams under derived seeds.
pub trait StreamSource {
    /// Stream length produced by this source.
    fn stream_len(&self) -> u32;
    /// Encode `value_bits` into a fresh stream, never reusing a source.
    fn next_stream(&mut self, value_bits: u32) -> Result<BitBundle>;
}

impl StreamSource for PatternAllocator {
    fn stream_len(&self) -> u32 {
        PatternAllocator::stream_len(self)
    }

    fn next_stream(&mut self, value_bits: u32) -> Result<BitBundle> {
        self.encode_next(value_bits)
    }
}

/// Comparator-model stream supply with per-stream derived seeds.
#[derive(Clone, Debug)]
pub struct RandomStreamSource {
    n: u32,
    seed: u64,
    counter: u64,
}

impl RandomStreamSource {
    pub fn new(n: u32, seed: u64) -> Self {
        RandomStreamSource {
            n,
            seed,
            counter: 0,
        }
    }
}

impl StreamSource for RandomStreamSource {
    fn stream_len(&self) -> u32 {
        self.n
    }

    fn next_stream(&mut self, value_bits: u32) -> Result<BitBundle> {
        let seed = seeds::derive(self.seed, &[self.counter]);
        self.counter += 1;
        encode_random(value_bits, self.n, seed)
    }
}

/// Evaluate a chain over streams from `source`. `input_hook` is applied to
/// every operand (x) stream as it is drawn; the fault harness uses it to
/// inject noise into inputs while coefficient streams stay clean.
pub fn eval_chain_with_source(
    spec: &ChainSpec,
    x_val: u32,
    source: &mut dyn StreamSource,
    input_hook: &mut dyn FnMut(BitBundle) -> BitBundle,
) -> Result<BitBundle> {
    let n = source.stream_len();
    let m = n.trailing_zeros();
    if m < 4 {
        return Err(Error::Config(format!(
            "chain evaluation needs streams of at least 16 bits, got {n}"
        )));
    }
    if x_val >= n {
        return Err(Error::Parameter(format!(
            "operand {x_val} does not fit in {m} bits"
        )));
    }

    // Multiplicative identity must be exact, or every stage inherits a
    // -1/N bias from the blemished CONST0 position.
    let mut t = BitBundle::all_ones(n)?;
    for s in &spec.stages {
        let mut leaf: Option<BitBundle> = None;
        for _ in 0..s.degree {
            let enc = input_hook(source.next_stream(x_val)?);
            leaf = Some(match leaf {
                None => enc,
                Some(acc) => gate_and(&acc, &enc)?,
            });
        }
        let q_bits = coefficient_bits(s.coeff(), m);
        let q_enc = source.next_stream(q_bits)?;
        let leaf = match leaf {
            None => q_enc,
            Some(acc) => gate_and(&acc, &q_enc)?,
        };
        t = gate_nand(&leaf, &t)?;
    }
    if spec.final_multiply_by_x {
        let enc = input_hook(source.next_stream(x_val)?);
        t = gate_and(&t, &enc)?;
    }
    Ok(t)
}

/// Evaluate `kind` on an m-bit operand with deterministic patterns drawn
/// from `alloc`. Identical (kind, operand, allocator state) always produces
/// identical bits.
pub fn eval_chain_sc(
    kind: FunctionKind,
    x_val: u32,
    alloc: &mut PatternAllocator,
) -> Result<BitBundle> {
    let spec = build_chain(kind);
    if spec.leaf_budget() > alloc.remaining() {
        return Err(Error::Exhausted(format!(
            "{} needs {} fresh patterns, allocator has {}",
            kind.name(),
            spec.leaf_budget(),
            alloc.remaining()
        )));
    }
    eval_chain_with_source(&spec, x_val, alloc, &mut |b| b)
}
