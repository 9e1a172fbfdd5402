//! Noise injection and Monte-Carlo accuracy measurement.
//!
//! Reproduces the fault-tolerance study layout: per trial, inputs are drawn
//! uniformly on [0,1], converted to `log2(N)`-bit words by truncation (the
//! A/D convention of the study: a word k carries the stream value k/N), and
//! pushed through both the stochastic path (streams flipped bit-wise at the
//! noise rate) and a binary baseline of the same precision (word digits
//! flipped at the same rate). Noise hits only input operands; constant
//! coefficient and select streams stay clean. The stochastic error is
//! measured against the exact real-valued result; the binary error against
//! the noiseless binary result, so the binary column is exactly zero at
//! rate 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitstream::{decode_value, encode_thermometer, BitBundle, PatternAllocator};
use crate::chains::{build_chain, eval_chain_with_source, reference_poly, true_function, FunctionKind};
use crate::error::{Error, Result};
use crate::gates::{gate_and, gate_mux, gate_or, gate_xor};
use crate::seeds;

/// Per-bit flip probability plus the seed that makes it reproducible.
#[derive(Clone, Copy, Debug)]
pub struct NoiseSpec {
    pub rate: f64,
    pub seed: u64,
}

impl NoiseSpec {
    /// Rates are capped at 0.5: beyond that, flipping encodes the
    /// complement rather than noise.
    pub fn new(rate: f64, seed: u64) -> Result<Self> {
        if !(0.0..=0.5).contains(&rate) {
            return Err(Error::Parameter(format!(
                "noise rate must be in [0, 0.5], got {rate}"
            )));
        }
        Ok(NoiseSpec { rate, seed })
    }
}

/// Flip each bit of a stream independently with probability `rate`.
pub fn flip_stream(b: &BitBundle, noise: &NoiseSpec) -> BitBundle {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    flip_stream_with(b, noise.rate, &mut rng)
}

fn flip_stream_with(b: &BitBundle, rate: f64, rng: &mut impl Rng) -> BitBundle {
    if rate == 0.0 {
        return b.clone();
    }
    let mut out = b.clone();
    for j in 0..b.len() {
        if rng.gen::<f64>() < rate {
            out.toggle(j);
        }
    }
    out.set_provenance(crate::bitstream::Provenance::Derived);
    out
}

/// Flip each of the m digits of a word independently with probability `rate`.
pub fn flip_binary(word: u32, m: u32, noise: &NoiseSpec) -> Result<u32> {
    if word >= (1u32 << m) {
        return Err(Error::Parameter(format!(
            "word {word} does not fit in {m} bits"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    Ok(flip_binary_with(word, m, noise.rate, &mut rng))
}

fn flip_binary_with(word: u32, m: u32, rate: f64, rng: &mut impl Rng) -> u32 {
    let mut out = word;
    for i in 0..m {
        if rng.gen::<f64>() < rate {
            out ^= 1 << i;
        }
    }
    out
}

/// The operations and functions the study covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Mul,
    ScaledAdd,
    AbsSub,
    Min,
    Max,
    Transcend(FunctionKind),
}

impl OpKind {
    /// The five basic arithmetic rows.
    pub const ARITHMETIC: [OpKind; 5] = [
        OpKind::Mul,
        OpKind::ScaledAdd,
        OpKind::AbsSub,
        OpKind::Min,
        OpKind::Max,
    ];

    /// The eight transcendental rows.
    pub fn transcendental() -> [OpKind; 8] {
        FunctionKind::ALL.map(OpKind::Transcend)
    }

    pub fn name(&self) -> &'static str {
        match self {
            OpKind::Mul => "mul",
            OpKind::ScaledAdd => "scaled_add",
            OpKind::AbsSub => "abs_sub",
            OpKind::Min => "min",
            OpKind::Max => "max",
            OpKind::Transcend(k) => k.name(),
        }
    }

    pub fn parse(name: &str) -> Option<OpKind> {
        match name {
            "mul" => Some(OpKind::Mul),
            "add" | "scaled_add" => Some(OpKind::ScaledAdd),
            "sub" | "abs_sub" => Some(OpKind::AbsSub),
            "min" => Some(OpKind::Min),
            "max" => Some(OpKind::Max),
            other => FunctionKind::parse(other).map(OpKind::Transcend),
        }
    }

    fn is_binary_op(&self) -> bool {
        !matches!(self, OpKind::Transcend(_))
    }

    /// Stable tag used when deriving per-cell seeds.
    fn seed_tag(&self) -> u64 {
        match self {
            OpKind::Mul => 1,
            OpKind::ScaledAdd => 2,
            OpKind::AbsSub => 3,
            OpKind::Min => 4,
            OpKind::Max => 5,
            OpKind::Transcend(k) => {
                10 + FunctionKind::ALL.iter().position(|f| f == k).unwrap() as u64
            }
        }
    }
}

/// One measured cell of the study.
#[derive(Clone, Copy, Debug)]
pub struct MaeRow {
    pub kind: OpKind,
    pub n: u32,
    pub noise_pct: f64,
    pub sc_mae_pct: f64,
    pub binary_mae_pct: f64,
    pub trials: u64,
    /// Standard deviation of the per-trial |error| (percent); the standard
    /// error of `sc_mae_pct` is this over sqrt(trials).
    pub sc_std_pct: f64,
    pub binary_std_pct: f64,
}

/// Truncating input conversion: word `k` stands for the stream value `k/N`.
fn input_word(x: f64, n: u32) -> u32 {
    ((x * n as f64) as u32).min(n - 1)
}

fn exact_arith(kind: OpKind, a: f64, b: f64) -> f64 {
    match kind {
        OpKind::Mul => a * b,
        OpKind::ScaledAdd => 0.5 * (a + b),
        OpKind::AbsSub => (a - b).abs(),
        OpKind::Min => a.min(b),
        OpKind::Max => a.max(b),
        OpKind::Transcend(_) => unreachable!("arithmetic kinds only"),
    }
}

/// One trial of the stochastic path; returns |decoded - exact|.
fn sc_trial(
    kind: OpKind,
    m: u32,
    n: u32,
    rate: f64,
    a: f64,
    b: f64,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let flip = |bundle: BitBundle, rng: &mut ChaCha8Rng| -> BitBundle {
        flip_stream_with(&bundle, rate, rng)
    };
    let aq = input_word(a, n);
    let bq = input_word(b, n);
    let decoded = match kind {
        OpKind::Mul => {
            let mut alloc = PatternAllocator::new(m)?;
            let (ea, eb) = crate::gates::mul_operand_streams(aq, bq, &mut alloc)?;
            let (ea, eb) = (flip(ea, rng), flip(eb, rng));
            decode_value(&gate_and(&ea, &eb)?).as_f64()
        }
        OpKind::ScaledAdd => {
            let mut alloc = PatternAllocator::new(m)?;
            // The select stream carries the constant one half and stays clean.
            let (ea, eb, sel) = crate::gates::scaled_add_streams(aq, bq, &mut alloc)?;
            let (ea, eb) = (flip(ea, rng), flip(eb, rng));
            decode_value(&gate_mux(&ea, &eb, &sel)?).as_f64()
        }
        OpKind::AbsSub => {
            let ea = flip(encode_thermometer(aq, n)?, rng);
            let eb = flip(encode_thermometer(bq, n)?, rng);
            decode_value(&gate_xor(&ea, &eb)?).as_f64()
        }
        OpKind::Min => {
            let ea = flip(encode_thermometer(aq, n)?, rng);
            let eb = flip(encode_thermometer(bq, n)?, rng);
            decode_value(&gate_and(&ea, &eb)?).as_f64()
        }
        OpKind::Max => {
            let ea = flip(encode_thermometer(aq, n)?, rng);
            let eb = flip(encode_thermometer(bq, n)?, rng);
            decode_value(&gate_or(&ea, &eb)?).as_f64()
        }
        OpKind::Transcend(f) => {
            let spec = build_chain(f);
            let mut alloc = PatternAllocator::new(m)?;
            let mut hook = |bundle: BitBundle| flip_stream_with(&bundle, rate, rng);
            let out = eval_chain_with_source(&spec, aq, &mut alloc, &mut hook)?;
            decode_value(&out).as_f64()
        }
    };
    let exact = match kind {
        OpKind::Transcend(f) => true_function(f, a),
        _ => exact_arith(kind, a, b),
    };
    Ok((decoded - exact).abs())
}

/// One trial of the binary baseline; returns |noisy - noiseless| where both
/// sides evaluate the same fixed-point words in real arithmetic.
fn binary_trial(
    kind: OpKind,
    m: u32,
    rate: f64,
    a: f64,
    b: f64,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let n = 1u32 << m;
    let scale = n as f64;
    let aq = input_word(a, n);
    let bq = input_word(b, n);
    let an = flip_binary_with(aq, m, rate, rng);
    let bn = flip_binary_with(bq, m, rate, rng);
    let (clean, noisy) = match kind {
        OpKind::Transcend(f) => (
            reference_poly(f, aq as f64 / scale)?,
            reference_poly(f, an as f64 / scale)?,
        ),
        _ => (
            exact_arith(kind, aq as f64 / scale, bq as f64 / scale),
            exact_arith(kind, an as f64 / scale, bn as f64 / scale),
        ),
    };
    Ok((noisy - clean).abs())
}

/// Measure one cell: `trials` Monte-Carlo iterations of `kind` at stream
/// length `n` and the given per-bit flip rate. Per-trial seeds derive from
/// `master_seed` and the trial index, so the result is reproducible
/// regardless of execution order or parallelism.
pub fn mae_experiment(
    kind: OpKind,
    n: u32,
    noise_rate: f64,
    trials: u64,
    master_seed: u64,
) -> Result<MaeRow> {
    if !n.is_power_of_two() || !(16..=65536).contains(&n) {
        return Err(Error::Parameter(format!(
            "stream length must be a power of two in [16, 65536], got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::Parameter("trial count must be positive".into()));
    }
    if !(0.0..=0.5).contains(&noise_rate) {
        return Err(Error::Parameter(format!(
            "noise rate must be in [0, 0.5], got {noise_rate}"
        )));
    }
    let m = n.trailing_zeros();

    let errors: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<(f64, f64)> {
            let mut input_rng =
                ChaCha8Rng::seed_from_u64(seeds::derive(master_seed, &[trial, 0]));
            let a = input_rng.gen::<f64>();
            let b = if kind.is_binary_op() {
                input_rng.gen::<f64>()
            } else {
                0.0
            };
            let mut sc_rng =
                ChaCha8Rng::seed_from_u64(seeds::derive(master_seed, &[trial, 1]));
            let mut bin_rng =
                ChaCha8Rng::seed_from_u64(seeds::derive(master_seed, &[trial, 2]));
            let sc_err = sc_trial(kind, m, n, noise_rate, a, b, &mut sc_rng)?;
            let bin_err = binary_trial(kind, m, noise_rate, a, b, &mut bin_rng)?;
            Ok((sc_err, bin_err))
        })
        .collect::<Result<Vec<_>>>()?;

    // Accumulate in trial order so the result is independent of the
    // parallel schedule.
    let trials_f = trials as f64;
    let (mut sc_sum, mut bin_sum) = (0.0, 0.0);
    for &(s, c) in &errors {
        sc_sum += s;
        bin_sum += c;
    }
    let sc_mean = sc_sum / trials_f;
    let bin_mean = bin_sum / trials_f;
    let (mut sc_var, mut bin_var) = (0.0, 0.0);
    for &(s, c) in &errors {
        sc_var += (s - sc_mean) * (s - sc_mean);
        bin_var += (c - bin_mean) * (c - bin_mean);
    }
    Ok(MaeRow {
        kind,
        n,
        noise_pct: noise_rate * 100.0,
        sc_mae_pct: sc_mean * 100.0,
        binary_mae_pct: bin_mean * 100.0,
        trials,
        sc_std_pct: (sc_var / trials_f).sqrt() * 100.0,
        binary_std_pct: (bin_var / trials_f).sqrt() * 100.0,
    })
}

/// Sweep configuration shared by both study tables.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub stream_lengths: Vec<u32>,
    pub noise_pcts: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            stream_lengths: vec![16, 64],
            noise_pcts: vec![0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0],
            trials: 100_000,
            master_seed: crate::DEFAULT_MASTER_SEED,
        }
    }
}

/// Cartesian sweep over `kinds x stream lengths x noise levels`, emitting
/// rows in table order. Cells run in parallel; each cell's seed derives from
/// the master seed and the cell coordinates alone.
pub fn sweep_tables(kinds: &[OpKind], cfg: &SweepConfig) -> Result<Vec<MaeRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.stream_lengths {
        for &kind in kinds {
            for &noise_pct in &cfg.noise_pcts {
                cells.push((kind, n, noise_pct));
            }
        }
    }
    cells
        .into_par_iter()
        .map(|(kind, n, noise_pct)| {
            let cell_seed = seeds::derive(
                cfg.master_seed,
                &[kind.seed_tag(), n as u64, noise_pct.to_bits()],
            );
            mae_experiment(kind, n, noise_pct / 100.0, cfg.trials, cell_seed)
        })
        .collect()
}

/// CSV header shared by the study tables.
pub const CSV_HEADER: &str = "kind,N,noise_pct,sc_mae_pct,binary_mae_pct,trials";

/// Render rows to CSV: fixed header, two decimal places, LF endings.
pub fn rows_to_csv(rows: &[MaeRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.2},{:.2},{}\n",
            r.kind.name(),
            r.n,
            r.noise_pct,
            r.sc_mae_pct,
            r.binary_mae_pct,
            r.trials
        ));
    }
    out
}
