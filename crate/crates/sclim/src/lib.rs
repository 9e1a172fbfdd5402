//! Bit-exact simulator and analysis toolkit for a parallel in-memory
//! stochastic computing pipeline.
//!
//! The crate covers the full data path: deterministic bit-stream generation
//! ([`bitstream`]), gate-level stochastic arithmetic ([`gates`]),
//! transcendental function chains ([`chains`]), parallel stream-to-binary
//! conversion ([`s2b`]), fault-injection accuracy studies ([`fault`]), a
//! serial-vs-parallel cycle/power cost model ([`perf`]) and an image
//! tone-mapping benchmark ([`tonemap`]). Everything is deterministic under
//! a fixed master seed, including Monte-Carlo runs executed in parallel.
//!
//! ```
//! use sclim::{decode_value, encode_deterministic, make_pattern};
//!
//! // Binary 011 replicated across an 8-position stream: digit i fills 2^i
//! // slots, so the stream decodes back to exactly 3/8.
//! let pattern = make_pattern(3, 0, 0)?;
//! let stream = encode_deterministic(0b011, &pattern)?;
//! assert_eq!(stream.to_bit_string(), "01010100");
//! assert_eq!(decode_value(&stream).to_string(), "3/8");
//! # Ok::<(), sclim::Error>(())
//! ```

pub mod bitstream;
pub mod chains;
pub mod error;
pub mod fault;
pub mod gates;
pub mod perf;
pub mod s2b;
pub mod seeds;
pub mod tonemap;

pub use bitstream::{
    decode_value, encode_deterministic, encode_random, encode_thermometer, make_pattern,
    quantize, scc, BitBundle, MappingPattern, PatternAllocator, Provenance, Slot, UnitRatio,
};
pub use chains::{build_chain, eval_chain_sc, reference_poly, true_function, ChainSpec, FunctionKind};
pub use error::{Error, Result};
pub use fault::{flip_binary, flip_stream, mae_experiment, sweep_tables, MaeRow, NoiseSpec, OpKind};
pub use gates::{
    gate_and, gate_mux, gate_nand, gate_not, gate_or, gate_xor, sc_abs_sub, sc_approx_add,
    sc_max, sc_min, sc_mul, sc_negate, sc_scaled_add, CorrelationMode,
};
pub use perf::{pdp, pipeline_report, speedup, ArrayConfig, CostKind, Mode, OpCost, PipelineReport};
pub use s2b::{s2b_convert, s2b_cycles, S2BResult};
pub use tonemap::{
    quality_metrics, read_pgm, tone_curve_ref, tonemap_sc, write_pgm, GrayImage, QualityReport,
    StreamMode, ToneKind, ToneParams,
};

/// Master seed used when none is given; overridable via `SCLIM_SEED`.
pub const DEFAULT_MASTER_SEED: u64 = 0x5C5EED;
