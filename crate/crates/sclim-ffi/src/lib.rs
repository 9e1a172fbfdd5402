//! C ABI for the stochastic-computing toolkit.
//!
//! Conventions: every function returns a [`SclimStatus`]; results come back
//! through out-pointers. Bundles, allocators and images are opaque handles
//! owned by the caller and released with the matching `_free` function.
//! Handles are not thread-safe to mutate concurrently, but distinct handles
//! can be used from distinct threads freely.
//!
//! Safety: every function is sound when given pointers that are either null
//! or valid for their documented role; nulls are rejected with
//! [`SclimStatus::NullPointer`]. Per-function safety sections would repeat
//! exactly that, so the lint is silenced crate-wide.
#![allow(clippy::missing_safety_doc)]

use std::ffi::CStr;
use std::os::raw::c_char;

use sclim::bitstream::{
    decode_value, encode_deterministic, encode_random, encode_thermometer, make_pattern, scc,
    BitBundle, PatternAllocator,
};
use sclim::chains::{eval_chain_sc, reference_poly, true_function, FunctionKind};
use sclim::error::Error;
use sclim::fault::{mae_experiment, OpKind};
use sclim::gates;
use sclim::perf::{self, ArrayConfig, CostKind};
use sclim::s2b::s2b_convert;
use sclim::tonemap::{
    quality_metrics, read_pgm, tonemap_reference, tonemap_sc, write_pgm, GrayImage, StreamMode,
    ToneKind, ToneParams,
};

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SclimStatus {
    Ok = 0,
    /// An argument violated a precondition.
    InvalidArgument = 1,
    /// Configuration cannot support the request (stream too short, ...).
    InvalidConfig = 2,
    /// Pattern variants exhausted or reused within one evaluation.
    Exhausted = 3,
    /// Malformed file or stream text.
    BadFormat = 4,
    /// I/O failure.
    Io = 5,
    /// A required pointer was null.
    NullPointer = 6,
}

fn status_of(err: &Error) -> SclimStatus {
    match err {
        Error::Parameter(_) => SclimStatus::InvalidArgument,
        Error::Config(_) => SclimStatus::InvalidConfig,
        Error::Exhausted(_) => SclimStatus::Exhausted,
        Error::Format(_) => SclimStatus::BadFormat,
        Error::Io(_) => SclimStatus::Io,
    }
}

/// Opaque bit-stream handle.
pub struct SclimBundle(BitBundle);
/// Opaque pattern-allocator handle.
pub struct SclimAllocator(PatternAllocator);
/// Opaque grayscale-image handle.
pub struct SclimImage(GrayImage);

/// Transcendental function selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SclimFunction {
    Sin = 0,
    Cos = 1,
    Tanh = 2,
    Arctan = 3,
    Sigmoid = 4,
    Sinc = 5,
    ExpNeg = 6,
    Ln1p = 7,
}

impl From<SclimFunction> for FunctionKind {
    fn from(f: SclimFunction) -> FunctionKind {
        match f {
            SclimFunction::Sin => FunctionKind::Sin,
            SclimFunction::Cos => FunctionKind::Cos,
            SclimFunction::Tanh => FunctionKind::Tanh,
            SclimFunction::Arctan => FunctionKind::Arctan,
            SclimFunction::Sigmoid => FunctionKind::Sigmoid,
            SclimFunction::Sinc => FunctionKind::Sinc,
            SclimFunction::ExpNeg => FunctionKind::ExpNeg,
            SclimFunction::Ln1p => FunctionKind::Ln1p,
        }
    }
}

/// Operation selector for the fault-injection study.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SclimOp {
    Mul = 0,
    ScaledAdd = 1,
    AbsSub = 2,
    Min = 3,
    Max = 4,
    Sin = 5,
    Cos = 6,
    Tanh = 7,
    Arctan = 8,
    Sigmoid = 9,
    Sinc = 10,
    ExpNeg = 11,
    Ln1p = 12,
}

impl From<SclimOp> for OpKind {
    fn from(op: SclimOp) -> OpKind {
        match op {
            SclimOp::Mul => OpKind::Mul,
            SclimOp::ScaledAdd => OpKind::ScaledAdd,
            SclimOp::AbsSub => OpKind::AbsSub,
            SclimOp::Min => OpKind::Min,
            SclimOp::Max => OpKind::Max,
            SclimOp::Sin => OpKind::Transcend(FunctionKind::Sin),
            SclimOp::Cos => OpKind::Transcend(FunctionKind::Cos),
            SclimOp::Tanh => OpKind::Transcend(FunctionKind::Tanh),
            SclimOp::Arctan => OpKind::Transcend(FunctionKind::Arctan),
            SclimOp::Sigmoid => OpKind::Transcend(FunctionKind::Sigmoid),
            SclimOp::Sinc => OpKind::Transcend(FunctionKind::Sinc),
            SclimOp::ExpNeg => OpKind::Transcend(FunctionKind::ExpNeg),
            SclimOp::Ln1p => OpKind::Transcend(FunctionKind::Ln1p),
        }
    }
}

/// Cost-table column selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SclimCostKind {
    MulMin = 0,
    Max = 1,
    ScaledAdd = 2,
    AbsSub = 3,
    Sin = 4,
    Cos = 5,
    Tanh = 6,
    Arctan = 7,
    Sinc = 8,
    Sigmoid = 9,
    ExpNeg = 10,
    Ln1p = 11,
}

impl From<SclimCostKind> for CostKind {
    fn from(k: SclimCostKind) -> CostKind {
        CostKind::ALL[k as usize]
    }
}

/// Execution mode selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SclimMode {
    Parallel = 0,
    Serial = 1,
}

/// One measured cell of the fault-injection study.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SclimMaeRow {
    pub stream_length: u32,
    pub noise_pct: f64,
    pub sc_mae_pct: f64,
    pub binary_mae_pct: f64,
    pub trials: u64,
    pub sc_std_pct: f64,
    pub binary_std_pct: f64,
}

/// Array deployment parameters for the pipeline model.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SclimArrayConfig {
    pub columns_total: u64,
    pub stream_length: u32,
    pub clock_hz: f64,
    pub batch_overhead_cycles: f64,
    pub image_pixels: u64,
    pub activity_factor: f64,
}

/// Throughput and energy summary of one modeled operation.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SclimPipelineReport {
    pub pixels_per_batch: u64,
    pub fps_parallel: f64,
    pub fps_serial: f64,
    pub throughput_ratio: f64,
    pub energy_per_frame_parallel_j: f64,
    pub energy_per_frame_serial_j: f64,
    pub edp_ratio: f64,
}

/// Image fidelity metrics.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SclimQualityReport {
    /// Infinite for identical images.
    pub psnr_db: f64,
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
    pub max_ae: f64,
    pub pearson_corr: f64,
}

/// Tone-mapping parameters.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SclimToneParams {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub c: f64,
}

unsafe fn write_out<T>(out: *mut T, value: T) -> SclimStatus {
    if out.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe { out.write(value) };
    SclimStatus::Ok
}

unsafe fn emit_bundle(out: *mut *mut SclimBundle, b: BitBundle) -> SclimStatus {
    unsafe { write_out(out, Box::into_raw(Box::new(SclimBundle(b)))) }
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        }
    };
}

// ── bundles ───────────────────────────────────────────────────────────

/// Release a bundle handle. Null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn sclim_bundle_free(bundle: *mut SclimBundle) {
    if !bundle.is_null() {
        drop(unsafe { Box::from_raw(bundle) });
    }
}

/// Stream length N of a bundle.
#[no_mangle]
pub unsafe extern "C" fn sclim_bundle_len(
    bundle: *const SclimBundle,
    out_len: *mut u32,
) -> SclimStatus {
    if bundle.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe { write_out(out_len, (*bundle).0.len()) }
}

/// Number of set bits.
#[no_mangle]
pub unsafe extern "C" fn sclim_bundle_popcount(
    bundle: *const SclimBundle,
    out_count: *mut u32,
) -> SclimStatus {
    if bundle.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe { write_out(out_count, (*bundle).0.popcount()) }
}

/// Decoded unipolar value `ones / N`.
#[no_mangle]
pub unsafe extern "C" fn sclim_bundle_decode(
    bundle: *const SclimBundle,
    out_value: *mut f64,
) -> SclimStatus {
    if bundle.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe { write_out(out_value, decode_value(&(*bundle).0).as_f64()) }
}

/// Render the stream as ASCII '0'/'1' into a caller buffer of at least
/// N + 1 bytes (NUL terminated).
#[no_mangle]
pub unsafe extern "C" fn sclim_bundle_to_string(
    bundle: *const SclimBundle,
    buffer: *mut c_char,
    buffer_len: usize,
) -> SclimStatus {
    if bundle.is_null() || buffer.is_null() {
        return SclimStatus::NullPointer;
    }
    let text = unsafe { (*bundle).0.to_bit_string() };
    if buffer_len < text.len() + 1 {
        return SclimStatus::InvalidArgument;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(text.as_ptr(), buffer as *mut u8, text.len());
        *buffer.add(text.len()) = 0;
    }
    SclimStatus::Ok
}

// ── encoders ──────────────────────────────────────────────────────────

/// Deterministic replication-pattern encoding of an m-bit operand.
#[no_mangle]
pub unsafe extern "C" fn sclim_encode_deterministic(
    value_bits: u32,
    bit_width: u32,
    rotation: u32,
    xor_mask: u32,
    out_bundle: *mut *mut SclimBundle,
) -> SclimStatus {
    let pattern = try_ffi!(make_pattern(bit_width, rotation, xor_mask));
    let b = try_ffi!(encode_deterministic(value_bits, &pattern));
    unsafe { emit_bundle(out_bundle, b) }
}

/// Thermometer (unary) encoding.
#[no_mangle]
pub unsafe extern "C" fn sclim_encode_thermometer(
    value_bits: u32,
    stream_length: u32,
    out_bundle: *mut *mut SclimBundle,
) -> SclimStatus {
    let b = try_ffi!(encode_thermometer(value_bits, stream_length));
    unsafe { emit_bundle(out_bundle, b) }
}

/// Seeded comparator encoding.
#[no_mangle]
pub unsafe extern "C" fn sclim_encode_random(
    value_bits: u32,
    stream_length: u32,
    seed: u64,
    out_bundle: *mut *mut SclimBundle,
) -> SclimStatus {
    let b = try_ffi!(encode_random(value_bits, stream_length, seed));
    unsafe { emit_bundle(out_bundle, b) }
}

// ── gates ─────────────────────────────────────────────────────────────

macro_rules! binary_gate {
    ($(#[$doc:meta])* $name:ident, $gate:path) => {
        $(#[$doc])*
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a: *const SclimBundle,
            b: *const SclimBundle,
            out: *mut *mut SclimBundle,
        ) -> SclimStatus {
            if a.is_null() || b.is_null() {
                return SclimStatus::NullPointer;
            }
            let r = try_ffi!($gate(unsafe { &(*a).0 }, unsafe { &(*b).0 }));
            unsafe { emit_bundle(out, r) }
        }
    };
}

binary_gate!(
    /// Position-wise AND.
    sclim_gate_and,
    gates::gate_and
);
binary_gate!(
    /// Position-wise OR.
    sclim_gate_or,
    gates::gate_or
);
binary_gate!(
    /// Position-wise XOR.
    sclim_gate_xor,
    gates::gate_xor
);

/// Position-wise complement.
#[no_mangle]
pub unsafe extern "C" fn sclim_gate_not(
    a: *const SclimBundle,
    out: *mut *mut SclimBundle,
) -> SclimStatus {
    if a.is_null() {
        return SclimStatus::NullPointer;
    }
    let r = gates::gate_not(unsafe { &(*a).0 });
    unsafe { emit_bundle(out, r) }
}

/// Position-wise multiplexer: select bit 1 picks `a`, 0 picks `b`.
#[no_mangle]
pub unsafe extern "C" fn sclim_gate_mux(
    a: *const SclimBundle,
    b: *const SclimBundle,
    sel: *const SclimBundle,
    out: *mut *mut SclimBundle,
) -> SclimStatus {
    if a.is_null() || b.is_null() || sel.is_null() {
        return SclimStatus::NullPointer;
    }
    let r = try_ffi!(gates::gate_mux(
        unsafe { &(*a).0 },
        unsafe { &(*b).0 },
        unsafe { &(*sel).0 }
    ));
    unsafe { emit_bundle(out, r) }
}

/// Stochastic cross-correlation of two equal-length streams.
#[no_mangle]
pub unsafe extern "C" fn sclim_scc(
    a: *const SclimBundle,
    b: *const SclimBundle,
    out_scc: *mut f64,
) -> SclimStatus {
    if a.is_null() || b.is_null() {
        return SclimStatus::NullPointer;
    }
    let v = try_ffi!(scc(unsafe { &(*a).0 }, unsafe { &(*b).0 }));
    unsafe { write_out(out_scc, v) }
}

// ── allocator and arithmetic ──────────────────────────────────────────

/// Fresh pattern allocator for `2^bit_width`-bit streams.
#[no_mangle]
pub unsafe extern "C" fn sclim_allocator_new(
    bit_width: u32,
    out_alloc: *mut *mut SclimAllocator,
) -> SclimStatus {
    let alloc = try_ffi!(PatternAllocator::new(bit_width));
    unsafe { write_out(out_alloc, Box::into_raw(Box::new(SclimAllocator(alloc)))) }
}

/// Release an allocator handle. Null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn sclim_allocator_free(alloc: *mut SclimAllocator) {
    if !alloc.is_null() {
        drop(unsafe { Box::from_raw(alloc) });
    }
}

/// Number of unused variants left.
#[no_mangle]
pub unsafe extern "C" fn sclim_allocator_remaining(
    alloc: *const SclimAllocator,
    out_remaining: *mut u32,
) -> SclimStatus {
    if alloc.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe { write_out(out_remaining, (*alloc).0.remaining()) }
}

/// Encode an operand through the allocator's next fresh pattern.
#[no_mangle]
pub unsafe extern "C" fn sclim_allocator_encode_next(
    alloc: *mut SclimAllocator,
    value_bits: u32,
    out_bundle: *mut *mut SclimBundle,
) -> SclimStatus {
    if alloc.is_null() {
        return SclimStatus::NullPointer;
    }
    let b = try_ffi!(unsafe { &mut (*alloc).0 }.encode_next(value_bits));
    unsafe { emit_bundle(out_bundle, b) }
}

macro_rules! arith_op {
    ($(#[$doc:meta])* $name:ident, $op:path) => {
        $(#[$doc])*
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a_val: u32,
            b_val: u32,
            bit_width: u32,
            out: *mut *mut SclimBundle,
        ) -> SclimStatus {
            let mut alloc = try_ffi!(PatternAllocator::new(bit_width));
            let r = try_ffi!($op(a_val, b_val, &mut alloc));
            unsafe { emit_bundle(out, r) }
        }
    };
}

arith_op!(
    /// Stochastic multiplication of two m-bit operands (one evaluation).
    sclim_sc_mul,
    gates::sc_mul
);
arith_op!(
    /// Stochastic scaled addition `(a + b) / 2`.
    sclim_sc_scaled_add,
    gates::sc_scaled_add
);
arith_op!(
    /// Stochastic approximate addition `a + b - a*b`.
    sclim_sc_approx_add,
    gates::sc_approx_add
);

macro_rules! thermo_op {
    ($(#[$doc:meta])* $name:ident, $op:path) => {
        $(#[$doc])*
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            a_val: u32,
            b_val: u32,
            stream_length: u32,
            out: *mut *mut SclimBundle,
        ) -> SclimStatus {
            let r = try_ffi!($op(a_val, b_val, stream_length));
            unsafe { emit_bundle(out, r) }
        }
    };
}

thermo_op!(
    /// Exact stochastic minimum over thermometer encodings.
    sclim_sc_min,
    gates::sc_min
);
thermo_op!(
    /// Exact stochastic maximum over thermometer encodings.
    sclim_sc_max,
    gates::sc_max
);
thermo_op!(
    /// Exact stochastic absolute difference over thermometer encodings.
    sclim_sc_abs_sub,
    gates::sc_abs_sub
);

// ── transcendental chains ─────────────────────────────────────────────

/// Evaluate a transcendental chain on an m-bit operand with deterministic
/// streams (fresh internal allocator; one evaluation per call).
#[no_mangle]
pub unsafe extern "C" fn sclim_eval_chain(
    function: SclimFunction,
    x_val: u32,
    bit_width: u32,
    out: *mut *mut SclimBundle,
) -> SclimStatus {
    let mut alloc = try_ffi!(PatternAllocator::new(bit_width));
    let r = try_ffi!(eval_chain_sc(function.into(), x_val, &mut alloc));
    unsafe { emit_bundle(out, r) }
}

/// Exact real evaluation of the truncated series.
#[no_mangle]
pub unsafe extern "C" fn sclim_reference_poly(
    function: SclimFunction,
    x: f64,
    out_value: *mut f64,
) -> SclimStatus {
    let v = try_ffi!(reference_poly(function.into(), x));
    unsafe { write_out(out_value, v) }
}

/// Ground-truth function value on [0, 1].
#[no_mangle]
pub unsafe extern "C" fn sclim_true_function(
    function: SclimFunction,
    x: f64,
    out_value: *mut f64,
) -> SclimStatus {
    unsafe { write_out(out_value, true_function(function.into(), x)) }
}

// ── stream-to-binary ──────────────────────────────────────────────────

/// Convert a bundle back to its binary count via the adder tree.
#[no_mangle]
pub unsafe extern "C" fn sclim_stream_to_binary(
    bundle: *const SclimBundle,
    out_count: *mut u32,
    out_steps: *mut u32,
    out_cycles: *mut f64,
) -> SclimStatus {
    if bundle.is_null() {
        return SclimStatus::NullPointer;
    }
    let r = s2b_convert(unsafe { &(*bundle).0 });
    unsafe {
        let s = write_out(out_count, r.count);
        if s != SclimStatus::Ok {
            return s;
        }
        let s = write_out(out_steps, r.steps);
        if s != SclimStatus::Ok {
            return s;
        }
        write_out(out_cycles, r.cycles)
    }
}

// ── fault-injection study ─────────────────────────────────────────────

/// Run one Monte-Carlo cell of the accuracy study.
#[no_mangle]
pub unsafe extern "C" fn sclim_mae_experiment(
    op: SclimOp,
    stream_length: u32,
    noise_rate: f64,
    trials: u64,
    master_seed: u64,
    out_row: *mut SclimMaeRow,
) -> SclimStatus {
    let row = try_ffi!(mae_experiment(
        op.into(),
        stream_length,
        noise_rate,
        trials,
        master_seed
    ));
    unsafe {
        write_out(
            out_row,
            SclimMaeRow {
                stream_length: row.n,
                noise_pct: row.noise_pct,
                sc_mae_pct: row.sc_mae_pct,
                binary_mae_pct: row.binary_mae_pct,
                trials: row.trials,
                sc_std_pct: row.sc_std_pct,
                binary_std_pct: row.binary_std_pct,
            },
        )
    }
}

// ── cost model ────────────────────────────────────────────────────────

/// Power-delay product in mW x cycles.
#[no_mangle]
pub unsafe extern "C" fn sclim_pdp(
    kind: SclimCostKind,
    mode: SclimMode,
    out_value: *mut f64,
) -> SclimStatus {
    let m = match mode {
        SclimMode::Parallel => perf::Mode::Parallel,
        SclimMode::Serial => perf::Mode::Serial,
    };
    unsafe { write_out(out_value, perf::pdp(kind.into(), m)) }
}

/// Serial-to-parallel cycle ratio.
#[no_mangle]
pub unsafe extern "C" fn sclim_speedup(
    kind: SclimCostKind,
    out_value: *mut f64,
) -> SclimStatus {
    unsafe { write_out(out_value, perf::speedup(kind.into())) }
}

/// Model one frame of the image pipeline on the array.
#[no_mangle]
pub unsafe extern "C" fn sclim_pipeline_report(
    config: *const SclimArrayConfig,
    kind: SclimCostKind,
    out_report: *mut SclimPipelineReport,
) -> SclimStatus {
    if config.is_null() {
        return SclimStatus::NullPointer;
    }
    let c = unsafe { *config };
    let cfg = ArrayConfig {
        columns_total: c.columns_total,
        stream_length: c.stream_length,
        clock_hz: c.clock_hz,
        batch_overhead_cycles: c.batch_overhead_cycles,
        image_pixels: c.image_pixels,
        activity_factor: c.activity_factor,
    };
    let r = try_ffi!(perf::pipeline_report(&cfg, kind.into()));
    unsafe {
        write_out(
            out_report,
            SclimPipelineReport {
                pixels_per_batch: r.pixels_per_batch,
                fps_parallel: r.fps_parallel,
                fps_serial: r.fps_serial,
                throughput_ratio: r.throughput_ratio,
                energy_per_frame_parallel_j: r.energy_per_frame_parallel_j,
                energy_per_frame_serial_j: r.energy_per_frame_serial_j,
                edp_ratio: r.edp_ratio,
            },
        )
    }
}

// ── images and tone mapping ───────────────────────────────────────────

/// Release an image handle. Null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn sclim_image_free(image: *mut SclimImage) {
    if !image.is_null() {
        drop(unsafe { Box::from_raw(image) });
    }
}

/// Read a PGM file (P2 or P5, maxval 255).
#[no_mangle]
pub unsafe extern "C" fn sclim_image_read_pgm(
    path: *const c_char,
    out_image: *mut *mut SclimImage,
) -> SclimStatus {
    if path.is_null() {
        return SclimStatus::NullPointer;
    }
    let path = match unsafe { CStr::from_ptr(path) }.to_str() {
        Ok(p) => p,
        Err(_) => return SclimStatus::InvalidArgument,
    };
    let img = try_ffi!(read_pgm(path));
    unsafe { write_out(out_image, Box::into_raw(Box::new(SclimImage(img)))) }
}

/// Write a binary P5 file.
#[no_mangle]
pub unsafe extern "C" fn sclim_image_write_pgm(
    image: *const SclimImage,
    path: *const c_char,
) -> SclimStatus {
    if image.is_null() || path.is_null() {
        return SclimStatus::NullPointer;
    }
    let path = match unsafe { CStr::from_ptr(path) }.to_str() {
        Ok(p) => p,
        Err(_) => return SclimStatus::InvalidArgument,
    };
    try_ffi!(write_pgm(unsafe { &(*image).0 }, path));
    SclimStatus::Ok
}

/// Image dimensions.
#[no_mangle]
pub unsafe extern "C" fn sclim_image_size(
    image: *const SclimImage,
    out_width: *mut u32,
    out_height: *mut u32,
) -> SclimStatus {
    if image.is_null() {
        return SclimStatus::NullPointer;
    }
    unsafe {
        let s = write_out(out_width, (*image).0.width());
        if s != SclimStatus::Ok {
            return s;
        }
        write_out(out_height, (*image).0.height())
    }
}

fn tone_kind(use_tanh: bool) -> ToneKind {
    if use_tanh {
        ToneKind::Tanh
    } else {
        ToneKind::Sigmoid
    }
}

/// Tone-map through the stochastic pipeline. `random_seed` is ignored when
/// `use_random_streams` is false.
#[no_mangle]
pub unsafe extern "C" fn sclim_tonemap(
    image: *const SclimImage,
    params: *const SclimToneParams,
    stream_length: u32,
    use_tanh: bool,
    use_random_streams: bool,
    random_seed: u64,
    out_image: *mut *mut SclimImage,
) -> SclimStatus {
    if image.is_null() || params.is_null() {
        return SclimStatus::NullPointer;
    }
    let p = unsafe { *params };
    let tone = ToneParams {
        alpha: p.alpha,
        beta: p.beta,
        k: p.k,
        c: p.c,
    };
    let mode = if use_random_streams {
        StreamMode::Random { seed: random_seed }
    } else {
        StreamMode::Deterministic
    };
    let mapped = try_ffi!(tonemap_sc(
        unsafe { &(*image).0 },
        &tone,
        stream_length,
        mode,
        tone_kind(use_tanh)
    ));
    unsafe { write_out(out_image, Box::into_raw(Box::new(SclimImage(mapped)))) }
}

/// Apply the full-precision reference S-curve.
#[no_mangle]
pub unsafe extern "C" fn sclim_tonemap_reference(
    image: *const SclimImage,
    params: *const SclimToneParams,
    use_tanh: bool,
    out_image: *mut *mut SclimImage,
) -> SclimStatus {
    if image.is_null() || params.is_null() {
        return SclimStatus::NullPointer;
    }
    let p = unsafe { *params };
    let tone = ToneParams {
        alpha: p.alpha,
        beta: p.beta,
        k: p.k,
        c: p.c,
    };
    let mapped = try_ffi!(tonemap_reference(
        unsafe { &(*image).0 },
        &tone,
        tone_kind(use_tanh)
    ));
    unsafe { write_out(out_image, Box::into_raw(Box::new(SclimImage(mapped)))) }
}

/// Pixel-wise fidelity metrics of `image` against `reference`.
#[no_mangle]
pub unsafe extern "C" fn sclim_quality_metrics(
    image: *const SclimImage,
    reference: *const SclimImage,
    out_report: *mut SclimQualityReport,
) -> SclimStatus {
    if image.is_null() || reference.is_null() {
        return SclimStatus::NullPointer;
    }
    let q = try_ffi!(quality_metrics(
        unsafe { &(*image).0 },
        unsafe { &(*reference).0 }
    ));
    unsafe {
        write_out(
            out_report,
            SclimQualityReport {
                psnr_db: q.psnr_db,
                mse: q.mse,
                rmse: q.rmse,
                mae: q.mae,
                max_ae: q.max_ae,
                pearson_corr: q.pearson_corr,
            },
        )
    }
}
