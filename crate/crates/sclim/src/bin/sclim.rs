//! Command-line front end: reproducible experiments with CSV/JSON/PGM
//! artifacts.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 usage error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use sclim::bitstream::{
    decode_value, encode_deterministic, encode_random, encode_thermometer, make_pattern,
};
use sclim::error::{Error, Result};
use sclim::fault::{mae_experiment, rows_to_csv, sweep_tables, OpKind, SweepConfig};
use sclim::perf::{pipeline_report, table3_csv, ArrayConfig, CostKind};
use sclim::tonemap::{
    quality_metrics, read_pgm, tonemap_reference, tonemap_sc, write_pgm, StreamMode, ToneKind,
    ToneParams,
};

#[derive(Parser)]
#[command(
    name = "sclim",
    about = "Parallel in-memory stochastic computing simulator",
    long_about = "Simulates deterministic stochastic bit-stream generation, gate-level \
                  arithmetic, transcendental function chains, fault-injection accuracy \
                  studies, a serial-vs-parallel cost model and an image tone-mapping \
                  benchmark. All commands are deterministic under a fixed master seed; \
                  the default seed is 0x5C5EED and can be overridden with SCLIM_SEED or \
                  per-command flags."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode one value as a bit-stream and print it.
    Gen(GenArgs),
    /// Measure one Monte-Carlo MAE cell (stochastic vs. binary baseline).
    Mae(MaeArgs),
    /// Full fault-tolerance sweep: writes table1.csv and table2.csv.
    Tables(TablesArgs),
    /// Cost analytics: writes table3.csv and pipeline.json.
    Perf(PerfArgs),
    /// Tone-map a PGM image through the stochastic pipeline.
    Tonemap(TonemapArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Value to encode (must fit the chosen width/length).
    #[arg(long)]
    value: u32,
    /// Operand width m; the stream length is 2^m.
    #[arg(long)]
    bits: u32,
    /// Encoding: det, thermo or random.
    #[arg(long, default_value = "det")]
    mode: String,
    /// Pattern rotation (det mode).
    #[arg(long, default_value_t = 0)]
    rot: u32,
    /// Pattern XOR mask (det mode).
    #[arg(long, default_value_t = 0)]
    mask: u32,
    /// Generator seed (random mode).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct MaeArgs {
    /// Operation: mul, add, sub, min, max, sin, cos, tanh, arctan, sinc,
    /// sigmoid, exp or ln.
    #[arg(long)]
    op: String,
    /// Stream length (power of two).
    #[arg(long, default_value_t = 64)]
    n: u32,
    /// Injected noise in percent (0 to 50).
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Monte-Carlo iterations. 100000 matches the study scale; smaller
    /// counts suit quick desk checks at proportionally wider tolerances.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Master seed (default: SCLIM_SEED or 0x5C5EED).
    #[arg(long)]
    seed: Option<u64>,
    /// Optional CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Monte-Carlo iterations per cell.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Master seed (default: SCLIM_SEED or 0x5C5EED).
    #[arg(long)]
    seed: Option<u64>,
    /// Directory receiving table1.csv and table2.csv.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct PerfArgs {
    /// Usable memory columns.
    #[arg(long, default_value_t = 1024)]
    columns: u64,
    /// Stream length per pixel.
    #[arg(long, default_value_t = 256)]
    n: u32,
    /// Clock frequency in Hz.
    #[arg(long, default_value_t = 200e6)]
    clock_hz: f64,
    /// Pixels per frame.
    #[arg(long, default_value_t = 65536)]
    pixels: u64,
    /// Per-batch overhead cycles.
    #[arg(long, default_value_t = 16.0)]
    overhead: f64,
    /// Activity factor of the energy macro-model.
    #[arg(long, default_value_t = 0.8)]
    activity: f64,
    /// Operation modeled in pipeline.json.
    #[arg(long, default_value = "sigmoid")]
    kind: String,
    /// Directory receiving table3.csv and pipeline.json.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct TonemapArgs {
    /// Input PGM image (P2 or P5, maxval 255).
    #[arg(long = "in")]
    input: PathBuf,
    /// Nonlinearity: sigmoid or tanh.
    #[arg(long = "fn", default_value = "sigmoid")]
    function: String,
    /// Stream length (power of two, >= 16).
    #[arg(long, default_value_t = 256)]
    n: u32,
    /// Stream mode: det or random.
    #[arg(long, default_value = "det")]
    mode: String,
    /// Contrast gain.
    #[arg(long, default_value_t = 1.2)]
    alpha: f64,
    /// Transition point.
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// S-curve slope.
    #[arg(long, default_value_t = 4.0)]
    k: f64,
    /// S-curve center.
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Output PGM path.
    #[arg(long)]
    out: PathBuf,
    /// Metrics JSON path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also run the random-stream pipeline and report both.
    #[arg(long, default_value_t = false)]
    compare_random: bool,
    /// Master seed (default: SCLIM_SEED or 0x5C5EED).
    #[arg(long)]
    seed: Option<u64>,
}

fn master_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("SCLIM_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(sclim::DEFAULT_MASTER_SEED)
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let seed = master_seed(args.seed);
    let bundle = match args.mode.as_str() {
        "det" => {
            let pattern = make_pattern(args.bits, args.rot, args.mask)?;
            encode_deterministic(args.value, &pattern)?
        }
        "thermo" => encode_thermometer(args.value, 1u32 << args.bits)?,
        "random" => encode_random(args.value, 1u32 << args.bits, seed)?,
        other => {
            return Err(Error::Parameter(format!(
                "unknown mode {other:?}, expected det, thermo or random"
            )))
        }
    };
    println!("{bundle}");
    println!("value = {}", decode_value(&bundle));
    Ok(())
}

fn cmd_mae(args: &MaeArgs) -> Result<()> {
    let kind = OpKind::parse(&args.op)
        .ok_or_else(|| Error::Parameter(format!("unknown operation {:?}", args.op)))?;
    let row = mae_experiment(
        kind,
        args.n,
        args.noise / 100.0,
        args.trials,
        master_seed(args.seed),
    )?;
    let csv = rows_to_csv(std::slice::from_ref(&row));
    print!("{csv}");
    if let Some(path) = &args.out {
        std::fs::write(path, csv)?;
    }
    Ok(())
}

fn cmd_tables(args: &TablesArgs) -> Result<()> {
    let cfg = SweepConfig {
        trials: args.trials,
        master_seed: master_seed(args.seed),
        ..SweepConfig::default()
    };
    if args.trials == 0 {
        return Err(Error::Parameter("trial count must be positive".into()));
    }
    std::fs::create_dir_all(&args.out_dir)?;
    let table1 = sweep_tables(&OpKind::ARITHMETIC, &cfg)?;
    std::fs::write(args.out_dir.join("table1.csv"), rows_to_csv(&table1))?;
    let table2 = sweep_tables(&OpKind::transcendental(), &cfg)?;
    std::fs::write(args.out_dir.join("table2.csv"), rows_to_csv(&table2))?;
    println!(
        "wrote {} and {} ({} + {} rows, {} trials each, seed {:#x})",
        args.out_dir.join("table1.csv").display(),
        args.out_dir.join("table2.csv").display(),
        table1.len(),
        table2.len(),
        cfg.trials,
        cfg.master_seed
    );
    Ok(())
}

fn cmd_perf(args: &PerfArgs) -> Result<()> {
    let kind = CostKind::parse(&args.kind)
        .ok_or_else(|| Error::Parameter(format!("unknown operation {:?}", args.kind)))?;
    let cfg = ArrayConfig {
        columns_total: args.columns,
        stream_length: args.n,
        clock_hz: args.clock_hz,
        batch_overhead_cycles: args.overhead,
        image_pixels: args.pixels,
        activity_factor: args.activity,
    };
    let report = pipeline_report(&cfg, kind)?;
    std::fs::create_dir_all(&args.out_dir)?;
    std::fs::write(args.out_dir.join("table3.csv"), table3_csv())?;
    std::fs::write(args.out_dir.join("pipeline.json"), report.to_json())?;
    println!(
        "{}: parallel {:.1} fps, serial {:.1} fps, throughput x{:.1}, EDP x{:.1}",
        kind.column_name(),
        report.fps_parallel,
        report.fps_serial,
        report.throughput_ratio,
        report.edp_ratio
    );
    Ok(())
}

fn cmd_tonemap(args: &TonemapArgs) -> Result<()> {
    let kind = ToneKind::parse(&args.function)
        .ok_or_else(|| Error::Parameter(format!("unknown function {:?}", args.function)))?;
    let params = ToneParams {
        alpha: args.alpha,
        beta: args.beta,
        k: args.k,
        c: args.c,
    };
    let seed = master_seed(args.seed);
    let primary_mode = match args.mode.as_str() {
        "det" => StreamMode::Deterministic,
        "random" => StreamMode::Random { seed },
        other => {
            return Err(Error::Parameter(format!(
                "unknown mode {other:?}, expected det or random"
            )))
        }
    };
    let img = read_pgm(&args.input)?;
    let reference = tonemap_reference(&img, &params, kind)?;
    let primary = tonemap_sc(&img, &params, args.n, primary_mode, kind)?;

    let report_json = if args.compare_random {
        let det = match primary_mode {
            StreamMode::Deterministic => primary.clone(),
            _ => tonemap_sc(&img, &params, args.n, StreamMode::Deterministic, kind)?,
        };
        let rand_img = match primary_mode {
            StreamMode::Random { .. } => primary.clone(),
            _ => tonemap_sc(&img, &params, args.n, StreamMode::Random { seed }, kind)?,
        };
        let q_det = quality_metrics(&det, &reference)?;
        let q_rand = quality_metrics(&rand_img, &reference)?;
        let json = serde_json::json!({
            "deterministic": q_det.to_json_value(),
            "random": q_rand.to_json_value(),
            "psnr_db_det": q_det.psnr_db,
            "psnr_db_rand": q_rand.psnr_db,
        });
        serde_json::to_string_pretty(&json).expect("static shape")
    } else {
        quality_metrics(&primary, &reference)?.to_json()
    };

    write_pgm(&primary, &args.out)?;
    if let Some(path) = &args.report {
        std::fs::write(path, &report_json)?;
    }
    println!("{report_json}");
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Mae(args) => cmd_mae(args),
        Command::Tables(args) => cmd_tables(args),
        Command::Perf(args) => cmd_perf(args),
        Command::Tonemap(args) => cmd_tonemap(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
