//! Exercise the C ABI through its exported symbols, including error codes
//! and handle lifecycle.

use sclim_ffi::*;
use std::ffi::CString;

#[test]
fn encode_decode_round_trip() {
    unsafe {
        let mut bundle: *mut SclimBundle = std::ptr::null_mut();
        let status = sclim_encode_deterministic(0b011, 3, 0, 0, &mut bundle);
        assert_eq!(status, SclimStatus::Ok);

        let mut text = [0i8; 16];
        assert_eq!(
            sclim_bundle_to_string(bundle, text.as_mut_ptr() as *mut _, text.len()),
            SclimStatus::Ok
        );
        let rendered = std::ffi::CStr::from_ptr(text.as_ptr() as *const _)
            .to_str()
            .unwrap();
        assert_eq!(rendered, "01010100");

        let mut value = 0.0;
        assert_eq!(sclim_bundle_decode(bundle, &mut value), SclimStatus::Ok);
        assert_eq!(value, 3.0 / 8.0);

        let mut count = 0;
        assert_eq!(sclim_bundle_popcount(bundle, &mut count), SclimStatus::Ok);
        assert_eq!(count, 3);
        sclim_bundle_free(bundle);
    }
}

#[test]
fn error_codes_surface() {
    unsafe {
        let mut bundle: *mut SclimBundle = std::ptr::null_mut();
        // Value does not fit the width.
        assert_eq!(
            sclim_encode_deterministic(20, 3, 0, 0, &mut bundle),
            SclimStatus::InvalidArgument
        );
        // Null out-pointer.
        let mut a: *mut SclimBundle = std::ptr::null_mut();
        sclim_encode_thermometer(3, 8, &mut a);
        assert_eq!(sclim_bundle_decode(a, std::ptr::null_mut()), SclimStatus::NullPointer);
        // Length mismatch between gate operands.
        let mut b: *mut SclimBundle = std::ptr::null_mut();
        sclim_encode_thermometer(3, 16, &mut b);
        let mut out: *mut SclimBundle = std::ptr::null_mut();
        assert_eq!(sclim_gate_and(a, b, &mut out), SclimStatus::InvalidArgument);
        // Chain on too-narrow streams.
        assert_eq!(
            sclim_eval_chain(SclimFunction::Sin, 1, 3, &mut out),
            SclimStatus::InvalidConfig
        );
        sclim_bundle_free(a);
        sclim_bundle_free(b);
    }
}

#[test]
fn gates_and_ops_work() {
    unsafe {
        let mut min: *mut SclimBundle = std::ptr::null_mut();
        assert_eq!(sclim_sc_min(3, 5, 8, &mut min), SclimStatus::Ok);
        let mut count = 0;
        sclim_bundle_popcount(min, &mut count);
        assert_eq!(count, 3);
        sclim_bundle_free(min);

        let mut product: *mut SclimBundle = std::ptr::null_mut();
        assert_eq!(sclim_sc_mul(32, 63, 6, &mut product), SclimStatus::Ok);
        let mut value = 0.0;
        sclim_bundle_decode(product, &mut value);
        assert!((value - 0.5 * (63.0 / 64.0)).abs() <= 2.0 / 64.0);
        sclim_bundle_free(product);
    }
}

#[test]
fn chain_and_s2b() {
    unsafe {
        let mut out: *mut SclimBundle = std::ptr::null_mut();
        assert_eq!(
            sclim_eval_chain(SclimFunction::Sigmoid, 0, 6, &mut out),
            SclimStatus::Ok
        );
        let mut value = 0.0;
        sclim_bundle_decode(out, &mut value);
        assert!((value - 0.5).abs() <= 0.05, "sigmoid(0) ~ 0.5, got {value}");

        let (mut count, mut steps, mut cycles) = (0u32, 0u32, 0f64);
        assert_eq!(
            sclim_stream_to_binary(out, &mut count, &mut steps, &mut cycles),
            SclimStatus::Ok
        );
        let mut pop = 0;
        sclim_bundle_popcount(out, &mut pop);
        assert_eq!(count, pop);
        assert_eq!(steps, 6);
        assert_eq!(cycles, 27.0);
        sclim_bundle_free(out);

        let mut poly = 0.0;
        assert_eq!(
            sclim_reference_poly(SclimFunction::Sin, 0.5, &mut poly),
            SclimStatus::Ok
        );
        assert!((poly - 0.479_425_533).abs() < 1e-6);
    }
}

#[test]
fn allocator_lifecycle() {
    unsafe {
        let mut alloc: *mut SclimAllocator = std::ptr::null_mut();
        assert_eq!(sclim_allocator_new(4, &mut alloc), SclimStatus::Ok);
        let mut remaining = 0;
        sclim_allocator_remaining(alloc, &mut remaining);
        assert_eq!(remaining, 64);
        let mut b: *mut SclimBundle = std::ptr::null_mut();
        assert_eq!(sclim_allocator_encode_next(alloc, 7, &mut b), SclimStatus::Ok);
        sclim_allocator_remaining(alloc, &mut remaining);
        assert_eq!(remaining, 63);
        sclim_bundle_free(b);
        sclim_allocator_free(alloc);
    }
}

#[test]
fn mae_and_perf_models() {
    unsafe {
        let mut row = SclimMaeRow {
            stream_length: 0,
            noise_pct: 0.0,
            sc_mae_pct: 0.0,
            binary_mae_pct: 0.0,
            trials: 0,
            sc_std_pct: 0.0,
            binary_std_pct: 0.0,
        };
        assert_eq!(
            sclim_mae_experiment(SclimOp::Mul, 64, 0.0, 2000, 7, &mut row),
            SclimStatus::Ok
        );
        assert_eq!(row.binary_mae_pct, 0.0);
        assert!(row.sc_mae_pct > 0.5 && row.sc_mae_pct < 2.5);

        let mut pdp = 0.0;
        assert_eq!(
            sclim_pdp(SclimCostKind::Sin, SclimMode::Serial, &mut pdp),
            SclimStatus::Ok
        );
        assert!((pdp - 58.29).abs() < 1e-9);

        let cfg = SclimArrayConfig {
            columns_total: 1024,
            stream_length: 256,
            clock_hz: 200e6,
            batch_overhead_cycles: 16.0,
            image_pixels: 65536,
            activity_factor: 0.8,
        };
        let mut report = SclimPipelineReport {
            pixels_per_batch: 0,
            fps_parallel: 0.0,
            fps_serial: 0.0,
            throughput_ratio: 0.0,
            energy_per_frame_parallel_j: 0.0,
            energy_per_frame_serial_j: 0.0,
            edp_ratio: 0.0,
        };
        assert_eq!(
            sclim_pipeline_report(&cfg, SclimCostKind::Sigmoid, &mut report),
            SclimStatus::Ok
        );
        assert_eq!(report.pixels_per_batch, 4);
        assert!((report.fps_serial - 11.92).abs() < 0.01);

        let starved = SclimArrayConfig {
            columns_total: 128,
            ..cfg
        };
        assert_eq!(
            sclim_pipeline_report(&starved, SclimCostKind::Sigmoid, &mut report),
            SclimStatus::InvalidArgument
        );
    }
}

#[test]
fn image_pipeline_through_ffi() {
    unsafe {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../assets/test_image_256.pgm");
        let c_path = CString::new(path).unwrap();
        let mut img: *mut SclimImage = std::ptr::null_mut();
        assert_eq!(sclim_image_read_pgm(c_path.as_ptr(), &mut img), SclimStatus::Ok);
        let (mut w, mut h) = (0, 0);
        sclim_image_size(img, &mut w, &mut h);
        assert_eq!((w, h), (256, 256));

        let params = SclimToneParams {
            alpha: 1.2,
            beta: 0.5,
            k: 4.0,
            c: 0.5,
        };
        let mut reference: *mut SclimImage = std::ptr::null_mut();
        assert_eq!(
            sclim_tonemap_reference(img, &params, false, &mut reference),
            SclimStatus::Ok
        );
        let mut mapped: *mut SclimImage = std::ptr::null_mut();
        assert_eq!(
            sclim_tonemap(img, &params, 64, false, false, 0, &mut mapped),
            SclimStatus::Ok
        );
        let mut q = SclimQualityReport {
            psnr_db: 0.0,
            mse: 0.0,
            rmse: 0.0,
            mae: 0.0,
            max_ae: 0.0,
            pearson_corr: 0.0,
        };
        assert_eq!(sclim_quality_metrics(mapped, reference, &mut q), SclimStatus::Ok);
        assert!(q.psnr_db > 20.0, "PSNR {}", q.psnr_db);
        assert!(q.pearson_corr > 0.98);

        let missing = CString::new("/nonexistent/image.pgm").unwrap();
        let mut none: *mut SclimImage = std::ptr::null_mut();
        assert_eq!(
            sclim_image_read_pgm(missing.as_ptr(), &mut none),
            SclimStatus::Io
        );

        sclim_image_free(mapped);
        sclim_image_free(reference);
        sclim_image_free(img);
    }
}
