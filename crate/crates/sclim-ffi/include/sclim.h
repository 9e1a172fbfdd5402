#ifndef SCLIM_H
#define SCLIM_H

/* Generated by cbindgen from sclim-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every API call.
 */
typedef enum SclimStatus {
  SCLIM_STATUS_OK = 0,
  /**
   * An argument violated a precondition.
   */
  SCLIM_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Configuration cannot support the request (stream too short, ...).
   */
  SCLIM_STATUS_INVALID_CONFIG = 2,
  /**
   * Pattern variants exhausted or reused within one evaluation.
   */
  SCLIM_STATUS_EXHAUSTED = 3,
  /**
   * Malformed file or stream text.
   */
  SCLIM_STATUS_BAD_FORMAT = 4,
  /**
   * I/O failure.
   */
  SCLIM_STATUS_IO = 5,
  /**
   * A required pointer was null.
   */
  SCLIM_STATUS_NULL_POINTER = 6,
} SclimStatus;

/**
 * Transcendental function selector.
 */
typedef enum SclimFunction {
  SCLIM_FUNCTION_SIN = 0,
  SCLIM_FUNCTION_COS = 1,
  SCLIM_FUNCTION_TANH = 2,
  SCLIM_FUNCTION_ARCTAN = 3,
  SCLIM_FUNCTION_SIGMOID = 4,
  SCLIM_FUNCTION_SINC = 5,
  SCLIM_FUNCTION_EXP_NEG = 6,
  SCLIM_FUNCTION_LN1P = 7,
} SclimFunction;

/**
 * Operation selector for the fault-injection study.
 */
typedef enum SclimOp {
  SCLIM_OP_MUL = 0,
  SCLIM_OP_SCALED_ADD = 1,
  SCLIM_OP_ABS_SUB = 2,
  SCLIM_OP_MIN = 3,
  SCLIM_OP_MAX = 4,
  SCLIM_OP_SIN = 5,
  SCLIM_OP_COS = 6,
  SCLIM_OP_TANH = 7,
  SCLIM_OP_ARCTAN = 8,
  SCLIM_OP_SIGMOID = 9,
  SCLIM_OP_SINC = 10,
  SCLIM_OP_EXP_NEG = 11,
  SCLIM_OP_LN1P = 12,
} SclimOp;

/**
 * Cost-table column selector.
 */
typedef enum SclimCostKind {
  SCLIM_COST_KIND_MUL_MIN = 0,
  SCLIM_COST_KIND_MAX = 1,
  SCLIM_COST_KIND_SCALED_ADD = 2,
  SCLIM_COST_KIND_ABS_SUB = 3,
  SCLIM_COST_KIND_SIN = 4,
  SCLIM_COST_KIND_COS = 5,
  SCLIM_COST_KIND_TANH = 6,
  SCLIM_COST_KIND_ARCTAN = 7,
  SCLIM_COST_KIND_SINC = 8,
  SCLIM_COST_KIND_SIGMOID = 9,
  SCLIM_COST_KIND_EXP_NEG = 10,
  SCLIM_COST_KIND_LN1P = 11,
} SclimCostKind;

/**
 * Execution mode selector.
 */
typedef enum SclimMode {
  SCLIM_MODE_PARALLEL = 0,
  SCLIM_MODE_SERIAL = 1,
} SclimMode;

/**
 * Opaque pattern-allocator handle.
 */
typedef struct SclimAllocator SclimAllocator;

/**
 * Opaque bit-stream handle.
 */
typedef struct SclimBundle SclimBundle;

/**
 * Opaque grayscale-image handle.
 */
typedef struct SclimImage SclimImage;

/**
 * One measured cell of the fault-injection study.
 */
typedef struct SclimMaeRow {
  uint32_t stream_length;
  double noise_pct;
  double sc_mae_pct;
  double binary_mae_pct;
  uint64_t trials;
  double sc_std_pct;
  double binary_std_pct;
} SclimMaeRow;

/**
 * Array deployment parameters for the pipeline model.
 */
typedef struct SclimArrayConfig {
  uint64_t columns_total;
  uint32_t stream_length;
  double clock_hz;
  double batch_overhead_cycles;
  uint64_t image_pixels;
  double activity_factor;
} SclimArrayConfig;

/**
 * Throughput and energy summary of one modeled operation.
 */
typedef struct SclimPipelineReport {
  uint64_t pixels_per_batch;
  double fps_parallel;
  double fps_serial;
  double throughput_ratio;
  double energy_per_frame_parallel_j;
  double energy_per_frame_serial_j;
  double edp_ratio;
} SclimPipelineReport;

/**
 * Tone-mapping parameters.
 */
typedef struct SclimToneParams {
  double alpha;
  double beta;
  double k;
  double c;
} SclimToneParams;

/**
 * Image fidelity metrics.
 */
typedef struct SclimQualityReport {
  /**
   * Infinite for identical images.
   */
  double psnr_db;
  double mse;
  double rmse;
  double mae;
  double max_ae;
  double pearson_corr;
} SclimQualityReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Release a bundle handle. Null is accepted and ignored.
 */
void sclim_bundle_free(struct SclimBundle *bundle);

/**
 * Stream length N of a bundle.
 */
enum SclimStatus sclim_bundle_len(const struct SclimBundle *bundle, uint32_t *out_len);

/**
 * Number of set bits.
 */
enum SclimStatus sclim_bundle_popcount(const struct SclimBundle *bundle, uint32_t *out_count);

/**
 * Decoded unipolar value `ones / N`.
 */
enum SclimStatus sclim_bundle_decode(const struct SclimBundle *bundle, double *out_value);

/**
 * Render the stream as ASCII '0'/'1' into a caller buffer of at least
 * N + 1 bytes (NUL terminated).
 */
enum SclimStatus sclim_bundle_to_string(const struct SclimBundle *bundle,
                                        char *buffer,
                                        uintptr_t buffer_len);

/**
 * Deterministic replication-pattern encoding of an m-bit operand.
 */
enum SclimStatus sclim_encode_deterministic(uint32_t value_bits,
                                            uint32_t bit_width,
                                            uint32_t rotation,
                                            uint32_t xor_mask,
                                            struct SclimBundle **out_bundle);

/**
 * Thermometer (unary) encoding.
 */
enum SclimStatus sclim_encode_thermometer(uint32_t value_bits,
                                          uint32_t stream_length,
                                          struct SclimBundle **out_bundle);

/**
 * Seeded comparator encoding.
 */
enum SclimStatus sclim_encode_random(uint32_t value_bits,
                                     uint32_t stream_length,
                                     uint64_t seed,
                                     struct SclimBundle **out_bundle);

/**
 * Position-wise complement.
 */
enum SclimStatus sclim_gate_not(const struct SclimBundle *a, struct SclimBundle **out);

/**
 * Position-wise multiplexer: select bit 1 picks `a`, 0 picks `b`.
 */
enum SclimStatus sclim_gate_mux(const struct SclimBundle *a,
                                const struct SclimBundle *b,
                                const struct SclimBundle *sel,
                                struct SclimBundle **out);

/**
 * Stochastic cross-correlation of two equal-length streams.
 */
enum SclimStatus sclim_scc(const struct SclimBundle *a,
                           const struct SclimBundle *b,
                           double *out_scc);

/**
 * Fresh pattern allocator for `2^bit_width`-bit streams.
 */
enum SclimStatus sclim_allocator_new(uint32_t bit_width, struct SclimAllocator **out_alloc);

/**
 * Release an allocator handle. Null is accepted and ignored.
 */
void sclim_allocator_free(struct SclimAllocator *alloc);

/**
 * Number of unused variants left.
 */
enum SclimStatus sclim_allocator_remaining(const struct SclimAllocator *alloc,
                                           uint32_t *out_remaining);

/**
 * Encode an operand through the allocator's next fresh pattern.
 */
enum SclimStatus sclim_allocator_encode_next(struct SclimAllocator *alloc,
                                             uint32_t value_bits,
                                             struct SclimBundle **out_bundle);

/**
 * Evaluate a transcendental chain on an m-bit operand with deterministic
 * streams (fresh internal allocator; one evaluation per call).
 */
enum SclimStatus sclim_eval_chain(enum SclimFunction function,
                                  uint32_t x_val,
                                  uint32_t bit_width,
                                  struct SclimBundle **out);

/**
 * Exact real evaluation of the truncated series.
 */
enum SclimStatus sclim_reference_poly(enum SclimFunction function, double x, double *out_value);

/**
 * Ground-truth function value on [0, 1].
 */
enum SclimStatus sclim_true_function(enum SclimFunction function, double x, double *out_value);

/**
 * Convert a bundle back to its binary count via the adder tree.
 */
enum SclimStatus sclim_stream_to_binary(const struct SclimBundle *bundle,
                                        uint32_t *out_count,
                                        uint32_t *out_steps,
                                        double *out_cycles);

/**
 * Run one Monte-Carlo cell of the accuracy study.
 */
enum SclimStatus sclim_mae_experiment(enum SclimOp op,
                                      uint32_t stream_length,
                                      double noise_rate,
                                      uint64_t trials,
                                      uint64_t master_seed,
                                      struct SclimMaeRow *out_row);

/**
 * Power-delay product in mW x cycles.
 */
enum SclimStatus sclim_pdp(enum SclimCostKind kind, enum SclimMode mode, double *out_value);

/**
 * Serial-to-parallel cycle ratio.
 */
enum SclimStatus sclim_speedup(enum SclimCostKind kind, double *out_value);

/**
 * Model one frame of the image pipeline on the array.
 */
enum SclimStatus sclim_pipeline_report(const struct SclimArrayConfig *config,
                                       enum SclimCostKind kind,
                                       struct SclimPipelineReport *out_report);

/**
 * Release an image handle. Null is accepted and ignored.
 */
void sclim_image_free(struct SclimImage *image);

/**
 * Read a PGM file (P2 or P5, maxval 255).
 */
enum SclimStatus sclim_image_read_pgm(const char *path, struct SclimImage **out_image);

/**
 * Write a binary P5 file.
 */
enum SclimStatus sclim_image_write_pgm(const struct SclimImage *image, const char *path);

/**
 * Image dimensions.
 */
enum SclimStatus sclim_image_size(const struct SclimImage *image,
                                  uint32_t *out_width,
                                  uint32_t *out_height);

/**
 * Tone-map through the stochastic pipeline. `random_seed` is ignored when
 * `use_random_streams` is false.
 */
enum SclimStatus sclim_tonemap(const struct SclimImage *image,
                               const struct SclimToneParams *params,
                               uint32_t stream_length,
                               bool use_tanh,
                               bool use_random_streams,
                               uint64_t random_seed,
                               struct SclimImage **out_image);

/**
 * Apply the full-precision reference S-curve.
 */
enum SclimStatus sclim_tonemap_reference(const struct SclimImage *image,
                                         const struct SclimToneParams *params,
                                         bool use_tanh,
                                         struct SclimImage **out_image);

/**
 * Pixel-wise fidelity metrics of `image` against `reference`.
 */
enum SclimStatus sclim_quality_metrics(const struct SclimImage *image,
                                       const struct SclimImage *reference,
                                       struct SclimQualityReport *out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCLIM_H */
