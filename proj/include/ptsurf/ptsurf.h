/*
 * Copyright 2026 The ptsurf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the ptsurf planar-code decoders and experiment harness.
 *
 * Every function returns a ptsurf_status. On failure, ptsurf_last_error()
 * returns a message describing the most recent error on the calling thread;
 * the pointer stays valid until the next failing call on that thread.
 */

#ifndef PTSURF_PTSURF_H_
#define PTSURF_PTSURF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PTSURF_BUILDING_LIBRARY)
#define PTSURF_API __attribute__((visibility("default")))
#else
#define PTSURF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptsurf_status {
  PTSURF_OK = 0,
  PTSURF_INVALID_ARGUMENT = 1,
  PTSURF_IO_ERROR = 2,
  PTSURF_INTERNAL_ERROR = 3,
} ptsurf_status;

typedef enum ptsurf_decoder_kind {
  PTSURF_DECODER_MCMC1 = 0,
  PTSURF_DECODER_MCMC2 = 1,
  PTSURF_DECODER_MWPM = 2,
} ptsurf_decoder_kind;

/* Logical classes, in tie-break order. */
typedef enum ptsurf_class {
  PTSURF_CLASS_I = 0,
  PTSURF_CLASS_X = 1,
  PTSURF_CLASS_Y = 2,
  PTSURF_CLASS_Z = 3,
} ptsurf_class;

PTSURF_API const char* ptsurf_version(void);
PTSURF_API const char* ptsurf_last_error(void);

/* Parses "mcmc1", "mcmc2" or "mwpm". */
PTSURF_API ptsurf_status ptsurf_parse_decoder(const char* name, ptsurf_decoder_kind* out);
PTSURF_API const char* ptsurf_decoder_name(ptsurf_decoder_kind kind);

/* ---- Code layout ---- */

typedef struct ptsurf_layout ptsurf_layout;

PTSURF_API ptsurf_status ptsurf_layout_create(int L, ptsurf_layout** out);
PTSURF_API void ptsurf_layout_destroy(ptsurf_layout* layout);
PTSURF_API int ptsurf_layout_size(const ptsurf_layout* layout);
PTSURF_API size_t ptsurf_layout_num_qubits(const ptsurf_layout* layout);
PTSURF_API size_t ptsurf_layout_num_charges(const ptsurf_layout* layout);
PTSURF_API size_t ptsurf_layout_num_fluxes(const ptsurf_layout* layout);
PTSURF_API uint64_t ptsurf_layout_fingerprint(const ptsurf_layout* layout);

/* ---- Decoding ---- */

typedef struct ptsurf_decoder_params {
  int variant;        /* 1 or 2; ignored by the matching decoder */
  int num_chains;     /* 0 selects the nearest odd number to L */
  int its_per_step;
  double epsilon;
  int relative_epsilon;
  int tops;
  int seq;            /* 0 selects the variant default */
  int64_t max_steps;
  uint64_t seed;
} ptsurf_decoder_params;

/* Fills `params` with the defaults for `variant`. */
PTSURF_API ptsurf_status ptsurf_decoder_params_init(ptsurf_decoder_params* params, int variant);

/*
 * Samples depolarizing noise of strength p on stream `stream` and writes
 * its syndrome: `charges` holds num_charges bytes, `fluxes` num_fluxes
 * bytes, each 0 or 1.
 */
PTSURF_API ptsurf_status ptsurf_sample_syndrome(const ptsurf_layout* layout, double p,
                                                uint64_t seed, uint64_t stream, uint8_t* charges,
                                                uint8_t* fluxes);

typedef struct ptsurf_decode_result {
  ptsurf_class chosen;
  int64_t steps;
  int64_t final_tops0;
  int64_t class_tallies[4];
  int converged;
  int tie_broken;
  double swap_acceptance;
} ptsurf_decode_result;

/*
 * Decodes one syndrome. The chosen class is relative to the canonical
 * correction of the syndrome, so outcomes of different decoders compare
 * directly. The decoder random stream is derived from params->seed.
 */
PTSURF_API ptsurf_status ptsurf_decode(const ptsurf_layout* layout, ptsurf_decoder_kind kind,
                                       const ptsurf_decoder_params* params, double p,
                                       const uint8_t* charges, const uint8_t* fluxes,
                                       ptsurf_decode_result* out);

/* ---- Experiments ---- */

typedef struct ptsurf_stopping {
  int fixed_failures; /* 0: run `count` samples; 1: stop at `count` bit failures */
  int64_t count;
  int64_t max_samples;
} ptsurf_stopping;

typedef struct ptsurf_record {
  int L;
  double p;
  ptsurf_decoder_kind decoder;
  int variant;
  int nc;
  int its_per_step;
  double epsilon;
  int tops;
  int seq;
  uint64_t seed;
  int64_t samples;
  int64_t bit_failures;
  int64_t phase_failures;
  double P_bit;
  double P_phase;
  double stderr_bit;
  double stderr_phase;
  double mean_steps_T;
  int censored;
  int64_t nonconverged;
  uint64_t params_hash;
  double wall_time;
} ptsurf_record;

PTSURF_API ptsurf_status ptsurf_estimate(int L, double p, ptsurf_decoder_kind kind,
                                         const ptsurf_decoder_params* params,
                                         const ptsurf_stopping* stopping, uint64_t seed,
                                         int threads, ptsurf_record* out);

/* Returns the CSV header; the string has static storage. */
PTSURF_API const char* ptsurf_csv_header(void);

/*
 * Formats one record as a CSV row without a trailing newline. Writes at most
 * `size` bytes including the terminator and stores the full length in
 * `*length` when non-null.
 */
PTSURF_API ptsurf_status ptsurf_record_to_csv(const ptsurf_record* record, char* buffer,
                                              size_t size, size_t* length);

typedef struct ptsurf_scan_summary {
  size_t rows_written;
  size_t rows_skipped;
  int any_censored;
} ptsurf_scan_summary;

/*
 * Runs the (L, p) grid and appends rows to `csv_path`, skipping grid points
 * already present. When `sidecar_path` is non-null a JSON sidecar for the
 * new rows is written there.
 */
PTSURF_API ptsurf_status ptsurf_scan(const int* sizes, size_t num_sizes, const double* rates,
                                     size_t num_rates, ptsurf_decoder_kind kind,
                                     const ptsurf_decoder_params* params,
                                     const ptsurf_stopping* stopping, uint64_t seed, int threads,
                                     const char* csv_path, const char* sidecar_path,
                                     ptsurf_scan_summary* out);

/*
 * Smallest L in [2, L_max] with both failure rates below p. `*found` is 0
 * when no size qualifies. When `trace` is non-null it receives up to
 * `trace_capacity` records, and `*trace_length` the number produced.
 */
PTSURF_API ptsurf_status ptsurf_min_effective_size(double p, ptsurf_decoder_kind kind,
                                                   const ptsurf_decoder_params* params, int L_max,
                                                   const ptsurf_stopping* stopping, uint64_t seed,
                                                   int threads, int* found, int* L_out,
                                                   ptsurf_record* trace, size_t trace_capacity,
                                                   size_t* trace_length);

typedef struct ptsurf_fit_line {
  int L;
  double slope_bit;
  double intercept_bit;
  double slope_phase;
  double intercept_phase;
  size_t points_bit;     /* grid points used in the bit fit */
  size_t points_phase;
} ptsurf_fit_line;

/* Log-log fit of failure rate against p, one line per size. */
PTSURF_API ptsurf_status ptsurf_fit(const int* sizes, size_t num_sizes, const double* rates,
                                    size_t num_rates, ptsurf_decoder_kind kind,
                                    const ptsurf_decoder_params* params,
                                    const ptsurf_stopping* stopping, uint64_t seed, int threads,
                                    ptsurf_fit_line* lines);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PTSURF_PTSURF_H_ */
