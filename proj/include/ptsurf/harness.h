// Copyright 2026 The ptsurf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTSURF_HARNESS_H_
#define PTSURF_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptsurf/code_layout.h"
#include "ptsurf/pauli.h"
#include "ptsurf/pt_decoder.h"
#include "ptsurf/rng.h"

namespace ptsurf {

enum class DecoderKind : uint8_t { kMcmc1 = 0, kMcmc2 = 1, kMwpm = 2 };

std::string_view decoder_name(DecoderKind kind);
/// Accepts "mcmc1", "mcmc2" and "mwpm"; throws std::invalid_argument otherwise.
DecoderKind parse_decoder(std::string_view name);

struct StoppingRule {
  enum class Kind : uint8_t { kFixedSamples, kFixedFailures };
  Kind kind = Kind::kFixedSamples;
  /// Sample count, or the number of bit-flip failures to wait for.
  int64_t count = 1000;
  /// Cap for fixed-failure runs; hitting it marks the record censored.
  int64_t max_samples = 10'000'000;

  static StoppingRule fixed_samples(int64_t n) { return {Kind::kFixedSamples, n, n}; }
  static StoppingRule fixed_failures(int64_t k, int64_t max_samples = 10'000'000) {
    return {Kind::kFixedFailures, k, max_samples};
  }
  void validate() const;
};

struct RunOptions {
  int threads = 1;
};

struct TrialResult {
  bool bit_fail = false;
  bool phase_fail = false;
  int64_t steps = 0;
  bool converged = true;
  LogicalClass chosen = LogicalClass::kI;
  /// Class of the residual error after correction.
  LogicalClass residual = LogicalClass::kI;
};

/// Anything that maps a syndrome to a class relative to canonical_config(A).
using SyndromeDecoder = std::function<DecodeOutcome(const Syndrome&, double p, Rng&)>;

/// Binds a decoder kind and parameters to one layout.
SyndromeDecoder make_decoder(const CodeLayout& layout, DecoderKind kind,
                             const DecoderParams& params);

/// One Monte Carlo trial on stream `stream`: sample, measure, decode, correct
/// with canonical_config(A) times the chosen logical, classify the residual.
TrialResult run_trial(const CodeLayout& layout, double p, const SyndromeDecoder& decoder,
                      uint64_t seed, uint64_t stream);
TrialResult run_trial(const CodeLayout& layout, double p, DecoderKind kind,
                      const DecoderParams& params, uint64_t seed, uint64_t stream);

struct ExperimentRecord {
  int L = 0;
  double p = 0.0;
  DecoderKind decoder = DecoderKind::kMcmc1;
  int variant = 0;
  int nc = 0;
  int its_per_step = 0;
  double epsilon = 0.0;
  int tops = 0;
  int seq = 0;
  uint64_t seed = 0;
  int64_t samples = 0;
  int64_t bit_failures = 0;
  int64_t phase_failures = 0;
  double P_bit = 0.0;
  double P_phase = 0.0;
  double stderr_bit = 0.0;
  double stderr_phase = 0.0;
  double mean_steps_T = 0.0;
  /// Stopping cap reached, or at least one trial did not converge.
  bool censored = false;

  // Not persisted in CSV rows.
  int64_t nonconverged = 0;
  uint64_t params_hash = 0;
  double wall_time = 0.0;
};

/// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(int64_t k, int64_t n, double z = 1.96);

/// Runs trials 0, 1, 2, ... on independent streams until the stopping rule
/// is met. Results do not depend on the thread count or execution order.
ExperimentRecord estimate_P(int L, double p, DecoderKind kind, const DecoderParams& params,
                            const StoppingRule& stopping, uint64_t seed,
                            const RunOptions& options = {});
/// Same, with an arbitrary decoder; the record's parameter columns stay zero.
ExperimentRecord estimate_P(const CodeLayout& layout, double p, const SyndromeDecoder& decoder,
                            const StoppingRule& stopping, uint64_t seed,
                            const RunOptions& options = {});

std::string_view csv_header();
std::string to_csv_row(const ExperimentRecord& record);
/// Throws std::invalid_argument on malformed rows.
ExperimentRecord parse_csv_row(std::string_view row);
/// Reads every data row of a CSV file written by threshold_scan.
std::vector<ExperimentRecord> read_csv(const std::string& path);

struct ScanSummary {
  std::vector<ExperimentRecord> records;
  size_t rows_written = 0;
  size_t rows_skipped = 0;
  bool any_censored = false;
};

/// Estimates every (L, p) on the grid and appends one CSV row per point.
/// Points whose key already appears in an existing file are skipped.
/// Throws std::runtime_error with the path on I/O failures.
ScanSummary threshold_scan(const std::vector<int>& sizes, const std::vector<double>& rates,
                           DecoderKind kind, const DecoderParams& params,
                           const StoppingRule& stopping, uint64_t seed, const std::string& path,
                           const RunOptions& options = {});

/// Smallest L <= L_max whose bit and phase failure rates both fall below p.
std::optional<int> min_effective_size(double p, DecoderKind kind, const DecoderParams& params,
                                      int L_max, const StoppingRule& stopping, uint64_t seed,
                                      const RunOptions& options = {},
                                      std::vector<ExperimentRecord>* trace = nullptr);

struct ScalingFit {
  int L = 0;
  double slope_bit = 0.0;
  double intercept_bit = 0.0;
  double slope_phase = 0.0;
  double intercept_phase = 0.0;
  std::vector<double> residuals_bit;
  std::vector<double> residuals_phase;
  std::vector<ExperimentRecord> points;
  /// Grid points left out of the bit (phase) fit: no failures or censored.
  std::vector<double> excluded_bit;
  std::vector<double> excluded_phase;
};

/// Least-squares slope of log P against log p for each L.
std::vector<ScalingFit> distance_scaling_fit(const std::vector<int>& sizes,
                                             const std::vector<double>& rates, DecoderKind kind,
                                             const DecoderParams& params,
                                             const StoppingRule& stopping, uint64_t seed,
                                             const RunOptions& options = {});

/// JSON document with the full parameter set, stopping rule, code-layout
/// fingerprints and every record (including the non-CSV fields).
std::string sidecar_json(const std::vector<ExperimentRecord>& records, DecoderKind kind,
                         const DecoderParams& params, const StoppingRule& stopping);
void write_sidecar(const std::string& path, const std::vector<ExperimentRecord>& records,
                   DecoderKind kind, const DecoderParams& params, const StoppingRule& stopping);

}  // namespace ptsurf

#endif  // PTSURF_HARNESS_H_
