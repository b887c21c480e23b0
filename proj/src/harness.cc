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

#include "ptsurf/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "ptsurf/mwpm.h"
#include "ptsurf/noise.h"

namespace ptsurf {

std::string_view decoder_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kMcmc1: return "mcmc1";
    case DecoderKind::kMcmc2: return "mcmc2";
    case DecoderKind::kMwpm: return "mwpm";
  }
  return "?";
}

DecoderKind parse_decoder(std::string_view name) {
  if (name == "mcmc1") return DecoderKind::kMcmc1;
  if (name == "mcmc2") return DecoderKind::kMcmc2;
  if (name == "mwpm") return DecoderKind::kMwpm;
  throw std::invalid_argument("unknown decoder '" + std::string(name) +
                              "' (expected mcmc1, mcmc2 or mwpm)");
}

void StoppingRule::validate() const {
  if (count < 1) throw std::invalid_argument("stopping rule count must be at least 1");
  if (kind == Kind::kFixedFailures && max_samples < 1) {
    throw std::invalid_argument("stopping rule max_samples must be at least 1");
  }
  if (kind == Kind::kFixedFailures && max_samples < count) {
    throw std::invalid_argument("stopping rule max_samples is below the failure count");
  }
}

namespace {

DecoderParams params_for(DecoderKind kind, DecoderParams params) {
  if (kind == DecoderKind::kMcmc1) params.variant = 1;
  if (kind == DecoderKind::kMcmc2) params.variant = 2;
  return params;
}

uint64_t params_hash(DecoderKind kind, const DecoderParams& params, int L) {
  std::ostringstream key;
  key << decoder_name(kind);
  if (kind != DecoderKind::kMwpm) {
    key << '|' << params.variant << '|' << params.resolved_num_chains(L) << '|'
        << params.its_per_step << '|' << params.epsilon << '|' << params.relative_epsilon << '|'
        << params.tops << '|' << params.resolved_seq() << '|' << params.max_steps;
  }
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : key.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

void fill_param_columns(ExperimentRecord& record, DecoderKind kind, const DecoderParams& params) {
  record.decoder = kind;
  if (kind == DecoderKind::kMwpm) return;
  const DecoderParams resolved = params_for(kind, params);
  record.variant = resolved.variant;
  record.nc = resolved.resolved_num_chains(record.L);
  record.its_per_step = resolved.its_per_step;
  record.epsilon = resolved.epsilon;
  record.tops = resolved.tops;
  record.seq = resolved.resolved_seq();
  record.params_hash = params_hash(kind, resolved, record.L);
}

// Runs trials [start, start + count) across worker threads; slot i holds
// trial start + i whatever thread ran it.
std::vector<TrialResult> run_batch(int64_t start, int64_t count,
                                   const std::function<TrialResult(uint64_t)>& trial,
                                   int threads) {
  std::vector<TrialResult> out(static_cast<size_t>(count));
  std::atomic<int64_t> next{0};
  auto worker = [&] {
    for (int64_t i = next++; i < count; i = next++) {
      out[static_cast<size_t>(i)] = trial(static_cast<uint64_t>(start + i));
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (n == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view field, const char* name) {
  T value{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("csv: bad ") + name + " field '" + std::string(field) +
                                "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view row, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = row.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(row.substr(start));
      return out;
    }
    out.push_back(row.substr(start, pos - start));
    start = pos + 1;
  }
}

// The first ten columns identify a grid point.
std::string row_key(const std::string& row) {
  size_t pos = 0;
  for (int i = 0; i < 10; ++i) pos = row.find(',', pos) + 1;
  return row.substr(0, pos);
}

}  // namespace

SyndromeDecoder make_decoder(const CodeLayout& layout, DecoderKind kind,
                             const DecoderParams& params) {
  if (kind == DecoderKind::kMwpm) {
    return [&layout](const Syndrome& syndrome, double, Rng&) {
      DecodeOutcome out;
      out.chosen = decode_mwpm(syndrome, layout).chosen;
      out.converged = true;
      return out;
    };
  }
  auto decoder = std::make_shared<const PtDecoder>(layout, params_for(kind, params));
  return [decoder](const Syndrome& syndrome, double p, Rng& rng) {
    return decoder->decode(syndrome, p, rng);
  };
}

TrialResult run_trial(const CodeLayout& layout, double p, const SyndromeDecoder& decoder,
                      uint64_t seed, uint64_t stream) {
  Rng noise(seed, stream, StreamDomain::kNoise);
  const PauliConfig truth = sample_depolarizing(p, layout.num_qubits(), noise);
  const Syndrome syndrome = syndrome_of(truth, layout);
  Rng decoder_rng(seed, stream, StreamDomain::kDecoder);
  const DecodeOutcome outcome = decoder(syndrome, p, decoder_rng);

  PauliConfig residual = canonical_config(syndrome, layout);
  residual *= logical_operator(layout, outcome.chosen);
  residual *= truth;

  TrialResult result;
  result.chosen = outcome.chosen;
  result.residual = logical_class(residual, layout);
  result.bit_fail = has_x_component(result.residual);
  result.phase_fail = has_z_component(result.residual);
  result.steps = outcome.steps;
  result.converged = outcome.converged;
  return result;
}

TrialResult run_trial(const CodeLayout& layout, double p, DecoderKind kind,
                      const DecoderParams& params, uint64_t seed, uint64_t stream) {
  return run_trial(layout, p, make_decoder(layout, kind, params), seed, stream);
}

std::pair<double, double> wilson_interval(int64_t k, int64_t n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ExperimentRecord estimate_P(const CodeLayout& layout, double p, const SyndromeDecoder& decoder,
                            const StoppingRule& stopping, uint64_t seed,
                            const RunOptions& options) {
  stopping.validate();
  const auto started = std::chrono::steady_clock::now();
  ExperimentRecord record;
  record.L = layout.size();
  record.p = p;
  record.seed = seed;

  const bool by_failures = stopping.kind == StoppingRule::Kind::kFixedFailures;
  const int64_t cap = by_failures ? stopping.max_samples : stopping.count;
  auto trial = [&](uint64_t stream) { return run_trial(layout, p, decoder, seed, stream); };

  int64_t steps_total = 0;
  int64_t batch = by_failures ? 256 : std::min<int64_t>(cap, 4096);
  bool done = false;
  while (!done && record.samples < cap) {
    const int64_t count = std::min(batch, cap - record.samples);
    const std::vector<TrialResult> results = run_batch(record.samples, count, trial, options.threads);
    // Fold in stream order so the stopping point is independent of scheduling.
    for (const TrialResult& r : results) {
      ++record.samples;
      record.bit_failures += r.bit_fail;
      record.phase_failures += r.phase_fail;
      record.nonconverged += !r.converged;
      steps_total += r.steps;
      if (by_failures && record.bit_failures >= stopping.count) {
        done = true;
        break;
      }
    }
    batch = std::min<int64_t>(batch * 2, 65536);
  }

  const double n = static_cast<double>(record.samples);
  record.P_bit = static_cast<double>(record.bit_failures) / n;
  record.P_phase = static_cast<double>(record.phase_failures) / n;
  record.stderr_bit = std::sqrt(record.P_bit * (1.0 - record.P_bit) / n);
  record.stderr_phase = std::sqrt(record.P_phase * (1.0 - record.P_phase) / n);
  record.mean_steps_T = static_cast<double>(steps_total) / n;
  record.censored = (by_failures && !done) || record.nonconverged > 0;
  record.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

ExperimentRecord estimate_P(int L, double p, DecoderKind kind, const DecoderParams& params,
                            const StoppingRule& stopping, uint64_t seed,
                            const RunOptions& options) {
  const CodeLayout layout(L);
  ExperimentRecord record =
      estimate_P(layout, p, make_decoder(layout, kind, params), stopping, seed, options);
  fill_param_columns(record, kind, params);
  return record;
}

std::string_view csv_header() {
  return "L,p,decoder,variant,nc,its_per_step,epsilon,tops,seq,seed,samples,bit_failures,"
         "phase_failures,P_bit,P_phase,stderr_bit,stderr_phase,mean_steps_T,censored";
}

std::string to_csv_row(const ExperimentRecord& r) {
  std::ostringstream out;
  out << r.L << ',' << format_double(r.p) << ',' << decoder_name(r.decoder) << ',' << r.variant
      << ',' << r.nc << ',' << r.its_per_step << ',' << format_double(r.epsilon) << ',' << r.tops
      << ',' << r.seq << ',' << r.seed << ',' << r.samples << ',' << r.bit_failures << ','
      << r.phase_failures << ',' << format_double(r.P_bit) << ',' << format_double(r.P_phase)
      << ',' << format_double(r.stderr_bit) << ',' << format_double(r.stderr_phase) << ','
      << format_double(r.mean_steps_T) << ',' << (r.censored ? 1 : 0);
  return out.str();
}

ExperimentRecord parse_csv_row(std::string_view row) {
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  const auto f = split(row, ',');
  if (f.size() != 19) {
    throw std::invalid_argument("csv: expected 19 fields, got " + std::to_string(f.size()));
  }
  ExperimentRecord r;
  r.L = parse_number<int>(f[0], "L");
  r.p = parse_number<double>(f[1], "p");
  r.decoder = parse_decoder(f[2]);
  r.variant = parse_number<int>(f[3], "variant");
  r.nc = parse_number<int>(f[4], "nc");
  r.its_per_step = parse_number<int>(f[5], "its_per_step");
  r.epsilon = parse_number<double>(f[6], "epsilon");
  r.tops = parse_number<int>(f[7], "tops");
  r.seq = parse_number<int>(f[8], "seq");
  r.seed = parse_number<uint64_t>(f[9], "seed");
  r.samples = parse_number<int64_t>(f[10], "samples");
  r.bit_failures = parse_number<int64_t>(f[11], "bit_failures");
  r.phase_failures = parse_number<int64_t>(f[12], "phase_failures");
  r.P_bit = parse_number<double>(f[13], "P_bit");
  r.P_phase = parse_number<double>(f[14], "P_phase");
  r.stderr_bit = parse_number<double>(f[15], "stderr_bit");
  r.stderr_phase = parse_number<double>(f[16], "stderr_phase");
  r.mean_steps_T = parse_number<double>(f[17], "mean_steps_T");
  r.censored = parse_number<int>(f[18], "censored") != 0;
  return r;
}

std::vector<ExperimentRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::vector<ExperimentRecord> records;
  if (!std::getline(in, line)) return records;
  if (line != csv_header()) throw std::runtime_error(path + ": unexpected CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(parse_csv_row(line));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return records;
}

ScanSummary threshold_scan(const std::vector<int>& sizes, const std::vector<double>& rates,
                           DecoderKind kind, const DecoderParams& params,
                           const StoppingRule& stopping, uint64_t seed, const std::string& path,
                           const RunOptions& options) {
  if (sizes.empty() || rates.empty()) {
    throw std::invalid_argument("scan needs at least one size and one rate");
  }
  std::set<std::string> done;
  bool need_header = true;
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) > 0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);
    if (line != csv_header()) throw std::runtime_error(path + ": unexpected CSV header");
    while (std::getline(in, line)) {
      if (!line.empty()) done.insert(row_key(line));
    }
    need_header = false;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (need_header) out << csv_header() << '\n';

  ScanSummary summary;
  for (int L : sizes) {
    for (double p : rates) {
      ExperimentRecord probe;
      probe.L = L;
      probe.p = p;
      probe.seed = seed;
      fill_param_columns(probe, kind, params);
      if (done.count(row_key(to_csv_row(probe))) > 0) {
        ++summary.rows_skipped;
        continue;
      }
      ExperimentRecord record = estimate_P(L, p, kind, params, stopping, seed, options);
      out << to_csv_row(record) << '\n';
      out.flush();
      if (!out) throw std::runtime_error("write failed on " + path);
      summary.any_censored |= record.censored;
      summary.records.push_back(record);
      ++summary.rows_written;
    }
  }
  return summary;
}

std::optional<int> min_effective_size(double p, DecoderKind kind, const DecoderParams& params,
                                      int L_max, const StoppingRule& stopping, uint64_t seed,
                                      const RunOptions& options,
                                      std::vector<ExperimentRecord>* trace) {
  if (!(p > 0.0 && p < kTopRate)) {
    throw std::invalid_argument("min_effective_size needs 0 < p < 0.75");
  }
  for (int L = 2; L <= L_max; ++L) {
    ExperimentRecord record = estimate_P(L, p, kind, params, stopping, seed, options);
    if (trace != nullptr) trace->push_back(record);
    if (record.P_bit < p && record.P_phase < p) return L;
  }
  return std::nullopt;
}

namespace {

struct Line {
  double slope = std::nan("");
  double intercept = std::nan("");
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Line line;
  const size_t n = x.size();
  if (n < 2) return line;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  return line;
}

}  // namespace

std::vector<ScalingFit> distance_scaling_fit(const std::vector<int>& sizes,
                                             const std::vector<double>& rates, DecoderKind kind,
                                             const DecoderParams& params,
                                             const StoppingRule& stopping, uint64_t seed,
                                             const RunOptions& options) {
  std::vector<ScalingFit> fits;
  for (int L : sizes) {
    ScalingFit fit;
    fit.L = L;
    std::vector<double> xb, yb, xp, yp;
    for (double p : rates) {
      ExperimentRecord record = estimate_P(L, p, kind, params, stopping, seed, options);
      const bool capped = stopping.kind == StoppingRule::Kind::kFixedFailures &&
                          record.bit_failures < stopping.count;
      if (record.bit_failures == 0 || capped) {
        fit.excluded_bit.push_back(p);
      } else {
        xb.push_back(std::log(p));
        yb.push_back(std::log(record.P_bit));
      }
      if (record.phase_failures == 0) {
        fit.excluded_phase.push_back(p);
      } else {
        xp.push_back(std::log(p));
        yp.push_back(std::log(record.P_phase));
      }
      fit.points.push_back(record);
    }
    const Line bit = least_squares(xb, yb);
    const Line phase = least_squares(xp, yp);
    fit.slope_bit = bit.slope;
    fit.intercept_bit = bit.intercept;
    fit.slope_phase = phase.slope;
    fit.intercept_phase = phase.intercept;
    for (size_t i = 0; i < xb.size(); ++i) {
      fit.residuals_bit.push_back(yb[i] - (bit.intercept + bit.slope * xb[i]));
    }
    for (size_t i = 0; i < xp.size(); ++i) {
      fit.residuals_phase.push_back(yp[i] - (phase.intercept + phase.slope * xp[i]));
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::string sidecar_json(const std::vector<ExperimentRecord>& records, DecoderKind kind,
                         const DecoderParams& params, const StoppingRule& stopping) {
  using nlohmann::json;
  const DecoderParams resolved = params_for(kind, params);
  json doc;
  doc["decoder"] = std::string(decoder_name(kind));
  if (kind != DecoderKind::kMwpm) {
    doc["params"] = {{"variant", resolved.variant},
                     {"nc", resolved.num_chains},
                     {"its_per_step", resolved.its_per_step},
                     {"epsilon", resolved.epsilon},
                     {"relative_epsilon", resolved.relative_epsilon},
                     {"tops", resolved.tops},
                     {"seq", resolved.resolved_seq()},
                     {"max_steps", resolved.max_steps}};
  }
  doc["stopping"] = {
      {"kind", stopping.kind == StoppingRule::Kind::kFixedSamples ? "fixed_samples"
                                                                  : "fixed_failures"},
      {"count", stopping.count},
      {"max_samples", stopping.max_samples}};
  json rows = json::array();
  for (const ExperimentRecord& r : records) {
    const auto bit_ci = wilson_interval(r.bit_failures, r.samples);
    const auto phase_ci = wilson_interval(r.phase_failures, r.samples);
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(CodeLayout(r.L).fingerprint()));
    char phash[17];
    std::snprintf(phash, sizeof(phash), "%016llx", static_cast<unsigned long long>(r.params_hash));
    rows.push_back({{"csv", to_csv_row(r)},
                    {"layout_hash", hash},
                    {"params_hash", phash},
                    {"nonconverged", r.nonconverged},
                    {"wall_time", r.wall_time},
                    {"wilson_bit", {bit_ci.first, bit_ci.second}},
                    {"wilson_phase", {phase_ci.first, phase_ci.second}}});
  }
  doc["records"] = std::move(rows);
  return doc.dump(2);
}

void write_sidecar(const std::string& path, const std::vector<ExperimentRecord>& records,
                   DecoderKind kind, const DecoderParams& params, const StoppingRule& stopping) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << sidecar_json(records, kind, params, stopping) << '\n';
  if (!out) throw std::runtime_error("write failed on " + path);
}

}  // namespace ptsurf
