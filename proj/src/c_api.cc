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

#include "ptsurf/ptsurf.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "ptsurf/code_layout.h"
#include "ptsurf/harness.h"
#include "ptsurf/mwpm.h"
#include "ptsurf/noise.h"
#include "ptsurf/pauli.h"
#include "ptsurf/pt_decoder.h"

struct ptsurf_layout {
  explicit ptsurf_layout(int L) : layout(L) {}
  ptsurf::CodeLayout layout;
};

namespace {

thread_local std::string last_error;

ptsurf_status fail(ptsurf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps exceptions escaping `body` onto status codes.
template <typename F>
ptsurf_status guarded(F&& body) {
  try {
    body();
    return PTSURF_OK;
  } catch (const std::invalid_argument& e) {
    return fail(PTSURF_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(PTSURF_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(PTSURF_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PTSURF_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PTSURF_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(PTSURF_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

ptsurf::DecoderKind to_kind(ptsurf_decoder_kind kind) {
  switch (kind) {
    case PTSURF_DECODER_MCMC1: return ptsurf::DecoderKind::kMcmc1;
    case PTSURF_DECODER_MCMC2: return ptsurf::DecoderKind::kMcmc2;
    case PTSURF_DECODER_MWPM: return ptsurf::DecoderKind::kMwpm;
  }
  throw std::invalid_argument("unknown decoder kind");
}

ptsurf::DecoderParams to_params(const ptsurf_decoder_params* in, ptsurf_decoder_kind kind) {
  ptsurf::DecoderParams out =
      ptsurf::DecoderParams::defaults(kind == PTSURF_DECODER_MCMC2 ? 2 : 1);
  if (in == nullptr) return out;
  out.variant = in->variant;
  out.num_chains = in->num_chains;
  out.its_per_step = in->its_per_step;
  out.epsilon = in->epsilon;
  out.relative_epsilon = in->relative_epsilon != 0;
  out.tops = in->tops;
  out.seq = in->seq;
  out.max_steps = in->max_steps;
  out.seed = in->seed;
  if (kind == PTSURF_DECODER_MCMC1) out.variant = 1;
  if (kind == PTSURF_DECODER_MCMC2) out.variant = 2;
  if (kind != PTSURF_DECODER_MWPM) out.validate();
  return out;
}

ptsurf::StoppingRule to_stopping(const ptsurf_stopping* in) {
  require(in != nullptr, "stopping rule is null");
  ptsurf::StoppingRule rule = in->fixed_failures
                                  ? ptsurf::StoppingRule::fixed_failures(in->count, in->max_samples)
                                  : ptsurf::StoppingRule::fixed_samples(in->count);
  rule.validate();
  return rule;
}

ptsurf::RunOptions to_options(int threads) {
  require(threads >= 1, "threads must be at least 1");
  return ptsurf::RunOptions{threads};
}

ptsurf_record to_c(const ptsurf::ExperimentRecord& r) {
  ptsurf_record out{};
  out.L = r.L;
  out.p = r.p;
  out.decoder = static_cast<ptsurf_decoder_kind>(r.decoder);
  out.variant = r.variant;
  out.nc = r.nc;
  out.its_per_step = r.its_per_step;
  out.epsilon = r.epsilon;
  out.tops = r.tops;
  out.seq = r.seq;
  out.seed = r.seed;
  out.samples = r.samples;
  out.bit_failures = r.bit_failures;
  out.phase_failures = r.phase_failures;
  out.P_bit = r.P_bit;
  out.P_phase = r.P_phase;
  out.stderr_bit = r.stderr_bit;
  out.stderr_phase = r.stderr_phase;
  out.mean_steps_T = r.mean_steps_T;
  out.censored = r.censored ? 1 : 0;
  out.nonconverged = r.nonconverged;
  out.params_hash = r.params_hash;
  out.wall_time = r.wall_time;
  return out;
}

ptsurf::ExperimentRecord from_c(const ptsurf_record& r) {
  ptsurf::ExperimentRecord out;
  out.L = r.L;
  out.p = r.p;
  out.decoder = to_kind(r.decoder);
  out.variant = r.variant;
  out.nc = r.nc;
  out.its_per_step = r.its_per_step;
  out.epsilon = r.epsilon;
  out.tops = r.tops;
  out.seq = r.seq;
  out.seed = r.seed;
  out.samples = r.samples;
  out.bit_failures = r.bit_failures;
  out.phase_failures = r.phase_failures;
  out.P_bit = r.P_bit;
  out.P_phase = r.P_phase;
  out.stderr_bit = r.stderr_bit;
  out.stderr_phase = r.stderr_phase;
  out.mean_steps_T = r.mean_steps_T;
  out.censored = r.censored != 0;
  out.nonconverged = r.nonconverged;
  out.params_hash = r.params_hash;
  out.wall_time = r.wall_time;
  return out;
}

}  // namespace

extern "C" {

const char* ptsurf_version(void) { return "0.1.0"; }

const char* ptsurf_last_error(void) { return last_error.c_str(); }

ptsurf_status ptsurf_parse_decoder(const char* name, ptsurf_decoder_kind* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<ptsurf_decoder_kind>(ptsurf::parse_decoder(name));
  });
}

const char* ptsurf_decoder_name(ptsurf_decoder_kind kind) {
  switch (kind) {
    case PTSURF_DECODER_MCMC1: return "mcmc1";
    case PTSURF_DECODER_MCMC2: return "mcmc2";
    case PTSURF_DECODER_MWPM: return "mwpm";
  }
  return "unknown";
}

ptsurf_status ptsurf_layout_create(int L, ptsurf_layout** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new ptsurf_layout(L);
  });
}

void ptsurf_layout_destroy(ptsurf_layout* layout) { delete layout; }

int ptsurf_layout_size(const ptsurf_layout* layout) { return layout->layout.size(); }

size_t ptsurf_layout_num_qubits(const ptsurf_layout* layout) {
  return layout->layout.num_qubits();
}

size_t ptsurf_layout_num_charges(const ptsurf_layout* layout) {
  return layout->layout.num_s_plaquettes();
}

size_t ptsurf_layout_num_fluxes(const ptsurf_layout* layout) {
  return layout->layout.num_p_plaquettes();
}

uint64_t ptsurf_layout_fingerprint(const ptsurf_layout* layout) {
  return layout->layout.fingerprint();
}

ptsurf_status ptsurf_decoder_params_init(ptsurf_decoder_params* params, int variant) {
  return guarded([&] {
    require(params != nullptr, "null params");
    require(variant == 1 || variant == 2, "variant must be 1 or 2");
    const ptsurf::DecoderParams d = ptsurf::DecoderParams::defaults(variant);
    params->variant = d.variant;
    params->num_chains = d.num_chains;
    params->its_per_step = d.its_per_step;
    params->epsilon = d.epsilon;
    params->relative_epsilon = d.relative_epsilon ? 1 : 0;
    params->tops = d.tops;
    params->seq = d.seq;
    params->max_steps = d.max_steps;
    params->seed = d.seed;
  });
}

ptsurf_status ptsurf_sample_syndrome(const ptsurf_layout* layout, double p, uint64_t seed,
                                     uint64_t stream, uint8_t* charges, uint8_t* fluxes) {
  return guarded([&] {
    require(layout != nullptr && charges != nullptr && fluxes != nullptr, "null argument");
    const ptsurf::CodeLayout& code = layout->layout;
    const ptsurf::PauliConfig error =
        ptsurf::sample_depolarizing(ptsurf::NoiseParams{p, seed, stream}, code.num_qubits());
    const ptsurf::Syndrome syndrome = ptsurf::syndrome_of(error, code);
    std::copy(syndrome.charges.begin(), syndrome.charges.end(), charges);
    std::copy(syndrome.fluxes.begin(), syndrome.fluxes.end(), fluxes);
  });
}

ptsurf_status ptsurf_decode(const ptsurf_layout* layout, ptsurf_decoder_kind kind,
                            const ptsurf_decoder_params* params, double p,
                            const uint8_t* charges, const uint8_t* fluxes,
                            ptsurf_decode_result* out) {
  return guarded([&] {
    require(layout != nullptr && charges != nullptr && fluxes != nullptr && out != nullptr,
            "null argument");
    const ptsurf::CodeLayout& code = layout->layout;
    ptsurf::Syndrome syndrome;
    syndrome.charges.assign(charges, charges + code.num_s_plaquettes());
    syndrome.fluxes.assign(fluxes, fluxes + code.num_p_plaquettes());
    for (uint8_t v : syndrome.charges) require(v <= 1, "syndrome entries must be 0 or 1");
    for (uint8_t v : syndrome.fluxes) require(v <= 1, "syndrome entries must be 0 or 1");

    const ptsurf::DecoderParams resolved = to_params(params, kind);
    ptsurf::DecodeOutcome outcome;
    if (kind == PTSURF_DECODER_MWPM) {
      outcome.chosen = ptsurf::decode_mwpm(syndrome, code).chosen;
      outcome.converged = true;
    } else {
      outcome = ptsurf::decode(syndrome, p, code, resolved);
    }
    out->chosen = static_cast<ptsurf_class>(outcome.chosen);
    out->steps = outcome.steps;
    out->final_tops0 = outcome.final_tops0;
    for (int c = 0; c < 4; ++c) out->class_tallies[c] = outcome.class_tallies[c];
    out->converged = outcome.converged ? 1 : 0;
    out->tie_broken = outcome.tie_broken ? 1 : 0;
    out->swap_acceptance = outcome.swap_acceptance;
  });
}

ptsurf_status ptsurf_estimate(int L, double p, ptsurf_decoder_kind kind,
                              const ptsurf_decoder_params* params,
                              const ptsurf_stopping* stopping, uint64_t seed, int threads,
                              ptsurf_record* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = to_c(ptsurf::estimate_P(L, p, to_kind(kind), to_params(params, kind),
                                   to_stopping(stopping), seed, to_options(threads)));
  });
}

const char* ptsurf_csv_header(void) {
  static const std::string header(ptsurf::csv_header());
  return header.c_str();
}

ptsurf_status ptsurf_record_to_csv(const ptsurf_record* record, char* buffer, size_t size,
                                   size_t* length) {
  return guarded([&] {
    require(record != nullptr, "null record");
    const std::string row = ptsurf::to_csv_row(from_c(*record));
    if (length != nullptr) *length = row.size();
    if (buffer != nullptr && size > 0) {
      const size_t n = std::min(size - 1, row.size());
      std::memcpy(buffer, row.data(), n);
      buffer[n] = '\0';
    }
  });
}

ptsurf_status ptsurf_scan(const int* sizes, size_t num_sizes, const double* rates,
                          size_t num_rates, ptsurf_decoder_kind kind,
                          const ptsurf_decoder_params* params, const ptsurf_stopping* stopping,
                          uint64_t seed, int threads, const char* csv_path,
                          const char* sidecar_path, ptsurf_scan_summary* out) {
  return guarded([&] {
    require(sizes != nullptr && rates != nullptr && csv_path != nullptr, "null argument");
    const ptsurf::DecoderParams resolved = to_params(params, kind);
    const ptsurf::StoppingRule rule = to_stopping(stopping);
    const ptsurf::ScanSummary summary = ptsurf::threshold_scan(
        std::vector<int>(sizes, sizes + num_sizes), std::vector<double>(rates, rates + num_rates),
        to_kind(kind), resolved, rule, seed, csv_path, to_options(threads));
    if (sidecar_path != nullptr) {
      ptsurf::write_sidecar(sidecar_path, summary.records, to_kind(kind), resolved, rule);
    }
    if (out != nullptr) {
      out->rows_written = summary.rows_written;
      out->rows_skipped = summary.rows_skipped;
      out->any_censored = summary.any_censored ? 1 : 0;
    }
  });
}

ptsurf_status ptsurf_min_effective_size(double p, ptsurf_decoder_kind kind,
                                        const ptsurf_decoder_params* params, int L_max,
                                        const ptsurf_stopping* stopping, uint64_t seed,
                                        int threads, int* found, int* L_out,
                                        ptsurf_record* trace, size_t trace_capacity,
                                        size_t* trace_length) {
  return guarded([&] {
    require(found != nullptr && L_out != nullptr, "null output pointer");
    std::vector<ptsurf::ExperimentRecord> records;
    const std::optional<int> L =
        ptsurf::min_effective_size(p, to_kind(kind), to_params(params, kind), L_max,
                                   to_stopping(stopping), seed, to_options(threads), &records);
    *found = L.has_value() ? 1 : 0;
    *L_out = L.value_or(0);
    if (trace != nullptr) {
      for (size_t i = 0; i < records.size() && i < trace_capacity; ++i) trace[i] = to_c(records[i]);
    }
    if (trace_length != nullptr) *trace_length = records.size();
  });
}

ptsurf_status ptsurf_fit(const int* sizes, size_t num_sizes, const double* rates,
                         size_t num_rates, ptsurf_decoder_kind kind,
                         const ptsurf_decoder_params* params, const ptsurf_stopping* stopping,
                         uint64_t seed, int threads, ptsurf_fit_line* lines) {
  return guarded([&] {
    require(sizes != nullptr && rates != nullptr && lines != nullptr, "null argument");
    const std::vector<ptsurf::ScalingFit> fits = ptsurf::distance_scaling_fit(
        std::vector<int>(sizes, sizes + num_sizes), std::vector<double>(rates, rates + num_rates),
        to_kind(kind), to_params(params, kind), to_stopping(stopping), seed, to_options(threads));
    for (size_t i = 0; i < fits.size(); ++i) {
      lines[i].L = fits[i].L;
      lines[i].slope_bit = fits[i].slope_bit;
      lines[i].intercept_bit = fits[i].intercept_bit;
      lines[i].slope_phase = fits[i].slope_phase;
      lines[i].intercept_phase = fits[i].intercept_phase;
      lines[i].points_bit = fits[i].residuals_bit.size();
      lines[i].points_phase = fits[i].residuals_phase.size();
    }
  });
}

}  // extern "C"
