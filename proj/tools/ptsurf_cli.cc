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

// Command-line front end over the ptsurf C API.
//
//   ptsurf_cli estimate --L 4 --p 0.17 --decoder mcmc1 --samples 1000
//   ptsurf_cli scan --L 4 8 --p 0.17 0.20 --out scan.csv --sidecar scan.json
//   ptsurf_cli mincurve --p 0.05 0.10 --L-max 12 --decoder mwpm
//   ptsurf_cli fit --L 2 3 4 --p 0.005 0.01 0.02 0.03 --failures 10
//   ptsurf_cli decode --L 6 --p 0.1 --syndrome-file syndrome.json
//
// Exit status: 0 on success, 1 on I/O failure, 2 on invalid arguments,
// 3 when any result is censored or a decode did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptsurf/ptsurf.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCensored = 3;

// Reads a JSON object whose keys mirror the long flag names. Nested objects
// address subcommand options, e.g. {"decode": {"syndrome-file": "a.json"}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config: top level must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
  }

  static void collect(const json& object, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : object.items()) {
      std::string name = key;
      for (char& c : name) {
        if (c == '_') c = '-';
      }
      if (value.is_object()) {
        std::vector<std::string> nested = parents;
        nested.push_back(name);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = name;
      if (value.is_array()) {
        for (const json& element : value) item.inputs.push_back(scalar(element));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct Flags {
  std::vector<int> sizes;
  std::vector<double> rates;
  std::string decoder = "mcmc1";
  int nc = 0;
  int its_per_step = 10;
  double eps = 0.1;
  bool absolute_eps = false;
  int tops = 10;
  int seq = 0;
  uint64_t seed = 1;
  int64_t samples = 1000;
  int64_t failures = 0;
  int64_t max_samples = 10'000'000;
  int64_t max_steps = 1'000'000;
  int threads = 1;
  std::string out;
  std::string sidecar;
  std::string syndrome_file;
  uint64_t stream = 0;
  int L_max = 12;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ptsurf_status status) {
  if (status == PTSURF_OK) return;
  const std::string message = ptsurf_last_error();
  if (status == PTSURF_INVALID_ARGUMENT) throw UsageError(message);
  if (status == PTSURF_IO_ERROR) throw IoError(message);
  throw std::runtime_error(message);
}

ptsurf_decoder_kind decoder_kind(const Flags& flags) {
  ptsurf_decoder_kind kind;
  check(ptsurf_parse_decoder(flags.decoder.c_str(), &kind));
  return kind;
}

ptsurf_decoder_params decoder_params(const Flags& flags, ptsurf_decoder_kind kind) {
  ptsurf_decoder_params params;
  check(ptsurf_decoder_params_init(&params, kind == PTSURF_DECODER_MCMC2 ? 2 : 1));
  params.num_chains = flags.nc;
  params.its_per_step = flags.its_per_step;
  params.epsilon = flags.eps;
  params.relative_epsilon = flags.absolute_eps ? 0 : 1;
  params.tops = flags.tops;
  params.seq = flags.seq;
  params.max_steps = flags.max_steps;
  params.seed = flags.seed;
  return params;
}

ptsurf_stopping stopping_rule(const Flags& flags) {
  if (flags.failures > 0) return {1, flags.failures, flags.max_samples};
  return {0, flags.samples, flags.samples};
}

int single_size(const Flags& flags) {
  if (flags.sizes.size() != 1) throw UsageError("exactly one --L value is required");
  return flags.sizes.front();
}

double single_rate(const Flags& flags) {
  if (flags.rates.size() != 1) throw UsageError("exactly one --p value is required");
  return flags.rates.front();
}

std::string csv_row(const ptsurf_record& record) {
  size_t length = 0;
  check(ptsurf_record_to_csv(&record, nullptr, 0, &length));
  std::string row(length + 1, '\0');
  check(ptsurf_record_to_csv(&record, row.data(), row.size(), &length));
  row.resize(length);
  return row;
}

// Writes `text` to --out when given, to stdout otherwise.
void emit(const Flags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(flags.out);
  if (!file) throw IoError("cannot open " + flags.out + " for writing");
  file << text;
  if (!file) throw IoError("write failed on " + flags.out);
}

std::vector<uint8_t> indicator(const json& doc, const char* key, size_t n) {
  std::vector<uint8_t> out(n, 0);
  if (!doc.contains(key)) return out;
  for (const json& entry : doc.at(key)) {
    const auto index = entry.get<int64_t>();
    if (index < 0 || static_cast<size_t>(index) >= n) {
      throw UsageError(std::string("syndrome file: ") + key + " index " + std::to_string(index) +
                       " out of range");
    }
    out[static_cast<size_t>(index)] ^= 1;
  }
  return out;
}

int run_decode(const Flags& flags) {
  const ptsurf_decoder_kind kind = decoder_kind(flags);
  const ptsurf_decoder_params params = decoder_params(flags, kind);
  json file;
  if (!flags.syndrome_file.empty()) {
    std::ifstream in(flags.syndrome_file);
    if (!in) throw IoError("cannot open " + flags.syndrome_file);
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(flags.syndrome_file + ": " + e.what());
    }
  }
  int L = 0;
  if (flags.sizes.empty() && file.contains("L")) {
    if (!file.at("L").is_number_integer()) throw UsageError("syndrome file L must be an integer");
    L = file.at("L").get<int>();
  } else {
    L = single_size(flags);
    if (file.contains("L") && file.at("L") != L) {
      throw UsageError("syndrome file was written for L = " + file.at("L").dump());
    }
  }
  const double p = single_rate(flags);

  ptsurf_layout* layout = nullptr;
  check(ptsurf_layout_create(L, &layout));
  std::unique_ptr<ptsurf_layout, decltype(&ptsurf_layout_destroy)> owner(layout,
                                                                          ptsurf_layout_destroy);
  std::vector<uint8_t> charges(ptsurf_layout_num_charges(layout));
  std::vector<uint8_t> fluxes(ptsurf_layout_num_fluxes(layout));
  if (!flags.syndrome_file.empty()) {
    try {
      charges = indicator(file, "charges", charges.size());
      fluxes = indicator(file, "fluxes", fluxes.size());
    } catch (const json::exception& e) {
      throw UsageError(flags.syndrome_file + ": " + e.what());
    }
  } else {
    check(ptsurf_sample_syndrome(layout, p, flags.seed, flags.stream, charges.data(),
                                 fluxes.data()));
  }

  ptsurf_decode_result result;
  check(ptsurf_decode(layout, kind, &params, p, charges.data(), fluxes.data(), &result));

  static const char* kClassNames[] = {"I", "X", "Y", "Z"};
  json doc;
  doc["L"] = L;
  doc["p"] = p;
  doc["decoder"] = flags.decoder;
  json charge_list = json::array();
  for (size_t i = 0; i < charges.size(); ++i) {
    if (charges[i]) charge_list.push_back(i);
  }
  json flux_list = json::array();
  for (size_t i = 0; i < fluxes.size(); ++i) {
    if (fluxes[i]) flux_list.push_back(i);
  }
  doc["charges"] = charge_list;
  doc["fluxes"] = flux_list;
  doc["chosen"] = kClassNames[result.chosen];
  doc["steps"] = result.steps;
  doc["tops0"] = result.final_tops0;
  doc["class_tallies"] = {result.class_tallies[0], result.class_tallies[1],
                          result.class_tallies[2], result.class_tallies[3]};
  doc["converged"] = result.converged != 0;
  doc["tie_broken"] = result.tie_broken != 0;
  doc["swap_acceptance"] = result.swap_acceptance;
  emit(flags, doc.dump(2) + "\n");
  return result.converged ? kExitOk : kExitCensored;
}

int run_estimate(const Flags& flags) {
  const ptsurf_decoder_kind kind = decoder_kind(flags);
  const ptsurf_decoder_params params = decoder_params(flags, kind);
  const ptsurf_stopping stopping = stopping_rule(flags);
  ptsurf_record record;
  check(ptsurf_estimate(single_size(flags), single_rate(flags), kind, &params, &stopping,
                        flags.seed, flags.threads, &record));
  emit(flags, std::string(ptsurf_csv_header()) + "\n" + csv_row(record) + "\n");
  return record.censored ? kExitCensored : kExitOk;
}

int run_scan(const Flags& flags) {
  if (flags.out.empty()) throw UsageError("scan requires --out");
  if (flags.sizes.empty() || flags.rates.empty()) {
    throw UsageError("scan requires at least one --L and one --p value");
  }
  const ptsurf_decoder_kind kind = decoder_kind(flags);
  const ptsurf_decoder_params params = decoder_params(flags, kind);
  const ptsurf_stopping stopping = stopping_rule(flags);
  ptsurf_scan_summary summary;
  check(ptsurf_scan(flags.sizes.data(), flags.sizes.size(), flags.rates.data(), flags.rates.size(),
                    kind, &params, &stopping, flags.seed, flags.threads, flags.out.c_str(),
                    flags.sidecar.empty() ? nullptr : flags.sidecar.c_str(), &summary));
  std::cerr << "scan: " << summary.rows_written << " rows written, " << summary.rows_skipped
            << " skipped\n";
  return summary.any_censored ? kExitCensored : kExitOk;
}

int run_mincurve(const Flags& flags) {
  if (flags.rates.empty()) throw UsageError("mincurve requires at least one --p value");
  const ptsurf_decoder_kind kind = decoder_kind(flags);
  const ptsurf_decoder_params params = decoder_params(flags, kind);
  const ptsurf_stopping stopping = stopping_rule(flags);
  std::ostringstream table;
  table << "p,decoder,L_min\n";
  bool censored = false;
  std::vector<ptsurf_record> trace(static_cast<size_t>(std::max(flags.L_max, 1)));
  for (double p : flags.rates) {
    int found = 0;
    int L = 0;
    size_t length = 0;
    check(ptsurf_min_effective_size(p, kind, &params, flags.L_max, &stopping, flags.seed,
                                    flags.threads, &found, &L, trace.data(), trace.size(),
                                    &length));
    for (size_t i = 0; i < length && i < trace.size(); ++i) censored |= trace[i].censored != 0;
    table << p << ',' << flags.decoder << ',';
    if (found) {
      table << L;
    } else {
      table << "none";
    }
    table << '\n';
  }
  emit(flags, table.str());
  return censored ? kExitCensored : kExitOk;
}

int run_fit(const Flags& flags) {
  if (flags.sizes.empty() || flags.rates.size() < 2) {
    throw UsageError("fit requires at least one --L and two --p values");
  }
  const ptsurf_decoder_kind kind = decoder_kind(flags);
  const ptsurf_decoder_params params = decoder_params(flags, kind);
  const ptsurf_stopping stopping = stopping_rule(flags);
  std::vector<ptsurf_fit_line> lines(flags.sizes.size());
  check(ptsurf_fit(flags.sizes.data(), flags.sizes.size(), flags.rates.data(), flags.rates.size(),
                   kind, &params, &stopping, flags.seed, flags.threads, lines.data()));
  std::ostringstream table;
  table << "L,slope_bit,intercept_bit,points_bit,slope_phase,intercept_phase,points_phase\n";
  for (const ptsurf_fit_line& line : lines) {
    table << line.L << ',' << line.slope_bit << ',' << line.intercept_bit << ','
          << line.points_bit << ',' << line.slope_phase << ',' << line.intercept_phase << ','
          << line.points_phase << '\n';
  }
  emit(flags, table.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-tempering and matching decoders for the planar code"};
  app.set_version_flag("--version", std::string(ptsurf_version()));
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file whose keys mirror the long flags");

  Flags flags;
  app.add_option("--L", flags.sizes, "Code size(s)")->check(CLI::PositiveNumber);
  app.add_option("--p", flags.rates, "Physical error rate(s)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--decoder", flags.decoder, "mcmc1, mcmc2 or mwpm")
      ->check(CLI::IsMember({"mcmc1", "mcmc2", "mwpm"}));
  app.add_option("--nc", flags.nc, "Number of tempering chains (0: nearest odd to L)");
  app.add_option("--its-per-step", flags.its_per_step, "Metropolis iterations per chain per step");
  app.add_option("--eps", flags.eps, "Convergence tolerance");
  app.add_flag("--absolute-eps", flags.absolute_eps, "Compare window means in absolute terms");
  app.add_option("--tops", flags.tops, "tops0 gate before convergence testing");
  app.add_option("--seq", flags.seq, "Required tops0 increase (0: variant default)");
  app.add_option("--seed", flags.seed, "Master seed");
  app.add_option("--samples", flags.samples, "Trials per grid point");
  app.add_option("--failures", flags.failures, "Stop each point at this many bit failures");
  app.add_option("--max-samples", flags.max_samples, "Trial cap with --failures");
  app.add_option("--max-steps", flags.max_steps, "Decoder step cap");
  app.add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", flags.out, "Output file");

  CLI::App* decode = app.add_subcommand("decode", "Decode one syndrome");
  decode->add_option("--syndrome-file", flags.syndrome_file,
                     "JSON with \"charges\" and \"fluxes\" index lists");
  decode->add_option("--stream", flags.stream, "Noise stream when sampling the syndrome");
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate logical failure rates");
  CLI::App* scan = app.add_subcommand("scan", "Threshold scan over an (L, p) grid");
  scan->add_option("--sidecar", flags.sidecar, "JSON sidecar with full parameters");
  CLI::App* mincurve = app.add_subcommand("mincurve", "Minimum effective code size per p");
  mincurve->add_option("--L-max", flags.L_max, "Largest size to try")->check(CLI::Range(2, 64));
  CLI::App* fit = app.add_subcommand("fit", "Low-p log-log slope per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (decode->parsed()) return run_decode(flags);
    if (estimate->parsed()) return run_estimate(flags);
    if (scan->parsed()) return run_scan(flags);
    if (mincurve->parsed()) return run_mincurve(flags);
    if (fit->parsed()) return run_fit(flags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
