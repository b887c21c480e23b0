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

// End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
// followed by the measured values. Pass criterion numbers as arguments to
// run a subset.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "l2_model.h"
#include "ptsurf/code_layout.h"
#include "ptsurf/harness.h"
#include "ptsurf/mwpm.h"
#include "ptsurf/noise.h"
#include "ptsurf/pauli.h"
#include "ptsurf/pt_decoder.h"
#include "ptsurf/rng.h"

namespace ptsurf {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// ---- 1: geometry ----

using Row = std::vector<uint64_t>;

Row symplectic_row(const PauliConfig& e) {
  const size_t n = e.size();
  Row row((2 * n + 63) / 64, 0);
  for (size_t q = 0; q < n; ++q) {
    if (e.x(q)) row[q / 64] |= uint64_t{1} << (q % 64);
    if (e.z(q)) row[(n + q) / 64] |= uint64_t{1} << ((n + q) % 64);
  }
  return row;
}

size_t gf2_rank(std::vector<Row> rows, size_t bits) {
  size_t rank = 0;
  for (size_t col = 0; col < bits && rank < rows.size(); ++col) {
    const uint64_t mask = uint64_t{1} << (col % 64);
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][col / 64] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][col / 64] & mask)) {
        for (size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

// Lightest single-species operator that commutes with every check of the
// other type but anticommutes with the conjugate logical.
int min_logical_weight(const CodeLayout& layout, bool x_type) {
  const size_t n = layout.num_qubits();
  const auto& checks = x_type ? layout.p_plaquettes() : layout.s_plaquettes();
  const auto& conjugate =
      x_type ? layout.logical_bitflip_support() : layout.logical_phaseflip_support();
  std::vector<uint32_t> check_masks;
  for (const auto& c : checks) {
    uint32_t m = 0;
    for (uint32_t q : c) m |= 1u << q;
    check_masks.push_back(m);
  }
  uint32_t conj = 0;
  for (uint32_t q : conjugate) conj |= 1u << q;
  int best = 1 << 30;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int w = std::popcount(mask);
    if (w >= best) continue;
    if ((std::popcount(mask & conj) & 1) == 0) continue;
    bool ok = true;
    for (uint32_t c : check_masks) {
      if (std::popcount(mask & c) & 1) {
        ok = false;
        break;
      }
    }
    if (ok) best = w;
  }
  return best;
}

Verdict criterion_geometry() {
  Verdict v{true, ""};
  std::ostringstream detail;
  for (int L = 2; L <= 12; ++L) {
    const CodeLayout layout(L);
    const size_t n = layout.num_qubits();
    bool ok = n == static_cast<size_t>(2 * L * L) &&
              layout.num_s_plaquettes() == static_cast<size_t>(L * L) &&
              layout.num_p_plaquettes() == static_cast<size_t>(L * L - 1);
    std::vector<PauliConfig> stabilizers;
    for (size_t s = 0; s < layout.num_stabilizers(); ++s) {
      stabilizers.push_back(stabilizer_config(layout, s));
    }
    for (size_t a = 0; a < stabilizers.size() && ok; ++a) {
      for (size_t b = a + 1; b < stabilizers.size(); ++b) {
        if (anticommutes(stabilizers[a], stabilizers[b])) {
          ok = false;
          break;
        }
      }
    }
    std::vector<Row> rows;
    for (const auto& s : stabilizers) rows.push_back(symplectic_row(s));
    const size_t rank = gf2_rank(rows, 2 * n);
    ok = ok && rank == n - 1;
    if (!ok) {
      v.pass = false;
      detail << "L=" << L << " rank " << rank << " ";
    }
  }
  for (int L : {2, 3}) {
    const CodeLayout layout(L);
    const int bit = min_logical_weight(layout, false);
    const int phase = min_logical_weight(layout, true);
    detail << "L=" << L << " min weights bit " << bit << " phase " << phase << "; ";
    if (bit != L + 1 || phase != L) v.pass = false;
  }
  detail << "counts, commutation and rank 2L^2-1 checked for L=2..12";
  v.detail = detail.str();
  return v;
}

// ---- 2: exact posterior at L=2 ----

struct Agreement {
  int eligible = 0;
  int agree = 0;
  int nonconverged = 0;
  double argmax_mass = 0.0;
};

Agreement oracle_agreement(double p, const DecoderParams& params) {
  const CodeLayout layout(2);
  const PtDecoder decoder(layout, params);
  const testing::L2Posterior posterior = testing::enumerate_l2(p);
  Agreement a;
  for (int key = 0; key < 128; ++key) {
    if (posterior.top_two_gap(key) < 0.10) continue;
    ++a.eligible;
    a.argmax_mass += posterior.joint[key][static_cast<size_t>(posterior.argmax(key))] /
                     posterior.total(key);
    Rng rng(1000 + key, static_cast<uint64_t>(p * 1000), StreamDomain::kDecoder);
    const DecodeOutcome out = decoder.decode(testing::l2::to_syndrome(key), p, rng);
    a.nonconverged += !out.converged;
    a.agree += out.chosen == posterior.argmax(key);
  }
  return a;
}

// Gated on the default parameters. The SEQ=50 figures are printed alongside
// to show how the decision window length drives the hit rate.
Verdict criterion_oracle() {
  Verdict v{true, ""};
  std::ostringstream detail;
  DecoderParams long_window = DecoderParams::defaults(1);
  long_window.seq = 50;
  for (double p : {0.05, 0.10, 0.15}) {
    const Agreement a = oracle_agreement(p, DecoderParams::defaults(1));
    const Agreement b = oracle_agreement(p, long_window);
    const double rate = a.eligible > 0 ? static_cast<double>(a.agree) / a.eligible : 0.0;
    detail << "p=" << p << ": " << a.agree << "/" << a.eligible << " (" << fmt("%.3f", rate)
           << ", nonconverged " << a.nonconverged << ", mean posterior of argmax "
           << fmt("%.3f", a.argmax_mass / a.eligible) << ", SEQ=50 gives "
           << fmt("%.3f", static_cast<double>(b.agree) / b.eligible) << "); ";
    if (rate < 0.90) v.pass = false;
  }
  v.detail = detail.str();
  return v;
}

// ---- 3: threshold bracketing ----

Verdict criterion_threshold() {
  Verdict v{true, ""};
  std::ostringstream detail;
  const StoppingRule stopping = StoppingRule::fixed_samples(1000);
  struct Case {
    DecoderKind kind;
    double below, above;
  };
  for (const Case& c : {Case{DecoderKind::kMcmc1, 0.17, 0.20}, Case{DecoderKind::kMcmc2, 0.16, 0.20}}) {
    const DecoderParams params = DecoderParams::defaults(c.kind == DecoderKind::kMcmc1 ? 1 : 2);
    std::map<std::pair<int, double>, double> P;
    for (double p : {c.below, c.above}) {
      for (int L : {4, 8}) {
        const ExperimentRecord r = estimate_P(L, p, c.kind, params, stopping, 2024);
        P[{L, p}] = r.P_bit;
        detail << decoder_name(c.kind) << " L=" << L << " p=" << p << " P_bit=" << r.P_bit
               << " (nonconverged " << r.nonconverged << "); ";
      }
    }
    if (!(P[{8, c.below}] < P[{4, c.below}] && P[{8, c.above}] > P[{4, c.above}])) {
      v.pass = false;
    }
  }
  v.detail = detail.str();
  return v;
}

// ---- 4: convergence time ----

Verdict criterion_runtime() {
  const double p = 0.17;
  const int runs = 31;
  const DecoderParams params = DecoderParams::defaults(1);
  std::vector<double> log_median;
  std::ostringstream detail;
  for (int L : {4, 8, 12, 16}) {
    const CodeLayout layout(L);
    const SyndromeDecoder decoder = make_decoder(layout, DecoderKind::kMcmc1, params);
    std::vector<int64_t> steps;
    int nonconverged = 0;
    for (int s = 0; s < runs; ++s) {
      const TrialResult t = run_trial(layout, p, decoder, 77, static_cast<uint64_t>(s));
      steps.push_back(t.steps);
      nonconverged += !t.converged;
    }
    std::nth_element(steps.begin(), steps.begin() + runs / 2, steps.end());
    const double median = static_cast<double>(steps[runs / 2]);
    log_median.push_back(std::log(median));
    detail << "L=" << L << " median T=" << median << " (nonconverged " << nonconverged << "); ";
  }
  std::vector<double> slopes;
  for (size_t i = 1; i < log_median.size(); ++i) {
    slopes.push_back((log_median[i] - log_median[i - 1]) / 4.0);
  }
  detail << "slopes";
  bool decreasing = true;
  for (size_t i = 0; i < slopes.size(); ++i) {
    detail << " " << fmt("%.4f", slopes[i]);
    if (i > 0 && !(slopes[i] < slopes[i - 1])) decreasing = false;
  }
  return {decreasing, detail.str()};
}

// ---- 5: low-p distance scaling ----

Verdict criterion_distance() {
  const std::vector<double> rates = {0.005, 0.0075, 0.01, 0.015, 0.02, 0.03};
  const StoppingRule stopping = StoppingRule::fixed_failures(10);
  Verdict v{true, ""};
  std::ostringstream detail;
  auto check = [&](DecoderKind kind, const DecoderParams& params, const std::vector<int>& sizes) {
    for (const ScalingFit& fit : distance_scaling_fit(sizes, rates, kind, params, stopping, 5)) {
      const int d = fit.L + 1;
      const double expected = std::floor((d + 1) / 2.0);
      const size_t used = fit.residuals_bit.size();
      const bool ok = used >= 3 && std::abs(fit.slope_bit - expected) <= 0.5;
      detail << decoder_name(kind) << " L=" << fit.L << " slope " << fmt("%.3f", fit.slope_bit)
             << " (expected " << expected << ", " << used << " points); ";
      if (!ok) v.pass = false;
    }
  };
  check(DecoderKind::kMwpm, DecoderParams::defaults(1), {2, 3, 4});
  DecoderParams mcmc = DecoderParams::defaults(1);
  mcmc.num_chains = 7;
  check(DecoderKind::kMcmc1, mcmc, {2, 3});
  v.detail = detail.str();
  return v;
}

// ---- 6: matching baseline ----

int64_t enumerate_pairings(const MatchingProblem& problem, std::vector<bool>& done) {
  const size_t k = problem.num_anyons();
  size_t i = 0;
  while (i < k && done[i]) ++i;
  if (i == k) return 0;
  done[i] = true;
  int64_t best = problem.boundary_costs[i] + enumerate_pairings(problem, done);
  for (size_t j = i + 1; j < k; ++j) {
    if (done[j]) continue;
    done[j] = true;
    best = std::min(best, problem.pair_cost(i, j) + enumerate_pairings(problem, done));
    done[j] = false;
  }
  done[i] = false;
  return best;
}

Verdict criterion_matching() {
  Rng rng(606, 0);
  int cost_mismatch = 0, syndrome_mismatch = 0, max_anyons = 0;
  const int cases = 10000;
  std::vector<std::unique_ptr<CodeLayout>> layouts;
  for (int L = 2; L <= 9; ++L) layouts.push_back(std::make_unique<CodeLayout>(L));
  for (int trial = 0; trial < cases; ++trial) {
    const CodeLayout& layout = *layouts[rng.below(static_cast<uint32_t>(layouts.size()))];
    Syndrome a = Syndrome::empty_for(layout);
    auto place = [&rng](std::vector<uint8_t>& flags) {
      const uint32_t count = rng.below(static_cast<uint32_t>(std::min<size_t>(flags.size(), 10)) + 1);
      for (uint32_t placed = 0; placed < count;) {
        const uint32_t i = rng.below(static_cast<uint32_t>(flags.size()));
        if (!flags[i]) {
          flags[i] = 1;
          ++placed;
        }
      }
    };
    place(a.charges);
    place(a.fluxes);
    for (Species species : {Species::kCharge, Species::kFlux}) {
      const MatchingProblem problem = build_matching_problem(a, species, layout);
      max_anyons = std::max<int>(max_anyons, static_cast<int>(problem.num_anyons()));
      std::vector<bool> done(problem.num_anyons(), false);
      if (solve_mwpm(problem).total_cost != enumerate_pairings(problem, done)) ++cost_mismatch;
    }
    if (syndrome_of(decode_mwpm(a, layout).correction, layout) != a) ++syndrome_mismatch;
  }
  std::ostringstream detail;
  detail << cases << " problems (up to " << max_anyons << " anyons per species): "
         << cost_mismatch << " cost mismatches, " << syndrome_mismatch
         << " corrections with the wrong syndrome";
  return {cost_mismatch == 0 && syndrome_mismatch == 0 && max_anyons == 10, detail.str()};
}

// ---- 7: minimum effective size ----

Verdict criterion_min_size() {
  const StoppingRule stopping = StoppingRule::fixed_samples(1000);
  std::ostringstream detail;
  auto run = [&](DecoderKind kind) {
    std::vector<ExperimentRecord> trace;
    const std::optional<int> L =
        min_effective_size(0.10, kind, DecoderParams::defaults(1), 12, stopping, 7, {}, &trace);
    detail << decoder_name(kind) << ":";
    for (const auto& r : trace) {
      detail << " L=" << r.L << " (" << r.P_bit << ", " << r.P_phase << ")";
    }
    detail << " -> " << (L ? std::to_string(*L) : std::string("none")) << "; ";
    return L;
  };
  const std::optional<int> mcmc = run(DecoderKind::kMcmc1);
  const std::optional<int> mwpm = run(DecoderKind::kMwpm);
  const bool pass = mcmc.has_value() && (!mwpm.has_value() || *mcmc <= *mwpm);
  return {pass, detail.str()};
}

// ---- 8: sampler properties ----

Verdict criterion_sampler() {
  std::ostringstream detail;
  bool pass = true;

  // Detailed balance on three qubits. Two pair moves plus two single-qubit
  // moves reach all 16 states.
  {
    MoveSet moves;
    const std::vector<uint32_t> m01 = {0, 1}, m12 = {1, 2}, m2 = {2}, m0 = {0};
    moves.add(m01, true);
    moves.add(m12, false);
    moves.add(m2, true);
    moves.add(m0, false);
    const double p = 0.2;
    const AcceptanceTable table(p, 2);
    Rng rng(801, 0);
    PauliConfig state(3);
    size_t weight = 0;
    std::map<std::pair<uint64_t, uint64_t>, int64_t> visits;
    std::map<std::pair<uint64_t, uint64_t>, size_t> weights;
    const int64_t iterations = 2'000'000;
    for (int64_t i = 0; i < iterations; ++i) {
      metropolis_update(state, weight, moves, table, rng);
      const auto key = std::make_pair(state.x_words()[0], state.z_words()[0]);
      ++visits[key];
      weights[key] = state.weight();
    }
    const double w = (p / 3) / (1 - p);
    double norm = 0.0;
    for (const auto& [key, n] : weights) norm += std::pow(w, static_cast<double>(n));
    double tv = 0.0;
    for (const auto& [key, count] : visits) {
      tv += std::abs(static_cast<double>(count) / iterations -
                     std::pow(w, static_cast<double>(weights[key])) / norm);
    }
    tv /= 2;
    const bool ok = visits.size() == 16 && tv < 0.02;
    pass &= ok;
    detail << "toy TV " << fmt("%.5f", tv) << " over " << visits.size() << " states; ";
  }

  // Top chain uniform over the 512 configurations of an L=2 syndrome sector.
  {
    const CodeLayout layout(2);
    const auto moves = std::make_shared<const MoveSet>(MoveSet::stabilizers(layout));
    const Syndrome a = testing::l2::to_syndrome(0b1010010);
    Rng rng(802, 0);
    ChainEnsemble ensemble(layout, moves, a, 0.1, 3, rng);
    std::map<int, int64_t> counts;
    const int draws = 512 * 200;
    bool in_sector = true;
    for (int i = 0; i < draws; ++i) {
      ensemble.top_chain_iteration(rng);
      uint8_t x, z;
      testing::l2::from_config(ensemble.chain(2).state, x, z);
      in_sector &= testing::l2::syndrome_key(x, z) == 0b1010010;
      ++counts[x << 8 | z];
    }
    const double expected = draws / 512.0;
    double chi2 = 0.0;
    for (const auto& [key, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
    chi2 += (512.0 - static_cast<double>(counts.size())) * expected;
    // 0.999 quantile of chi-square with 511 degrees of freedom.
    const double critical = 615.515;
    const bool ok = in_sector && counts.size() == 512 && chi2 < critical;
    pass &= ok;
    detail << "top-chain chi2 " << fmt("%.1f", chi2) << " < " << fmt("%.1f", critical) << " with "
           << counts.size() << " cells; ";
  }

  // Swaps with ratio >= 1 are always taken, and tops0 never decreases.
  {
    const CodeLayout layout(4);
    const auto moves = std::make_shared<const MoveSet>(MoveSet::stabilizers(layout));
    Rng rng(803, 0);
    const Syndrome a = syndrome_of(sample_depolarizing(0.2, layout.num_qubits(), rng), layout);
    int refused = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      ChainEnsemble ensemble(layout, moves, a, 0.1, 5, rng);
      const PauliConfig shared = random_config_in_class(a, layout, rng);
      for (size_t m = 0; m < 5; ++m) ensemble.set_state(m, shared);
      ensemble.attempt_swaps(rng);
      refused += static_cast<int>(ensemble.swap_attempts() - ensemble.swap_accepts());
    }
    for (int trial = 0; trial < 1000; ++trial) {
      ChainEnsemble ensemble(layout, moves, Syndrome::empty_for(layout), 0.1, 3, rng);
      ensemble.set_state(0, stabilizer_config(layout, rng.below(16)));
      ensemble.set_state(1, PauliConfig(layout.num_qubits()));
      ensemble.set_state(2, PauliConfig(layout.num_qubits()));
      ensemble.attempt_swaps(rng);
      refused += ensemble.chain(0).weight != 0;
    }
    ChainEnsemble ensemble(layout, moves, a, 0.3, 5, rng);
    int64_t last = ensemble.tops0();
    bool monotone = true;
    for (int round = 0; round < 200000; ++round) {
      ensemble.metropolis_iteration(rng.below(4), rng);
      if (rng.bits() & 1) ensemble.top_chain_iteration(rng);
      ensemble.attempt_swaps(rng);
      monotone &= ensemble.tops0() >= last;
      last = ensemble.tops0();
    }
    const bool ok = refused == 0 && monotone && last > 0;
    pass &= ok;
    detail << "refused ratio>=1 swaps " << refused << "; tops0 monotone "
           << (monotone ? "yes" : "no") << " (final " << last << ")";
  }
  return {pass, detail.str()};
}

}  // namespace
}  // namespace ptsurf

int main(int argc, char** argv) {
  using ptsurf::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"geometry exactness", ptsurf::criterion_geometry},
      {"exact posterior agreement at L=2", ptsurf::criterion_oracle},
      {"threshold bracketing", ptsurf::criterion_threshold},
      {"convergence-time concavity", ptsurf::criterion_runtime},
      {"low-p distance scaling", ptsurf::criterion_distance},
      {"matching baseline validity", ptsurf::criterion_matching},
      {"minimum effective size ordering", ptsurf::criterion_min_size},
      {"sampler properties", ptsurf::criterion_sampler},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!selected.empty() && selected.count(number) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = criteria[i].second();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", number,
                criteria[i].first, v.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
