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

#include "ptsurf/pt_decoder.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ptsurf {

MoveSet MoveSet::stabilizers(const CodeLayout& layout) {
  MoveSet moves;
  for (const auto& support : layout.s_plaquettes()) moves.add(support, true);
  for (const auto& support : layout.p_plaquettes()) moves.add(support, false);
  return moves;
}

void MoveSet::add(std::span<const uint32_t> qubits, bool x_type) {
  qubits_.insert(qubits_.end(), qubits.begin(), qubits.end());
  offsets_.push_back(static_cast<uint32_t>(qubits_.size()));
  x_type_.push_back(x_type ? 1 : 0);
}

int MoveSet::weight_delta(const PauliConfig& state, size_t k) const {
  int delta = 0;
  const bool flips_x = x_type(k);
  for (uint32_t q : qubits(k)) {
    const bool x = state.x(q), z = state.z(q);
    // Flipping one component of a qubit that carries the other changes nothing.
    if (flips_x ? z : x) continue;
    delta += (flips_x ? x : z) ? -1 : 1;
  }
  return delta;
}

void MoveSet::apply(PauliConfig& state, size_t k) const {
  if (x_type(k)) {
    for (uint32_t q : qubits(k)) state.flip_x(q);
  } else {
    for (uint32_t q : qubits(k)) state.flip_z(q);
  }
}

void MoveSet::apply_random_subset(PauliConfig& state, Rng& rng) const {
  uint64_t bits = 0;
  for (size_t k = 0; k < size(); ++k) {
    if ((k & 63) == 0) bits = rng.bits();
    if ((bits >> (k & 63)) & 1) apply(state, k);
  }
}

AcceptanceTable::AcceptanceTable(double p, int max_delta) : max_delta_(max_delta) {
  const double w = (p / 3.0) / (1.0 - p);
  ratios_.resize(2 * max_delta + 1);
  for (int dn = -max_delta; dn <= max_delta; ++dn) ratios_[dn + max_delta] = std::pow(w, dn);
}

bool metropolis_update(PauliConfig& state, size_t& weight, const MoveSet& moves,
                       const AcceptanceTable& table, Rng& rng) {
  const size_t k = rng.below(static_cast<uint32_t>(moves.size()));
  const int dn = moves.weight_delta(state, k);
  const double r = table.ratio(dn);
  if (r < 1.0 && !(rng.uniform() < r)) return false;
  moves.apply(state, k);
  weight = static_cast<size_t>(static_cast<int64_t>(weight) + dn);
  return true;
}

int nearest_odd(int L) { return L % 2 == 0 ? L + 1 : L; }

std::vector<double> temperature_ladder(double p, int num_chains) {
  if (num_chains < 3 || num_chains % 2 == 0) {
    throw std::invalid_argument("chain count must be odd and at least 3, got " +
                                std::to_string(num_chains));
  }
  if (!(p >= 0.0 && p < kTopRate)) {
    throw std::invalid_argument("decoder error rate must lie in [0, 0.75), got " +
                                std::to_string(p));
  }
  const double delta = (kTopRate - p) / (num_chains - 1);
  std::vector<double> rates(num_chains);
  for (int m = 0; m < num_chains; ++m) rates[m] = p + m * delta;
  rates.front() = p;
  rates.back() = kTopRate;
  return rates;
}

double swap_ratio(double p_lo, double p_hi, size_t n_lo, size_t n_hi) {
  const double base = (p_lo / p_hi) * ((1.0 - p_hi) / (1.0 - p_lo));
  return std::pow(base, static_cast<double>(static_cast<int64_t>(n_hi) - static_cast<int64_t>(n_lo)));
}

PauliConfig canonical_config(const Syndrome& syndrome, const CodeLayout& layout) {
  check_syndrome(syndrome, layout);
  PauliConfig e(layout.num_qubits());
  const PlaquetteGraph& charges = layout.graph(Species::kCharge);
  for (uint32_t s : syndrome.charge_list()) {
    for (uint32_t q : charges.boundary_path(s)) e.flip_z(q);
  }
  const PlaquetteGraph& fluxes = layout.graph(Species::kFlux);
  for (uint32_t f : syndrome.flux_list()) {
    for (uint32_t q : fluxes.boundary_path(f)) e.flip_x(q);
  }
  return e;
}

PauliConfig random_config_in_class(const Syndrome& syndrome, const CodeLayout& layout, Rng& rng) {
  PauliConfig e = canonical_config(syndrome, layout);
  MoveSet::stabilizers(layout).apply_random_subset(e, rng);
  return e;
}

DecoderParams DecoderParams::defaults(int variant) {
  DecoderParams params;
  params.variant = variant;
  return params;
}

int DecoderParams::resolved_num_chains(int L) const {
  return num_chains > 0 ? num_chains : nearest_odd(L);
}

int DecoderParams::resolved_seq() const {
  if (seq > 0) return seq;
  return variant == 2 ? 10 : 2;
}

void DecoderParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("decoder params: " + what); };
  if (variant != 1 && variant != 2) fail("variant must be 1 or 2");
  if (num_chains != 0 && (num_chains < 3 || num_chains % 2 == 0)) {
    fail("chain count must be odd and at least 3");
  }
  if (its_per_step < 1) fail("its_per_step must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (tops < 1) fail("TOPS must be positive");
  if (seq < 0) fail("SEQ must be positive");
  if (max_steps < 1) fail("max_steps must be positive");
}

LogicalClass majority_class(const std::array<int64_t, 4>& tallies, bool* tie_broken) {
  size_t best = 0;
  for (size_t c = 1; c < 4; ++c) {
    if (tallies[c] > tallies[best]) best = c;
  }
  if (tie_broken != nullptr) {
    *tie_broken = std::count(tallies.begin(), tallies.end(), tallies[best]) > 1;
  }
  return static_cast<LogicalClass>(best);
}

ChainEnsemble::ChainEnsemble(const CodeLayout& layout, std::shared_ptr<const MoveSet> moves,
                             const Syndrome& syndrome, double p, int num_chains, Rng& rng)
    : layout_(&layout),
      moves_(std::move(moves)),
      syndrome_(syndrome),
      reference_(canonical_config(syndrome, layout)),
      rates_(temperature_ladder(p, num_chains)),
      pair_accepts_(num_chains - 1, 0) {
  int max_support = 0;
  for (size_t k = 0; k < moves_->size(); ++k) {
    max_support = std::max(max_support, static_cast<int>(moves_->qubits(k).size()));
  }
  for (double rate : rates_) tables_.emplace_back(rate, max_support);
  chains_.resize(num_chains);
  for (int m = 0; m + 1 < num_chains; ++m) {
    Chain& chain = chains_[m];
    chain.state = reference_;
    moves_->apply_random_subset(chain.state, rng);
    chain.weight = chain.state.weight();
  }
  top_chain_iteration(rng);
}

bool ChainEnsemble::metropolis_iteration(size_t m, Rng& rng) {
  Chain& chain = chains_[m];
  return metropolis_update(chain.state, chain.weight, *moves_, tables_[m], rng);
}

void ChainEnsemble::top_chain_iteration(Rng& rng) {
  Chain& top = chains_.back();
  top.state = reference_;
  moves_->apply_random_subset(top.state, rng);
  const uint64_t bits = rng.bits();
  const bool bitflip = bits & 1, phaseflip = (bits >> 1) & 1;
  if (bitflip) {
    for (uint32_t q : layout_->logical_bitflip_support()) top.state.flip_z(q);
  }
  if (phaseflip) {
    for (uint32_t q : layout_->logical_phaseflip_support()) top.state.flip_x(q);
  }
  top.cls = make_class(bitflip, phaseflip);
  top.weight = top.state.weight();
  top.tag = next_tag_++;
}

void ChainEnsemble::attempt_swaps(Rng& rng) {
  for (size_t m = chains_.size() - 1; m-- > 0;) {
    const double r = swap_ratio(rates_[m], rates_[m + 1], chains_[m].weight, chains_[m + 1].weight);
    ++swap_attempts_;
    if (r >= 1.0 || rng.uniform() < r) {
      std::swap(chains_[m], chains_[m + 1]);
      ++swap_accepts_;
      ++pair_accepts_[m];
    }
  }
  const auto& tag = chains_.front().tag;
  if (tag.has_value()) {
    if (*tag >= counted_tags_.size()) counted_tags_.resize(*tag + 1, 0);
    if (!counted_tags_[*tag]) {
      counted_tags_[*tag] = 1;
      ++tops0_;
    }
  }
}

void ChainEnsemble::set_state(size_t m, PauliConfig state, std::optional<uint64_t> tag) {
  Chain& chain = chains_.at(m);
  chain.cls = class_relative(state, reference_, *layout_);
  chain.weight = state.weight();
  chain.state = std::move(state);
  chain.tag = tag;
}

bool ChainEnsemble::consistent() const {
  for (const Chain& chain : chains_) {
    if (syndrome_of(chain.state, *layout_) != syndrome_) return false;
    if (chain.weight != chain.state.weight()) return false;
    if (class_relative(chain.state, reference_, *layout_) != chain.cls) return false;
  }
  return true;
}

PtDecoder::PtDecoder(const CodeLayout& layout, DecoderParams params)
    : layout_(&layout),
      params_(params),
      moves_(std::make_shared<const MoveSet>(MoveSet::stabilizers(layout))) {
  params_.validate();
}

namespace {

using Tally = std::array<int64_t, 4>;

Tally tally_between(const std::vector<Tally>& prefix, size_t lo, size_t hi) {
  Tally out{};
  for (size_t c = 0; c < 4; ++c) out[c] = prefix[hi][c] - prefix[lo][c];
  return out;
}

bool any(const Tally& t) { return t[0] + t[1] + t[2] + t[3] > 0; }

}  // namespace

DecodeOutcome PtDecoder::decode(const Syndrome& syndrome, double p, Rng& rng) const {
  check_syndrome(syndrome, *layout_);
  const int num_chains = params_.resolved_num_chains(layout_->size());
  const int seq = params_.resolved_seq();
  const bool variant_one = params_.variant == 1;
  ChainEnsemble ensemble(*layout_, moves_, syndrome, p, num_chains, rng);

  // Variant 1 history: prefix sums of the bottom chain's error count.
  std::vector<int64_t> weight_prefix{0};
  // Variant 2 history: prefix class counts, recorded from tops0 = 1 onwards.
  std::vector<Tally> class_prefix{Tally{}};

  Tally window{};
  Tally overall{};
  bool in_window = false;
  int64_t window_start = 0;
  LogicalClass window_class = LogicalClass::kI;

  DecodeOutcome out;
  auto reset_window = [&] {
    in_window = false;
    window = {};
  };

  for (int64_t step = 1; step <= params_.max_steps; ++step) {
    for (int m = 0; m + 1 < num_chains; ++m) {
      for (int it = 0; it < params_.its_per_step; ++it) ensemble.metropolis_iteration(m, rng);
    }
    // Successive top draws are independent, so one draw per step leaves the
    // state handed to the swap break identically distributed.
    ensemble.top_chain_iteration(rng);
    ensemble.attempt_swaps(rng);
    if (params_.check_invariants && !ensemble.consistent()) {
      throw std::logic_error("decoder chain left its syndrome sector at step " +
                             std::to_string(step));
    }

    const Chain& bottom = ensemble.chain(0);
    const int64_t tops0 = ensemble.tops0();
    const auto cls_index = static_cast<size_t>(bottom.cls);
    out.steps = step;
    if (tops0 >= 1) ++overall[cls_index];

    if (variant_one) {
      weight_prefix.push_back(weight_prefix.back() + static_cast<int64_t>(bottom.weight));
      if (tops0 < params_.tops) continue;
      const size_t n = weight_prefix.size() - 1;
      bool agree = false;
      if (n >= 4) {
        const size_t a = n / 4, b = n / 2, c = 3 * n / 4;
        const double m2 = static_cast<double>(weight_prefix[b] - weight_prefix[a]) / (b - a);
        const double m4 = static_cast<double>(weight_prefix[n] - weight_prefix[c]) / (n - c);
        const double tolerance =
            params_.relative_epsilon ? params_.epsilon * 0.5 * (m2 + m4) : params_.epsilon;
        agree = std::abs(m2 - m4) <= tolerance;
      }
      if (!agree) {
        reset_window();
        continue;
      }
      if (!in_window) {
        in_window = true;
        window_start = tops0;
        window = {};
      }
      ++window[cls_index];
      if (tops0 - window_start >= seq) {
        out.class_tallies = window;
        out.chosen = majority_class(window, &out.tie_broken);
        out.converged = true;
        break;
      }
    } else {
      if (tops0 < 1) continue;
      Tally next = class_prefix.back();
      ++next[cls_index];
      class_prefix.push_back(next);
      const size_t n = class_prefix.size() - 1;
      if (tops0 < params_.tops || n < 4) continue;
      const Tally q2 = tally_between(class_prefix, n / 4, n / 2);
      const Tally q4 = tally_between(class_prefix, 3 * n / 4, n);
      bool tie4 = false;
      const LogicalClass maj2 = majority_class(q2);
      const LogicalClass maj4 = majority_class(q4, &tie4);
      // The shared value has to stay put for the whole window.
      if (maj2 != maj4 || (in_window && maj4 != window_class)) {
        reset_window();
        if (maj2 != maj4) continue;
      }
      if (!in_window) {
        in_window = true;
        window_start = tops0;
        window_class = maj4;
        window = {};
      }
      ++window[cls_index];
      if (tops0 - window_start >= seq) {
        out.class_tallies = q4;
        out.chosen = maj4;
        out.tie_broken = tie4;
        out.converged = true;
        break;
      }
    }
  }

  if (!out.converged) {
    Tally best = any(window) ? window : overall;
    if (!any(best)) best[static_cast<size_t>(ensemble.chain(0).cls)] = 1;
    out.class_tallies = best;
    out.chosen = majority_class(best, &out.tie_broken);
  }
  out.final_tops0 = ensemble.tops0();
  out.swap_acceptance = ensemble.swap_attempts() == 0
                            ? 0.0
                            : static_cast<double>(ensemble.swap_accepts()) /
                                  static_cast<double>(ensemble.swap_attempts());
  return out;
}

DecodeOutcome decode(const Syndrome& syndrome, double p, const CodeLayout& layout,
                     const DecoderParams& params) {
  Rng rng(params.seed, 0, StreamDomain::kDecoder);
  return PtDecoder(layout, params).decode(syndrome, p, rng);
}

}  // namespace ptsurf
