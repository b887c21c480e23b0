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

// Parallel-tempered Metropolis decoder for the planar code.
//
// N_c chains sample error configurations with a fixed syndrome A at error
// rates p = p_1 < p_2 < ... < p_{N_c} = 0.75. Chains below the top move by
// multiplying in random stabilizers, so their logical class never changes on
// its own. The top chain (where every configuration is equally likely)
// resamples from scratch over all four classes. Neighbouring chains exchange
// states at every step break, which is how new classes reach the bottom.
//
// Progress is measured by tops0, the number of distinct top-chain births
// that have reached the bottom chain. Once tops0 >= TOPS a quarter-window
// comparison of the bottom chain's history decides convergence:
//   variant 1  mean error count, 2nd quarter vs 4th quarter, within epsilon
//   variant 2  majority class, 2nd quarter vs 4th quarter, equal
// and the comparison must hold while tops0 grows by SEQ.

#ifndef PTSURF_PT_DECODER_H_
#define PTSURF_PT_DECODER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ptsurf/code_layout.h"
#include "ptsurf/pauli.h"
#include "ptsurf/rng.h"

namespace ptsurf {

/// Rate of the uniform channel; the top of every ladder.
inline constexpr double kTopRate = 0.75;

/// Sparse single-type Pauli products used as Metropolis proposals, stored
/// flat. Proposal k is sigma^x (or sigma^z) on qubits [offset(k), offset(k+1)).
class MoveSet {
 public:
  MoveSet() = default;
  static MoveSet stabilizers(const CodeLayout& layout);

  void add(std::span<const uint32_t> qubits, bool x_type);
  size_t size() const { return x_type_.size(); }
  std::span<const uint32_t> qubits(size_t k) const {
    return {qubits_.data() + offsets_[k], qubits_.data() + offsets_[k + 1]};
  }
  bool x_type(size_t k) const { return x_type_[k] != 0; }

  /// Change in n_e if move k were applied to `state`.
  int weight_delta(const PauliConfig& state, size_t k) const;
  void apply(PauliConfig& state, size_t k) const;
  /// Applies each move independently with probability 1/2.
  void apply_random_subset(PauliConfig& state, Rng& rng) const;

 private:
  std::vector<uint32_t> qubits_;
  std::vector<uint32_t> offsets_{0};
  std::vector<uint8_t> x_type_;
};

/// Metropolis ratios r = ((p/3)/(1-p))^dn for |dn| <= max_delta.
class AcceptanceTable {
 public:
  AcceptanceTable(double p, int max_delta);
  double ratio(int dn) const { return ratios_[dn + max_delta_]; }
  int max_delta() const { return max_delta_; }

 private:
  int max_delta_;
  std::vector<double> ratios_;
};

/// One Metropolis iteration: propose state * moves[k] for a uniform k and
/// accept if r > 1, otherwise with probability r. `weight` must equal
/// state.weight() and is kept in sync. Returns whether the move was accepted.
bool metropolis_update(PauliConfig& state, size_t& weight, const MoveSet& moves,
                       const AcceptanceTable& table, Rng& rng);

/// Nearest odd integer to L, ties (even L) rounding up.
int nearest_odd(int L);

/// p_m = p + m * (0.75 - p) / (N_c - 1) for m = 0..N_c-1, last entry exactly 0.75.
std::vector<double> temperature_ladder(double p, int num_chains);

/// Swap ratio between chains at rates p_lo < p_hi holding n_lo and n_hi errors.
double swap_ratio(double p_lo, double p_hi, size_t n_lo, size_t n_hi);

/// Deterministic configuration with syndrome A: every charge joined to the
/// rough boundary by a shortest sigma^z path, every flux to the smooth
/// boundary by a shortest sigma^x path.
PauliConfig canonical_config(const Syndrome& syndrome, const CodeLayout& layout);

/// canonical_config(A) times each stabilizer with probability 1/2.
PauliConfig random_config_in_class(const Syndrome& syndrome, const CodeLayout& layout, Rng& rng);

struct DecoderParams {
  int variant = 1;
  /// 0 selects nearest_odd(L).
  int num_chains = 0;
  int its_per_step = 10;
  double epsilon = 0.1;
  /// Variant 1 compares |m2 - m4| <= epsilon * (m2 + m4) / 2 when set,
  /// |m2 - m4| <= epsilon otherwise.
  bool relative_epsilon = true;
  int tops = 10;
  /// 0 selects 2 for variant 1 and 10 for variant 2.
  int seq = 0;
  int64_t max_steps = 1'000'000;
  uint64_t seed = 0;
  /// Re-derives every chain's syndrome after each step.
  bool check_invariants = false;

  static DecoderParams defaults(int variant);
  int resolved_num_chains(int L) const;
  int resolved_seq() const;
  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct DecodeOutcome {
  LogicalClass chosen = LogicalClass::kI;
  int64_t steps = 0;
  int64_t final_tops0 = 0;
  /// Chain-1 classes over the decision window, indexed I, X, Y, Z.
  std::array<int64_t, 4> class_tallies{};
  bool converged = false;
  bool tie_broken = false;
  /// Accepted / attempted swaps over the run, all rungs pooled.
  double swap_acceptance = 0.0;
};

/// Majority class with ties going to the earliest of I, X, Y, Z.
LogicalClass majority_class(const std::array<int64_t, 4>& tallies, bool* tie_broken = nullptr);

struct Chain {
  PauliConfig state;
  size_t weight = 0;
  /// Class relative to canonical_config(A).
  LogicalClass cls = LogicalClass::kI;
  /// Birth tag for states generated in the top chain.
  std::optional<uint64_t> tag;
};

/// The tempered chains for one syndrome. Chain 0 is the bottom (rate p),
/// chain N_c-1 the top (rate 0.75).
class ChainEnsemble {
 public:
  ChainEnsemble(const CodeLayout& layout, std::shared_ptr<const MoveSet> moves,
                const Syndrome& syndrome, double p, int num_chains, Rng& rng);

  size_t num_chains() const { return chains_.size(); }
  double rate(size_t m) const { return rates_[m]; }
  const std::vector<double>& rates() const { return rates_; }
  const Chain& chain(size_t m) const { return chains_[m]; }
  const PauliConfig& reference() const { return reference_; }
  const Syndrome& syndrome() const { return syndrome_; }
  int64_t tops0() const { return tops0_; }
  uint64_t next_tag() const { return next_tag_; }

  /// Stabilizer proposal on chain m < N_c - 1.
  bool metropolis_iteration(size_t m, Rng& rng);
  /// Fresh uniform draw over the whole syndrome sector, with a new tag.
  void top_chain_iteration(Rng& rng);
  /// One sweep over adjacent pairs from the top down, then credits tops0
  /// if the bottom chain now holds an uncounted tag.
  void attempt_swaps(Rng& rng);

  /// Replaces a chain's state; the class is recomputed against the reference.
  void set_state(size_t m, PauliConfig state, std::optional<uint64_t> tag = std::nullopt);

  uint64_t swap_attempts() const { return swap_attempts_; }
  uint64_t swap_accepts() const { return swap_accepts_; }
  const std::vector<uint64_t>& swap_accepts_per_pair() const { return pair_accepts_; }

  /// True iff every chain state still has syndrome A and the cached weight.
  bool consistent() const;

 private:
  const CodeLayout* layout_;
  std::shared_ptr<const MoveSet> moves_;
  Syndrome syndrome_;
  PauliConfig reference_;
  std::vector<double> rates_;
  std::vector<AcceptanceTable> tables_;
  std::vector<Chain> chains_;
  std::vector<uint8_t> counted_tags_;
  uint64_t next_tag_ = 0;
  int64_t tops0_ = 0;
  uint64_t swap_attempts_ = 0;
  uint64_t swap_accepts_ = 0;
  std::vector<uint64_t> pair_accepts_;
};

/// Reusable decoder bound to one layout.
class PtDecoder {
 public:
  PtDecoder(const CodeLayout& layout, DecoderParams params);

  const DecoderParams& params() const { return params_; }
  /// Requires 0 <= p < 0.75. Never throws on non-convergence: the outcome
  /// then carries converged == false and the best majority so far.
  DecodeOutcome decode(const Syndrome& syndrome, double p, Rng& rng) const;

 private:
  const CodeLayout* layout_;
  DecoderParams params_;
  std::shared_ptr<const MoveSet> moves_;
};

/// Decodes with an Rng drawn from params.seed.
DecodeOutcome decode(const Syndrome& syndrome, double p, const CodeLayout& layout,
                     const DecoderParams& params);

}  // namespace ptsurf

#endif  // PTSURF_PT_DECODER_H_
