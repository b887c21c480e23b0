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

#ifndef PTSURF_MWPM_H_
#define PTSURF_MWPM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ptsurf/code_layout.h"
#include "ptsurf/pauli.h"

namespace ptsurf {

/// Complete matching problem for one anyon species. Node i < k is anyon i;
/// node k + i is its private boundary partner. Anyon i connects to every
/// other anyon and to its own partner only; partners connect to each other
/// at zero cost.
struct MatchingProblem {
  Species species = Species::kCharge;
  std::vector<uint32_t> anyons;
  /// Row-major k x k shortest-path distances, boundary excluded.
  std::vector<int> pair_costs;
  std::vector<int> boundary_costs;

  size_t num_anyons() const { return anyons.size(); }
  size_t num_nodes() const { return 2 * anyons.size(); }
  int pair_cost(size_t i, size_t j) const { return pair_costs[i * anyons.size() + j]; }
};

MatchingProblem build_matching_problem(const Syndrome& syndrome, Species species,
                                       const CodeLayout& layout);

struct Pairing {
  /// Partner of every node of the problem.
  std::vector<int> mate;
  int64_t total_cost = 0;
};

/// Exact minimum-cost perfect matching (weighted blossom, no pruning).
Pairing solve_mwpm(const MatchingProblem& problem);

struct MwpmResult {
  PauliConfig correction;
  /// Class of the correction relative to canonical_config(A).
  LogicalClass chosen = LogicalClass::kI;
};

/// Matches charges and fluxes independently and joins each matched pair (or
/// anyon and boundary) with a shortest path.
MwpmResult decode_mwpm(const Syndrome& syndrome, const CodeLayout& layout);

}  // namespace ptsurf

#endif  // PTSURF_MWPM_H_
