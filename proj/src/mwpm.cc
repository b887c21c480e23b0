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

#include "ptsurf/mwpm.h"

#include <algorithm>
#include <stdexcept>

#include "blossom.h"
#include "ptsurf/pt_decoder.h"

namespace ptsurf {

MatchingProblem build_matching_problem(const Syndrome& syndrome, Species species,
                                       const CodeLayout& layout) {
  check_syndrome(syndrome, layout);
  const PlaquetteGraph& graph = layout.graph(species);
  MatchingProblem problem;
  problem.species = species;
  problem.anyons = species == Species::kCharge ? syndrome.charge_list() : syndrome.flux_list();
  const size_t k = problem.anyons.size();
  problem.pair_costs.assign(k * k, 0);
  problem.boundary_costs.resize(k);
  for (size_t i = 0; i < k; ++i) {
    const std::vector<int> dist = graph.distances_from(problem.anyons[i]);
    for (size_t j = 0; j < k; ++j) problem.pair_costs[i * k + j] = dist[problem.anyons[j]];
    problem.boundary_costs[i] = graph.boundary_distance(problem.anyons[i]);
  }
  return problem;
}

Pairing solve_mwpm(const MatchingProblem& problem) {
  const int k = static_cast<int>(problem.num_anyons());
  Pairing pairing;
  if (k == 0) return pairing;

  int64_t max_cost = 0;
  for (int c : problem.pair_costs) max_cost = std::max<int64_t>(max_cost, c);
  for (int c : problem.boundary_costs) max_cost = std::max<int64_t>(max_cost, c);
  // Every perfect matching has exactly k edges, so maximizing the sum of
  // (offset - cost) over perfect matchings minimizes the total cost.
  const int64_t offset = max_cost + 1;
  std::vector<internal::WeightedEdge> edges;
  edges.reserve(static_cast<size_t>(k) * k + k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      edges.push_back({i, j, offset - problem.pair_cost(i, j)});
    }
    edges.push_back({i, k + i, offset - problem.boundary_costs[i]});
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) edges.push_back({k + i, k + j, offset});
  }
  pairing.mate = internal::max_weight_matching(2 * k, edges, /*max_cardinality=*/true);
  for (int i = 0; i < k; ++i) {
    const int j = pairing.mate[i];
    if (j < 0) throw std::logic_error("matching left an anyon unmatched");
    if (j == k + i) {
      pairing.total_cost += problem.boundary_costs[i];
    } else if (j < k) {
      if (i < j) pairing.total_cost += problem.pair_cost(i, j);
    } else {
      throw std::logic_error("matching paired an anyon with a foreign boundary node");
    }
  }
  return pairing;
}

MwpmResult decode_mwpm(const Syndrome& syndrome, const CodeLayout& layout) {
  MwpmResult result{PauliConfig(layout.num_qubits()), LogicalClass::kI};
  for (Species species : {Species::kCharge, Species::kFlux}) {
    const PlaquetteGraph& graph = layout.graph(species);
    const MatchingProblem problem = build_matching_problem(syndrome, species, layout);
    const Pairing pairing = solve_mwpm(problem);
    const size_t k = problem.num_anyons();
    auto flip = [&](uint32_t q) {
      if (species == Species::kCharge) {
        result.correction.flip_z(q);
      } else {
        result.correction.flip_x(q);
      }
    };
    for (size_t i = 0; i < k; ++i) {
      const auto j = static_cast<size_t>(pairing.mate[i]);
      if (j == k + i) {
        for (uint32_t q : graph.boundary_path(problem.anyons[i])) flip(q);
      } else if (i < j) {
        for (uint32_t q : graph.path_between(problem.anyons[i], problem.anyons[j])) flip(q);
      }
    }
  }
  result.chosen = class_relative(result.correction, canonical_config(syndrome, layout), layout);
  return result;
}

}  // namespace ptsurf
