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

#ifndef PTSURF_SRC_BLOSSOM_H_
#define PTSURF_SRC_BLOSSOM_H_

#include <cstdint>
#include <vector>

namespace ptsurf::internal {

struct WeightedEdge {
  int u;
  int v;
  int64_t weight;
};

/// Edmonds' primal-dual blossom algorithm, O(n^3). Returns mate[v] (or -1)
/// for a maximum-weight matching; with `max_cardinality` set, the matching
/// has maximum weight among those of maximum cardinality. Integer weights
/// keep every dual update exact.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

}  // namespace ptsurf::internal

#endif  // PTSURF_SRC_BLOSSOM_H_
