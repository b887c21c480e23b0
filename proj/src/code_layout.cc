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

#include "ptsurf/code_layout.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>

namespace ptsurf {

PlaquetteGraph::PlaquetteGraph(Species species, uint32_t rows, uint32_t cols)
    : species_(species), rows_(rows), cols_(cols), adjacency_(rows * cols + 1) {}

void PlaquetteGraph::add_edge(uint32_t a, uint32_t b, uint32_t qubit) {
  adjacency_[a].push_back({b, qubit});
  adjacency_[b].push_back({a, qubit});
}

std::vector<int> PlaquetteGraph::distances_from(uint32_t source, bool through_boundary) const {
  std::vector<int> dist(num_nodes(), -1);
  std::deque<uint32_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    if (u == boundary_node() && u != source && !through_boundary) {
      continue;
    }
    for (const Neighbor& nb : adjacency_[u]) {
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[u] + 1;
        queue.push_back(nb.node);
      }
    }
  }
  return dist;
}

void PlaquetteGraph::finalize() {
  // BFS outward from the boundary; parent pointers give one shortest path per node.
  const uint32_t boundary = boundary_node();
  boundary_distance_.assign(num_nodes(), -1);
  std::vector<Neighbor> parent(num_nodes(), {UINT32_MAX, UINT32_MAX});
  std::deque<uint32_t> queue{boundary};
  boundary_distance_[boundary] = 0;
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : adjacency_[u]) {
      if (boundary_distance_[nb.node] < 0) {
        boundary_distance_[nb.node] = boundary_distance_[u] + 1;
        parent[nb.node] = {u, nb.qubit};
        queue.push_back(nb.node);
      }
    }
  }
  boundary_paths_.assign(num_nodes(), {});
  for (uint32_t v = 0; v < boundary; ++v) {
    if (boundary_distance_[v] < 0) {
      throw std::logic_error("plaquette graph: node cut off from the boundary");
    }
    for (uint32_t u = v; u != boundary; u = parent[u].node) {
      boundary_paths_[v].push_back(parent[u].qubit);
    }
  }
}

uint32_t PlaquetteGraph::edge_qubit(uint32_t a, uint32_t b) const {
  for (const Neighbor& nb : adjacency_[a]) {
    if (nb.node == b) {
      return nb.qubit;
    }
  }
  return UINT32_MAX;
}

std::vector<uint32_t> PlaquetteGraph::path_between(uint32_t a, uint32_t b) const {
  std::vector<uint32_t> path;
  uint32_t r = row(a), c = col(a);
  const uint32_t tr = row(b), tc = col(b);
  auto step = [&](uint32_t nr, uint32_t nc) {
    path.push_back(edge_qubit(node_at(r, c), node_at(nr, nc)));
    r = nr;
    c = nc;
  };
  while (c != tc) {
    step(r, c < tc ? c + 1 : c - 1);
  }
  while (r != tr) {
    step(r < tr ? r + 1 : r - 1, c);
  }
  return path;
}

CodeLayout::CodeLayout(int L) : L_(L) {
  if (L < 2) {
    throw std::invalid_argument("planar code size must be at least 2, got " + std::to_string(L));
  }
  const auto n = static_cast<uint32_t>(L);

  // Stars.
  charge_graph_ = PlaquetteGraph(Species::kCharge, n, n);
  s_plaquettes_.resize(n * n);
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      auto& support = s_plaquettes_[r * L + c];
      if (c == 0) support.push_back(dangling_left(r));
      if (c > 0) support.push_back(horizontal(r, c - 1));
      if (c < L - 1) support.push_back(horizontal(r, c));
      if (c == L - 1) support.push_back(dangling_right(r));
      if (r > 0) support.push_back(vertical(r - 1, c));
      if (r < L - 1) support.push_back(vertical(r, c));
      std::sort(support.begin(), support.end());
    }
  }
  const uint32_t charge_boundary = charge_graph_.boundary_node();
  for (int r = 0; r < L; ++r) {
    const uint32_t row_start = static_cast<uint32_t>(r) * n;
    charge_graph_.add_edge(row_start, charge_boundary, dangling_left(r));
    for (int c = 0; c + 1 < L; ++c) {
      charge_graph_.add_edge(row_start + c, row_start + c + 1, horizontal(r, c));
    }
    charge_graph_.add_edge(row_start + n - 1, charge_boundary, dangling_right(r));
  }
  for (int r = 0; r + 1 < L; ++r) {
    for (int c = 0; c < L; ++c) {
      charge_graph_.add_edge(r * n + c, (r + 1) * n + c, vertical(r, c));
    }
  }
  charge_graph_.finalize();

  // Faces: (L-1) rows by (L+1) columns; column j spans star columns j-1 and j.
  auto row_edge = [&](int r, int c) {
    if (c < 0) return dangling_left(r);
    if (c >= L - 1) return dangling_right(r);
    return horizontal(r, c);
  };
  const uint32_t face_cols = n + 1;
  flux_graph_ = PlaquetteGraph(Species::kFlux, n - 1, face_cols);
  p_plaquettes_.resize((n - 1) * face_cols);
  for (int r = 0; r < L - 1; ++r) {
    for (int j = 0; j <= L; ++j) {
      const int c = j - 1;
      auto& support = p_plaquettes_[r * face_cols + j];
      support.push_back(row_edge(r, c));
      support.push_back(row_edge(r + 1, c));
      if (c >= 0) support.push_back(vertical(r, c));
      if (c + 1 <= L - 1) support.push_back(vertical(r, c + 1));
      std::sort(support.begin(), support.end());
    }
  }
  const uint32_t flux_boundary = flux_graph_.boundary_node();
  for (int j = 0; j <= L; ++j) {
    flux_graph_.add_edge(static_cast<uint32_t>(j), flux_boundary, row_edge(0, j - 1));
  }
  for (int r = 0; r < L - 1; ++r) {
    for (int j = 0; j < L; ++j) {
      flux_graph_.add_edge(r * face_cols + j, r * face_cols + j + 1, vertical(r, j));
    }
    if (r + 1 < L - 1) {
      for (int j = 0; j <= L; ++j) {
        flux_graph_.add_edge(r * face_cols + j, (r + 1) * face_cols + j, row_edge(r + 1, j - 1));
      }
    }
  }
  for (int j = 0; j <= L; ++j) {
    flux_graph_.add_edge((n - 2) * face_cols + j, flux_boundary, row_edge(L - 1, j - 1));
  }
  flux_graph_.finalize();

  logical_bitflip_.push_back(dangling_left(0));
  for (int c = 0; c + 1 < L; ++c) logical_bitflip_.push_back(horizontal(0, c));
  logical_bitflip_.push_back(dangling_right(0));
  std::sort(logical_bitflip_.begin(), logical_bitflip_.end());
  for (int r = 0; r < L; ++r) logical_phaseflip_.push_back(dangling_left(r));
}

uint64_t CodeLayout::fingerprint() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<uint64_t>(L_));
  for (const auto* group : {&s_plaquettes_, &p_plaquettes_}) {
    for (const auto& support : *group) {
      mix(support.size());
      for (uint32_t q : support) mix(q);
    }
  }
  for (uint32_t q : logical_bitflip_) mix(q);
  for (uint32_t q : logical_phaseflip_) mix(q);
  return h;
}

CodeLayout build_layout(int L) { return CodeLayout(L); }

const PlaquetteGraph& plaquette_graph(const CodeLayout& layout, Species species) {
  return layout.graph(species);
}

}  // namespace ptsurf
