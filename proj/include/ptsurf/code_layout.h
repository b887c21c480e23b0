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

#ifndef PTSURF_CODE_LAYOUT_H_
#define PTSURF_CODE_LAYOUT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ptsurf {

/// Anyon species. Charges sit on s-plaquettes (stars) and are created by
/// sigma^z errors; fluxes sit on p-plaquettes and are created by sigma^x.
enum class Species : uint8_t { kCharge = 0, kFlux = 1 };

/// Plaquette adjacency for one anyon species plus a single virtual boundary
/// node. Each edge is labelled by the qubit whose single error moves an anyon
/// across it; all edges have unit weight.
class PlaquetteGraph {
 public:
  struct Neighbor {
    uint32_t node;
    uint32_t qubit;
  };

  PlaquetteGraph() = default;
  PlaquetteGraph(Species species, uint32_t rows, uint32_t cols);

  Species species() const { return species_; }
  /// Plaquette nodes plus the boundary node.
  size_t num_nodes() const { return adjacency_.size(); }
  size_t num_plaquettes() const { return adjacency_.size() - 1; }
  uint32_t boundary_node() const { return static_cast<uint32_t>(adjacency_.size() - 1); }
  std::span<const Neighbor> neighbors(uint32_t node) const { return adjacency_[node]; }

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  uint32_t row(uint32_t node) const { return node / cols_; }
  uint32_t col(uint32_t node) const { return node % cols_; }
  uint32_t node_at(uint32_t r, uint32_t c) const { return r * cols_ + c; }

  /// BFS distance from every node to `source`. Passing through the boundary
  /// node is disallowed unless `through_boundary` is set.
  std::vector<int> distances_from(uint32_t source, bool through_boundary = false) const;
  int boundary_distance(uint32_t node) const { return boundary_distance_[node]; }

  /// Qubits of a shortest path from `node` to the boundary.
  std::span<const uint32_t> boundary_path(uint32_t node) const { return boundary_paths_[node]; }

  /// Qubits of the row-then-column geodesic between two plaquettes.
  std::vector<uint32_t> path_between(uint32_t a, uint32_t b) const;

  /// Qubit on the edge joining two adjacent nodes, or UINT32_MAX.
  uint32_t edge_qubit(uint32_t a, uint32_t b) const;

  // Construction only.
  void add_edge(uint32_t a, uint32_t b, uint32_t qubit);
  void finalize();

 private:
  Species species_ = Species::kCharge;
  uint32_t rows_ = 0;
  uint32_t cols_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<int> boundary_distance_;
  std::vector<std::vector<uint32_t>> boundary_paths_;
};

/// Planar code of linear size L on a qubits-on-edges lattice.
///
/// Stars (s-plaquettes) sit on an L x L grid of vertices (r, c). Qubits live on
/// the internal edges (r,c)-(r,c+1) and (r,c)-(r+1,c). Every row also ends in
/// a dangling edge on each side. Left and right are rough boundaries that absorb
/// charges; top and bottom are smooth and absorb fluxes.
///
/// p-plaquettes form an (L-1) x (L+1) grid of faces, columns 0 and L
/// being the weight-3 faces between dangling edges.
///
/// Qubit indices: horizontal edges row-major, then vertical edges row-major,
/// then dangling edges (left, right) per row. Plaquettes are row-major.
class CodeLayout {
 public:
  /// Throws std::invalid_argument for L < 2.
  explicit CodeLayout(int L);

  int size() const { return L_; }
  size_t num_qubits() const { return 2 * static_cast<size_t>(L_) * L_; }
  size_t num_s_plaquettes() const { return s_plaquettes_.size(); }
  size_t num_p_plaquettes() const { return p_plaquettes_.size(); }
  size_t num_stabilizers() const { return s_plaquettes_.size() + p_plaquettes_.size(); }

  const std::vector<std::vector<uint32_t>>& s_plaquettes() const { return s_plaquettes_; }
  const std::vector<std::vector<uint32_t>>& p_plaquettes() const { return p_plaquettes_; }

  /// sigma^z string along the top row, dangling edges included (weight L+1).
  const std::vector<uint32_t>& logical_bitflip_support() const { return logical_bitflip_; }
  /// sigma^x string on the left dangling column (weight L).
  const std::vector<uint32_t>& logical_phaseflip_support() const { return logical_phaseflip_; }

  int charge_boundary_distance(uint32_t s) const { return charge_graph_.boundary_distance(s); }
  int flux_boundary_distance(uint32_t p) const { return flux_graph_.boundary_distance(p); }

  const PlaquetteGraph& graph(Species species) const {
    return species == Species::kCharge ? charge_graph_ : flux_graph_;
  }

  uint32_t horizontal(int r, int c) const { return static_cast<uint32_t>(r * (L_ - 1) + c); }
  uint32_t vertical(int r, int c) const {
    return static_cast<uint32_t>(L_ * (L_ - 1) + r * L_ + c);
  }
  uint32_t dangling_left(int r) const { return static_cast<uint32_t>(2 * L_ * (L_ - 1) + 2 * r); }
  uint32_t dangling_right(int r) const {
    return static_cast<uint32_t>(2 * L_ * (L_ - 1) + 2 * r + 1);
  }

  /// FNV-1a digest of every support list; identifies the layout in sidecars.
  uint64_t fingerprint() const;

 private:
  int L_;
  std::vector<std::vector<uint32_t>> s_plaquettes_;
  std::vector<std::vector<uint32_t>> p_plaquettes_;
  std::vector<uint32_t> logical_bitflip_;
  std::vector<uint32_t> logical_phaseflip_;
  PlaquetteGraph charge_graph_;
  PlaquetteGraph flux_graph_;
};

CodeLayout build_layout(int L);

const PlaquetteGraph& plaquette_graph(const CodeLayout& layout, Species species);

}  // namespace ptsurf

#endif  // PTSURF_CODE_LAYOUT_H_
