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

#ifndef PTSURF_PAULI_H_
#define PTSURF_PAULI_H_

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptsurf/code_layout.h"

namespace ptsurf {

enum class Pauli : uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

/// Logical error on the encoded qubit. The numeric order I < X < Y < Z is the
/// tie-break order for majority votes.
enum class LogicalClass : uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

inline constexpr std::array<LogicalClass, 4> kAllClasses = {LogicalClass::kI, LogicalClass::kX,
                                                            LogicalClass::kY, LogicalClass::kZ};

/// Builds a class from its bit-flip (X) and phase-flip (Z) components.
constexpr LogicalClass make_class(bool x_component, bool z_component) {
  if (x_component) return z_component ? LogicalClass::kY : LogicalClass::kX;
  return z_component ? LogicalClass::kZ : LogicalClass::kI;
}
constexpr bool has_x_component(LogicalClass c) {
  return c == LogicalClass::kX || c == LogicalClass::kY;
}
constexpr bool has_z_component(LogicalClass c) {
  return c == LogicalClass::kZ || c == LogicalClass::kY;
}
/// Klein four-group composition.
constexpr LogicalClass compose(LogicalClass a, LogicalClass b) {
  return make_class(has_x_component(a) != has_x_component(b),
                    has_z_component(a) != has_z_component(b));
}
char class_name(LogicalClass c);

/// An error configuration as packed X and Z incidence masks. Signs and global
/// phases are not tracked; Y is the presence of both bits and counts once
/// towards the weight.
class PauliConfig {
 public:
  PauliConfig() = default;
  explicit PauliConfig(size_t num_qubits)
      : num_qubits_(num_qubits), x_(word_count(num_qubits)), z_(word_count(num_qubits)) {}

  static size_t word_count(size_t n) { return (n + 63) / 64; }

  size_t size() const { return num_qubits_; }

  bool x(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  Pauli get(size_t q) const;
  void set(size_t q, Pauli p);
  void flip_x(size_t q) { x_[q >> 6] ^= uint64_t{1} << (q & 63); }
  void flip_z(size_t q) { z_[q >> 6] ^= uint64_t{1} << (q & 63); }

  size_t weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
    return w;
  }
  bool is_identity() const { return weight() == 0; }

  PauliConfig& operator*=(const PauliConfig& other);
  bool operator==(const PauliConfig& other) const = default;

  std::span<uint64_t> x_words() { return x_; }
  std::span<uint64_t> z_words() { return z_; }
  std::span<const uint64_t> x_words() const { return x_; }
  std::span<const uint64_t> z_words() const { return z_; }

  /// One character per qubit from "IXYZ".
  std::string str() const;
  static PauliConfig from_str(const std::string& text);

 private:
  size_t num_qubits_ = 0;
  std::vector<uint64_t> x_;
  std::vector<uint64_t> z_;
};

/// Charged s-plaquettes and fluxed p-plaquettes, as one flag per plaquette.
struct Syndrome {
  std::vector<uint8_t> charges;
  std::vector<uint8_t> fluxes;

  static Syndrome empty_for(const CodeLayout& layout) {
    return {std::vector<uint8_t>(layout.num_s_plaquettes(), 0),
            std::vector<uint8_t>(layout.num_p_plaquettes(), 0)};
  }
  std::vector<uint32_t> charge_list() const;
  std::vector<uint32_t> flux_list() const;
  const std::vector<uint8_t>& of(Species species) const {
    return species == Species::kCharge ? charges : fluxes;
  }
  size_t count() const;
  bool empty() const { return count() == 0; }
  bool operator==(const Syndrome& other) const = default;
};

/// Throws std::invalid_argument unless the flag vectors match the layout.
void check_syndrome(const Syndrome& syndrome, const CodeLayout& layout);

/// Throws std::invalid_argument on length mismatch.
PauliConfig multiply(const PauliConfig& a, const PauliConfig& b);
size_t weight(const PauliConfig& e);
/// True iff the two operators anticommute (odd symplectic overlap).
bool anticommutes(const PauliConfig& a, const PauliConfig& b);

Syndrome syndrome_of(const PauliConfig& e, const CodeLayout& layout);

/// Class of an operator with empty syndrome. X component iff it anticommutes
/// with the phase-flip logical; Z component iff it anticommutes with the
/// bit-flip logical. Throws std::invalid_argument on a nonempty syndrome.
LogicalClass logical_class(const PauliConfig& g, const CodeLayout& layout);

/// Class of e relative to a reference with the same syndrome.
LogicalClass class_relative(const PauliConfig& e, const PauliConfig& reference,
                            const CodeLayout& layout);

/// Exponent n_e in P(e) proportional to ((p/3)/(1-p))^{n_e}.
inline size_t log_likelihood_exponent(const PauliConfig& e) { return e.weight(); }

/// Configurations for one stabilizer or logical operator of the layout.
/// Stabilizers 0..L^2-1 are the stars (sigma^x), the rest the p-plaquettes
/// (sigma^z).
PauliConfig stabilizer_config(const CodeLayout& layout, size_t index);
PauliConfig logical_bitflip(const CodeLayout& layout);
PauliConfig logical_phaseflip(const CodeLayout& layout);
/// Operator realizing a logical class (bit-flip string, phase-flip string or both).
PauliConfig logical_operator(const CodeLayout& layout, LogicalClass c);

}  // namespace ptsurf

#endif  // PTSURF_PAULI_H_
