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

#include "ptsurf/pauli.h"

#include <stdexcept>

namespace ptsurf {

char class_name(LogicalClass c) { return "IXYZ"[static_cast<int>(c)]; }

Pauli PauliConfig::get(size_t q) const {
  const bool xb = x(q), zb = z(q);
  if (xb) return zb ? Pauli::kY : Pauli::kX;
  return zb ? Pauli::kZ : Pauli::kI;
}

void PauliConfig::set(size_t q, Pauli p) {
  const bool want_x = p == Pauli::kX || p == Pauli::kY;
  const bool want_z = p == Pauli::kZ || p == Pauli::kY;
  if (x(q) != want_x) flip_x(q);
  if (z(q) != want_z) flip_z(q);
}

PauliConfig& PauliConfig::operator*=(const PauliConfig& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("pauli multiply: length mismatch (" + std::to_string(num_qubits_) +
                                " vs " + std::to_string(other.num_qubits_) + ")");
  }
  for (size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= other.x_[i];
    z_[i] ^= other.z_[i];
  }
  return *this;
}

std::string PauliConfig::str() const {
  std::string out(num_qubits_, 'I');
  for (size_t q = 0; q < num_qubits_; ++q) out[q] = "IXYZ"[static_cast<int>(get(q))];
  return out;
}

PauliConfig PauliConfig::from_str(const std::string& text) {
  PauliConfig e(text.size());
  for (size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': case '_': break;
      case 'X': e.set(q, Pauli::kX); break;
      case 'Y': e.set(q, Pauli::kY); break;
      case 'Z': e.set(q, Pauli::kZ); break;
      default:
        throw std::invalid_argument(std::string("bad pauli character '") + text[q] + "'");
    }
  }
  return e;
}

std::vector<uint32_t> Syndrome::charge_list() const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < charges.size(); ++i) if (charges[i]) out.push_back(i);
  return out;
}

std::vector<uint32_t> Syndrome::flux_list() const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < fluxes.size(); ++i) if (fluxes[i]) out.push_back(i);
  return out;
}

size_t Syndrome::count() const {
  size_t n = 0;
  for (uint8_t v : charges) n += v != 0;
  for (uint8_t v : fluxes) n += v != 0;
  return n;
}

void check_syndrome(const Syndrome& syndrome, const CodeLayout& layout) {
  if (syndrome.charges.size() != layout.num_s_plaquettes() ||
      syndrome.fluxes.size() != layout.num_p_plaquettes()) {
    throw std::invalid_argument("syndrome does not match an L=" + std::to_string(layout.size()) +
                                " layout");
  }
  auto binary = [](const std::vector<uint8_t>& flags) {
    for (uint8_t f : flags) {
      if (f > 1) return false;
    }
    return true;
  };
  if (!binary(syndrome.charges) || !binary(syndrome.fluxes)) {
    throw std::invalid_argument("syndrome entries must be 0 or 1");
  }
}

PauliConfig multiply(const PauliConfig& a, const PauliConfig& b) {
  PauliConfig out = a;
  out *= b;
  return out;
}

size_t weight(const PauliConfig& e) { return e.weight(); }

bool anticommutes(const PauliConfig& a, const PauliConfig& b) {
  if (a.size() != b.size()) throw std::invalid_argument("anticommutes: length mismatch");
  auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  int parity = 0;
  for (size_t i = 0; i < ax.size(); ++i) {
    parity ^= std::popcount((ax[i] & bz[i]) ^ (az[i] & bx[i])) & 1;
  }
  return parity != 0;
}

namespace {

bool odd_overlap(std::span<const uint64_t> words, const std::vector<uint32_t>& support) {
  int parity = 0;
  for (uint32_t q : support) parity ^= (words[q >> 6] >> (q & 63)) & 1;
  return parity != 0;
}

void check_size(const PauliConfig& e, const CodeLayout& layout) {
  if (e.size() != layout.num_qubits()) {
    throw std::invalid_argument("configuration has " + std::to_string(e.size()) +
                                " qubits, layout has " + std::to_string(layout.num_qubits()));
  }
}

}  // namespace

Syndrome syndrome_of(const PauliConfig& e, const CodeLayout& layout) {
  check_size(e, layout);
  Syndrome s = Syndrome::empty_for(layout);
  const auto& stars = layout.s_plaquettes();
  for (size_t i = 0; i < stars.size(); ++i) s.charges[i] = odd_overlap(e.z_words(), stars[i]);
  const auto& faces = layout.p_plaquettes();
  for (size_t i = 0; i < faces.size(); ++i) s.fluxes[i] = odd_overlap(e.x_words(), faces[i]);
  return s;
}

LogicalClass logical_class(const PauliConfig& g, const CodeLayout& layout) {
  if (!syndrome_of(g, layout).empty()) {
    throw std::invalid_argument("logical_class: operator has a nonempty syndrome");
  }
  return make_class(odd_overlap(g.z_words(), layout.logical_phaseflip_support()),
                    odd_overlap(g.x_words(), layout.logical_bitflip_support()));
}

LogicalClass class_relative(const PauliConfig& e, const PauliConfig& reference,
                            const CodeLayout& layout) {
  if (syndrome_of(e, layout) != syndrome_of(reference, layout)) {
    throw std::invalid_argument("class_relative: syndromes differ");
  }
  return logical_class(multiply(e, reference), layout);
}

PauliConfig stabilizer_config(const CodeLayout& layout, size_t index) {
  PauliConfig g(layout.num_qubits());
  const size_t num_s = layout.num_s_plaquettes();
  if (index < num_s) {
    for (uint32_t q : layout.s_plaquettes()[index]) g.flip_x(q);
  } else if (index < layout.num_stabilizers()) {
    for (uint32_t q : layout.p_plaquettes()[index - num_s]) g.flip_z(q);
  } else {
    throw std::out_of_range("stabilizer index " + std::to_string(index));
  }
  return g;
}

PauliConfig logical_bitflip(const CodeLayout& layout) {
  PauliConfig g(layout.num_qubits());
  for (uint32_t q : layout.logical_bitflip_support()) g.flip_z(q);
  return g;
}

PauliConfig logical_phaseflip(const CodeLayout& layout) {
  PauliConfig g(layout.num_qubits());
  for (uint32_t q : layout.logical_phaseflip_support()) g.flip_x(q);
  return g;
}

PauliConfig logical_operator(const CodeLayout& layout, LogicalClass c) {
  PauliConfig g(layout.num_qubits());
  if (has_x_component(c)) g *= logical_bitflip(layout);
  if (has_z_component(c)) g *= logical_phaseflip(layout);
  return g;
}

}  // namespace ptsurf
