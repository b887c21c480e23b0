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

#include "ptsurf/noise.h"

#include <stdexcept>
#include <string>

namespace ptsurf {

PauliConfig sample_depolarizing(double p, size_t num_qubits, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing rate must lie in [0, 1], got " + std::to_string(p));
  }
  PauliConfig e(num_qubits);
  if (p == 0.0) return e;
  // One variate per qubit: [0, 1-p) I, then X, Y, Z in slices of p/3.
  const double t_x = 1.0 - p;
  const double t_y = 1.0 - 2.0 * p / 3.0;
  const double t_z = 1.0 - p / 3.0;
  for (size_t q = 0; q < num_qubits; ++q) {
    const double u = rng.uniform();
    if (u < t_x) continue;
    if (u < t_y) {
      e.flip_x(q);
    } else if (u < t_z) {
      e.flip_x(q);
      e.flip_z(q);
    } else {
      e.flip_z(q);
    }
  }
  return e;
}

PauliConfig sample_depolarizing(const NoiseParams& params, size_t num_qubits) {
  Rng rng(params.seed, params.stream_id, StreamDomain::kNoise);
  return sample_depolarizing(params.p, num_qubits, rng);
}

}  // namespace ptsurf
