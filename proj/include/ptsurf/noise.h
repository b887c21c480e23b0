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

#ifndef PTSURF_NOISE_H_
#define PTSURF_NOISE_H_

#include <cstddef>
#include <cstdint>

#include "ptsurf/pauli.h"
#include "ptsurf/rng.h"

namespace ptsurf {

struct NoiseParams {
  double p = 0.0;
  uint64_t seed = 0;
  uint64_t stream_id = 0;
};

/// Depolarizing channel: identity with probability 1-p, otherwise X, Y or Z
/// with probability p/3 each, independently per qubit. Accepts 0 <= p <= 1.
PauliConfig sample_depolarizing(double p, size_t num_qubits, Rng& rng);

/// Same draw on the stream addressed by (seed, stream_id) in the noise domain.
PauliConfig sample_depolarizing(const NoiseParams& params, size_t num_qubits);

}  // namespace ptsurf

#endif  // PTSURF_NOISE_H_
