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

#ifndef PTSURF_RNG_H_
#define PTSURF_RNG_H_

#include <cstdint>
#include <random>

namespace ptsurf {

/// Independent random streams are addressed by (seed, stream, domain). The
/// domain separates the noise draw of a trial from the decoder's draws so the
/// two never share state.
enum class StreamDomain : uint32_t {
  kNoise = 1,
  kDecoder = 2,
  kTest = 3,
};

/// A single-owner random stream. Two Rng objects built from the same address
/// produce the same sequence regardless of what other streams have done.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream, StreamDomain domain = StreamDomain::kTest) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
                      static_cast<uint32_t>(domain)};
    engine_.seed(seq);
  }

  uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). n must be positive.
  uint32_t below(uint32_t n) { return std::uniform_int_distribution<uint32_t>(0, n - 1)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ptsurf

#endif  // PTSURF_RNG_H_
