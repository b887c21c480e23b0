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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <stdexcept>

namespace ptsurf {
namespace {

std::array<int64_t, 4> pauli_counts(const PauliConfig& e) {
  std::array<int64_t, 4> counts{};
  for (size_t q = 0; q < e.size(); ++q) ++counts[static_cast<size_t>(e.get(q))];
  return counts;
}

TEST(Noise, ZeroRateNeverErrs) {
  for (uint64_t stream = 0; stream < 100; ++stream) {
    EXPECT_TRUE(sample_depolarizing(NoiseParams{0.0, 1, stream}, 128).is_identity());
  }
}

TEST(Noise, FullRateSplitsEvenly) {
  const PauliConfig e = sample_depolarizing(NoiseParams{1.0, 2, 0}, 100000);
  const auto counts = pauli_counts(e);
  EXPECT_EQ(counts[0], 0);
  for (size_t k = 1; k < 4; ++k) EXPECT_NEAR(counts[k] / 1e5, 1.0 / 3.0, 0.01);
}

TEST(Noise, MeanWeightAtSeventeenPercent) {
  double total = 0.0;
  for (uint64_t stream = 0; stream < 10000; ++stream) {
    total += sample_depolarizing(NoiseParams{0.17, 3, stream}, 128).weight();
  }
  EXPECT_NEAR(total / 10000, 21.76, 0.5);
}

// Pearson chi-square on the per-qubit marginal, 3 degrees of freedom.
// 16.266 is the 0.999 quantile.
TEST(Noise, MarginalPassesChiSquare) {
  const double p = 0.2;
  Rng rng(4, 0, StreamDomain::kNoise);
  std::array<int64_t, 4> counts{};
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const auto c = pauli_counts(sample_depolarizing(p, 1, rng));
    for (size_t k = 0; k < 4; ++k) counts[k] += c[k];
  }
  const std::array<double, 4> expected = {samples * (1 - p), samples * p / 3, samples * p / 3,
                                          samples * p / 3};
  double chi2 = 0.0;
  for (size_t k = 0; k < 4; ++k) {
    chi2 += (counts[k] - expected[k]) * (counts[k] - expected[k]) / expected[k];
  }
  EXPECT_LT(chi2, 16.266);
}

TEST(Noise, StreamsAreReproducibleAndDistinct) {
  const PauliConfig a = sample_depolarizing(NoiseParams{0.3, 5, 17}, 200);
  const PauliConfig b = sample_depolarizing(NoiseParams{0.3, 5, 17}, 200);
  const PauliConfig c = sample_depolarizing(NoiseParams{0.3, 5, 18}, 200);
  const PauliConfig d = sample_depolarizing(NoiseParams{0.3, 6, 17}, 200);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NE(a, d);
}

TEST(Noise, DomainsDoNotShareState) {
  Rng noise(7, 3, StreamDomain::kNoise);
  Rng decoder(7, 3, StreamDomain::kDecoder);
  EXPECT_NE(noise.bits(), decoder.bits());
}

TEST(Noise, RejectsRatesOutsideTheUnitInterval) {
  Rng rng(1, 0);
  EXPECT_THROW(sample_depolarizing(-0.1, 10, rng), std::invalid_argument);
  EXPECT_THROW(sample_depolarizing(1.5, 10, rng), std::invalid_argument);
  EXPECT_THROW(sample_depolarizing(std::nan(""), 10, rng), std::invalid_argument);
}

}  // namespace
}  // namespace ptsurf
