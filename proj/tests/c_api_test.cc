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

#include "ptsurf/ptsurf.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

struct LayoutHandle {
  explicit LayoutHandle(int L) { status = ptsurf_layout_create(L, &layout); }
  ~LayoutHandle() { ptsurf_layout_destroy(layout); }
  ptsurf_layout* layout = nullptr;
  ptsurf_status status;
};

TEST(CApi, VersionAndDecoderNames) {
  EXPECT_STREQ(ptsurf_version(), "0.1.0");
  ptsurf_decoder_kind kind;
  ASSERT_EQ(ptsurf_parse_decoder("mcmc2", &kind), PTSURF_OK);
  EXPECT_EQ(kind, PTSURF_DECODER_MCMC2);
  EXPECT_STREQ(ptsurf_decoder_name(PTSURF_DECODER_MWPM), "mwpm");
  EXPECT_EQ(ptsurf_parse_decoder("nope", &kind), PTSURF_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ptsurf_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(ptsurf_parse_decoder(nullptr, &kind), PTSURF_INVALID_ARGUMENT);
}

TEST(CApi, LayoutHandle) {
  LayoutHandle h(4);
  ASSERT_EQ(h.status, PTSURF_OK);
  EXPECT_EQ(ptsurf_layout_size(h.layout), 4);
  EXPECT_EQ(ptsurf_layout_num_qubits(h.layout), 32u);
  EXPECT_EQ(ptsurf_layout_num_charges(h.layout), 16u);
  EXPECT_EQ(ptsurf_layout_num_fluxes(h.layout), 15u);
  LayoutHandle again(4);
  EXPECT_EQ(ptsurf_layout_fingerprint(h.layout), ptsurf_layout_fingerprint(again.layout));

  ptsurf_layout* bad = nullptr;
  EXPECT_EQ(ptsurf_layout_create(1, &bad), PTSURF_INVALID_ARGUMENT);
  EXPECT_EQ(bad, nullptr);
  ptsurf_layout_destroy(nullptr);
}

TEST(CApi, ParamsInit) {
  ptsurf_decoder_params params;
  ASSERT_EQ(ptsurf_decoder_params_init(&params, 2), PTSURF_OK);
  EXPECT_EQ(params.variant, 2);
  EXPECT_EQ(params.its_per_step, 10);
  EXPECT_EQ(params.tops, 10);
  EXPECT_DOUBLE_EQ(params.epsilon, 0.1);
  EXPECT_EQ(ptsurf_decoder_params_init(&params, 3), PTSURF_INVALID_ARGUMENT);
  EXPECT_EQ(ptsurf_decoder_params_init(nullptr, 1), PTSURF_INVALID_ARGUMENT);
}

TEST(CApi, SampleAndDecode) {
  LayoutHandle h(3);
  std::vector<uint8_t> charges(ptsurf_layout_num_charges(h.layout));
  std::vector<uint8_t> fluxes(ptsurf_layout_num_fluxes(h.layout));
  ptsurf_decoder_params params;
  ptsurf_decoder_params_init(&params, 1);
  params.seed = 5;
  int converged = 0;
  for (uint64_t stream = 0; stream < 20; ++stream) {
    ASSERT_EQ(ptsurf_sample_syndrome(h.layout, 0.1, 3, stream, charges.data(), fluxes.data()),
              PTSURF_OK);
    ptsurf_decode_result mcmc, mwpm;
    ASSERT_EQ(ptsurf_decode(h.layout, PTSURF_DECODER_MCMC1, &params, 0.1, charges.data(),
                            fluxes.data(), &mcmc),
              PTSURF_OK);
    ASSERT_EQ(ptsurf_decode(h.layout, PTSURF_DECODER_MWPM, &params, 0.1, charges.data(),
                            fluxes.data(), &mwpm),
              PTSURF_OK);
    converged += mcmc.converged;
    EXPECT_GT(mcmc.steps, 0);
    EXPECT_TRUE(mwpm.converged);
    EXPECT_EQ(mwpm.steps, 0);
  }
  EXPECT_EQ(converged, 20);

  charges[0] = 2;
  ptsurf_decode_result out;
  EXPECT_EQ(ptsurf_decode(h.layout, PTSURF_DECODER_MWPM, &params, 0.1, charges.data(),
                          fluxes.data(), &out),
            PTSURF_INVALID_ARGUMENT);
  charges[0] = 0;
  EXPECT_EQ(ptsurf_decode(h.layout, PTSURF_DECODER_MCMC1, &params, 0.8, charges.data(),
                          fluxes.data(), &out),
            PTSURF_INVALID_ARGUMENT);
  params.num_chains = 2;
  EXPECT_EQ(ptsurf_decode(h.layout, PTSURF_DECODER_MCMC1, &params, 0.1, charges.data(),
                          fluxes.data(), &out),
            PTSURF_INVALID_ARGUMENT);
  EXPECT_EQ(ptsurf_sample_syndrome(h.layout, 1.5, 3, 0, charges.data(), fluxes.data()),
            PTSURF_INVALID_ARGUMENT);
}

TEST(CApi, EstimateAndCsv) {
  ptsurf_decoder_params params;
  ptsurf_decoder_params_init(&params, 1);
  const ptsurf_stopping stopping = {0, 200, 200};
  ptsurf_record record;
  ASSERT_EQ(ptsurf_estimate(3, 0.05, PTSURF_DECODER_MWPM, &params, &stopping, 4, 1, &record),
            PTSURF_OK);
  EXPECT_EQ(record.samples, 200);
  EXPECT_EQ(record.decoder, PTSURF_DECODER_MWPM);
  EXPECT_EQ(record.variant, 0);

  size_t length = 0;
  ASSERT_EQ(ptsurf_record_to_csv(&record, nullptr, 0, &length), PTSURF_OK);
  ASSERT_GT(length, 20u);
  std::string row(length + 1, '\0');
  ASSERT_EQ(ptsurf_record_to_csv(&record, row.data(), row.size(), nullptr), PTSURF_OK);
  row.resize(length);
  EXPECT_EQ(row.rfind("3,0.05,mwpm,0,0,0,0,0,0,4,200,", 0), 0u);
  char small[8];
  ASSERT_EQ(ptsurf_record_to_csv(&record, small, sizeof small, &length), PTSURF_OK);
  EXPECT_EQ(std::string(small), row.substr(0, 7));

  EXPECT_EQ(std::string(ptsurf_csv_header()).substr(0, 4), "L,p,");
  const ptsurf_stopping bad = {0, 0, 0};
  EXPECT_EQ(ptsurf_estimate(3, 0.05, PTSURF_DECODER_MWPM, &params, &bad, 4, 1, &record),
            PTSURF_INVALID_ARGUMENT);
}

TEST(CApi, ScanReportsIoErrors) {
  ptsurf_decoder_params params;
  ptsurf_decoder_params_init(&params, 1);
  const ptsurf_stopping stopping = {0, 20, 20};
  const int sizes[] = {3};
  const double rates[] = {0.1};
  ptsurf_scan_summary summary;
  EXPECT_EQ(ptsurf_scan(sizes, 1, rates, 1, PTSURF_DECODER_MWPM, &params, &stopping, 1, 1,
                        "/nonexistent/dir/out.csv", nullptr, &summary),
            PTSURF_IO_ERROR);

  const std::string path =
      (std::filesystem::temp_directory_path() / "ptsurf_c_api_scan.csv").string();
  std::remove(path.c_str());
  ASSERT_EQ(ptsurf_scan(sizes, 1, rates, 1, PTSURF_DECODER_MWPM, &params, &stopping, 1, 1,
                        path.c_str(), nullptr, &summary),
            PTSURF_OK);
  EXPECT_EQ(summary.rows_written, 1u);
  ASSERT_EQ(ptsurf_scan(sizes, 1, rates, 1, PTSURF_DECODER_MWPM, &params, &stopping, 1, 1,
                        path.c_str(), nullptr, &summary),
            PTSURF_OK);
  EXPECT_EQ(summary.rows_skipped, 1u);
  std::remove(path.c_str());
}

TEST(CApi, MinEffectiveSizeTrace) {
  ptsurf_decoder_params params;
  ptsurf_decoder_params_init(&params, 1);
  const ptsurf_stopping stopping = {0, 2000, 2000};
  int found = -1, L = -1;
  ptsurf_record trace[2];
  size_t length = 0;
  ASSERT_EQ(ptsurf_min_effective_size(0.3, PTSURF_DECODER_MWPM, &params, 4, &stopping, 1, 1,
                                      &found, &L, trace, 2, &length),
            PTSURF_OK);
  EXPECT_EQ(found, 0);
  EXPECT_EQ(length, 3u);
  EXPECT_EQ(trace[1].L, 3);
}

}  // namespace
