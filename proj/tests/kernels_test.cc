// Copyright 2026 The ordsup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// The parallel kernels must agree bit for bit with their serial references.

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ordsup/kernels.h"
#include "ordsup/rng.h"

namespace ordsup::kernels {
namespace {

std::vector<uint8_t> RandomRows(Rng& rng, std::size_t rows, int n) {
  std::vector<uint8_t> v(rows * n);
  for (auto& x : v) x = static_cast<uint8_t>(1 + rng.UniformIndex(n));
  return v;
}

TEST_CASE("distance update agrees") {
  Rng rng(1);
  const int n = 7;
  const std::size_t rows = 3000;
  const auto cand = RandomRows(rng, rows, n);
  std::vector<int> min_s(rows, 1 << 30), min_p(rows, 1 << 30);
  std::vector<int64_t> sum_s(rows, 0), sum_p(rows, 0);
  for (int m = 0; m < 5; ++m) {
    const auto member = RandomRows(rng, 1, n);
    UpdateDistancesSerial(cand, n, member, min_s, sum_s);
    UpdateDistancesParallel(cand, n, member, min_p, sum_p);
  }
  CHECK(min_s == min_p);
  CHECK(sum_s == sum_p);
  int hamming = 0;
  const auto member = RandomRows(rng, 1, n);
  std::vector<int> one_min(1, 1 << 30);
  std::vector<int64_t> one_sum(1, 0);
  UpdateDistancesSerial(std::span<const uint8_t>(cand.data(), n), n, member,
                        one_min, one_sum);
  for (int i = 0; i < n; ++i) hamming += cand[i] != member[i];
  CHECK(one_min[0] == hamming);
  CHECK(one_sum[0] == hamming);
}

TEST_CASE("selection follows min, then sum, then index") {
  const std::vector<int> min_d{3, 4, 4, 4, 2};
  const std::vector<int64_t> sum_d{9, 7, 8, 8, 20};
  const std::vector<uint8_t> all{1, 1, 1, 1, 1};
  for (auto select : {&SelectBestSerial, &SelectBestParallel}) {
    const Selection s = select(min_d, sum_d, all);
    CHECK(s.index == 2);
    CHECK(s.min_dist == 4);
    CHECK(s.sum_dist == 8);
  }
  const std::vector<uint8_t> some{1, 1, 0, 0, 1};
  CHECK(SelectBestParallel(min_d, sum_d, some).index == 1);
  const std::vector<uint8_t> none{0, 0, 0, 0, 0};
  CHECK(SelectBestSerial(min_d, sum_d, none).index == -1);
  CHECK(SelectBestParallel(min_d, sum_d, none).index == -1);
}

TEST_CASE("selection agrees on random ties") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(5000);
    std::vector<int> min_d(n);
    std::vector<int64_t> sum_d(n);
    std::vector<uint8_t> el(n);
    for (std::size_t i = 0; i < n; ++i) {
      min_d[i] = static_cast<int>(rng.UniformIndex(4));
      sum_d[i] = static_cast<int64_t>(rng.UniformIndex(6));
      el[i] = rng.UniformIndex(4) != 0;
    }
    const Selection a = SelectBestSerial(min_d, sum_d, el);
    const Selection b = SelectBestParallel(min_d, sum_d, el);
    CHECK(a.index == b.index);
  }
}

TEST_CASE("min pairwise hamming agrees") {
  Rng rng(4);
  const int n = 6;
  const auto rows = RandomRows(rng, 200, n);
  CHECK(MinPairwiseHammingSerial(rows, n) == MinPairwiseHammingParallel(rows, n));
  const std::vector<uint8_t> two{1, 2, 3, 3, 2, 1};
  CHECK(MinPairwiseHammingSerial(two, 3) == 2);
}

TEST_CASE("sparse times dense agrees exactly") {
  Rng rng(5);
  const int d = 16;
  const std::size_t cols = 128;
  std::vector<double> dense(cols * d);
  for (double& x : dense) x = rng.Uniform(-1.0, 1.0);
  SparseRows sp;
  for (int r = 0; r < 300; ++r) {
    const std::size_t nnz = rng.UniformIndex(10);
    for (std::size_t k = 0; k < nnz; ++k) {
      sp.columns.push_back(static_cast<uint32_t>(rng.UniformIndex(cols)));
      sp.weights.push_back(rng.Uniform(0.0, 1.0));
    }
    sp.offsets.push_back(sp.columns.size());
  }
  std::vector<double> a(sp.rows() * d), b(sp.rows() * d);
  SparseTimesDenseSerial(sp, dense, d, a);
  SparseTimesDenseParallel(sp, dense, d, b);
  CHECK(a == b);

  const std::size_t r = 7;
  for (int j = 0; j < d; ++j) {
    double expect = 0.0;
    for (std::size_t k = sp.offsets[r]; k < sp.offsets[r + 1]; ++k) {
      expect += sp.weights[k] * dense[sp.columns[k] * d + j];
    }
    CHECK(a[r * d + j] == doctest::Approx(expect).epsilon(1e-12));
  }
}

}  // namespace
}  // namespace ordsup::kernels
