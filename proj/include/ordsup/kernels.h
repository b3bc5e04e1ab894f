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

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; the two must produce identical results for any thread
// count, which the tests check directly.

#ifndef ORDSUP_KERNELS_H_
#define ORDSUP_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ordsup::kernels {

enum class Execution { kSerial, kParallel };

// Permutations below are packed row-major, `n` 0-based values per row.

// For each candidate row c: min_dist[c] = min(min_dist[c], d(c, member)) and
// sum_dist[c] += d(c, member), where d is the Hamming distance.
void UpdateDistancesSerial(std::span<const uint8_t> candidates, int n,
                           std::span<const uint8_t> member,
                           std::span<int> min_dist,
                           std::span<int64_t> sum_dist);
void UpdateDistancesParallel(std::span<const uint8_t> candidates, int n,
                             std::span<const uint8_t> member,
                             std::span<int> min_dist,
                             std::span<int64_t> sum_dist);

struct Selection {
  std::ptrdiff_t index = -1;
  int min_dist = -1;
  int64_t sum_dist = -1;
};

// Eligible row with the largest min_dist, then the largest sum_dist, then the
// smallest index. index == -1 when nothing is eligible.
Selection SelectBestSerial(std::span<const int> min_dist,
                           std::span<const int64_t> sum_dist,
                           std::span<const uint8_t> eligible);
Selection SelectBestParallel(std::span<const int> min_dist,
                             std::span<const int64_t> sum_dist,
                             std::span<const uint8_t> eligible);

// Smallest Hamming distance over all unordered pairs of rows; 0 for fewer
// than two rows.
int MinPairwiseHammingSerial(std::span<const uint8_t> rows, int n);
int MinPairwiseHammingParallel(std::span<const uint8_t> rows, int n);

// Compressed sparse rows; row r spans [offsets[r], offsets[r + 1]).
struct SparseRows {
  std::vector<std::size_t> offsets{0};
  std::vector<uint32_t> columns;
  std::vector<double> weights;

  std::size_t rows() const { return offsets.size() - 1; }
};

// out (rows × d) = sparse (rows × D) * dense (D × d), dense row-major.
void SparseTimesDenseSerial(const SparseRows& sparse,
                            std::span<const double> dense, int d,
                            std::span<double> out);
void SparseTimesDenseParallel(const SparseRows& sparse,
                              std::span<const double> dense, int d,
                              std::span<double> out);

}  // namespace ordsup::kernels

#endif  // ORDSUP_KERNELS_H_
