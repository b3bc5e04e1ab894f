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

#include "ordsup/kernels.h"

#include <algorithm>
#include <climits>

namespace ordsup::kernels {

namespace {

inline int RowDistance(const uint8_t* a, const uint8_t* b, int n) {
  int d = 0;
  for (int k = 0; k < n; ++k) d += a[k] != b[k];
  return d;
}

// Strict total order on (min desc, sum desc, index asc).
inline bool Better(const Selection& a, const Selection& b) {
  if (b.index < 0) return a.index >= 0;
  if (a.index < 0) return false;
  if (a.min_dist != b.min_dist) return a.min_dist > b.min_dist;
  if (a.sum_dist != b.sum_dist) return a.sum_dist > b.sum_dist;
  return a.index < b.index;
}

}  // namespace

void UpdateDistancesSerial(std::span<const uint8_t> candidates, int n,
                           std::span<const uint8_t> member,
                           std::span<int> min_dist,
                           std::span<int64_t> sum_dist) {
  const std::size_t count = min_dist.size();
  for (std::size_t c = 0; c < count; ++c) {
    const int d = RowDistance(candidates.data() + c * n, member.data(), n);
    min_dist[c] = std::min(min_dist[c], d);
    sum_dist[c] += d;
  }
}

void UpdateDistancesParallel(std::span<const uint8_t> candidates, int n,
                             std::span<const uint8_t> member,
                             std::span<int> min_dist,
                             std::span<int64_t> sum_dist) {
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(min_dist.size());
  const uint8_t* base = candidates.data();
  const uint8_t* m = member.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const int d = RowDistance(base + c * n, m, n);
    min_dist[c] = std::min(min_dist[c], d);
    sum_dist[c] += d;
  }
}

Selection SelectBestSerial(std::span<const int> min_dist,
                           std::span<const int64_t> sum_dist,
                           std::span<const uint8_t> eligible) {
  Selection best;
  for (std::size_t c = 0; c < min_dist.size(); ++c) {
    if (!eligible[c]) continue;
    Selection s{static_cast<std::ptrdiff_t>(c), min_dist[c], sum_dist[c]};
    if (Better(s, best)) best = s;
  }
  return best;
}

Selection SelectBestParallel(std::span<const int> min_dist,
                             std::span<const int64_t> sum_dist,
                             std::span<const uint8_t> eligible) {
  Selection best;
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(min_dist.size());
#pragma omp parallel
  {
    Selection local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t c = 0; c < count; ++c) {
      if (!eligible[c]) continue;
      Selection s{c, min_dist[c], sum_dist[c]};
      if (Better(s, local)) local = s;
    }
#pragma omp critical(ordsup_select_best)
    {
      if (Better(local, best)) best = local;
    }
  }
  return best;
}

int MinPairwiseHammingSerial(std::span<const uint8_t> rows, int n) {
  const std::size_t count = n > 0 ? rows.size() / n : 0;
  if (count < 2) return 0;
  int best = INT_MAX;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      best = std::min(best,
                      RowDistance(rows.data() + a * n, rows.data() + b * n, n));
    }
  }
  return best;
}

int MinPairwiseHammingParallel(std::span<const uint8_t> rows, int n) {
  const std::ptrdiff_t count =
      n > 0 ? static_cast<std::ptrdiff_t>(rows.size() / n) : 0;
  if (count < 2) return 0;
  int best = INT_MAX;
  const uint8_t* base = rows.data();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
  for (std::ptrdiff_t a = 0; a < count; ++a) {
    for (std::ptrdiff_t b = a + 1; b < count; ++b) {
      best = std::min(best, RowDistance(base + a * n, base + b * n, n));
    }
  }
  return best;
}

void SparseTimesDenseSerial(const SparseRows& sparse,
                            std::span<const double> dense, int d,
                            std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < sparse.rows(); ++r) {
    double* dst = out.data() + r * d;
    for (std::size_t k = sparse.offsets[r]; k < sparse.offsets[r + 1]; ++k) {
      const double w = sparse.weights[k];
      const double* src =
          dense.data() + static_cast<std::size_t>(sparse.columns[k]) * d;
      for (int j = 0; j < d; ++j) dst[j] += w * src[j];
    }
  }
}

void SparseTimesDenseParallel(const SparseRows& sparse,
                              std::span<const double> dense, int d,
                              std::span<double> out) {
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(sparse.rows());
  // Each row accumulates in the same order as the serial kernel, so the
  // results are bitwise identical.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    double* dst = out.data() + r * d;
    std::fill(dst, dst + d, 0.0);
    for (std::size_t k = sparse.offsets[r]; k < sparse.offsets[r + 1]; ++k) {
      const double w = sparse.weights[k];
      const double* src =
          dense.data() + static_cast<std::size_t>(sparse.columns[k]) * d;
      for (int j = 0; j < d; ++j) dst[j] += w * src[j];
    }
  }
}

}  // namespace ordsup::kernels
