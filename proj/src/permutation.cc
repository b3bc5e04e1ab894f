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

#include "ordsup/permutation.h"

#include <algorithm>
#include <numeric>

namespace ordsup {

namespace {

void CheckSameLength(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw LengthMismatch("permutation lengths differ: " +
                         std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
  }
}

}  // namespace

Permutation Permutation::Validate(std::span<const int> mapping) {
  const std::size_t n = mapping.size();
  if (n < 2) {
    throw InvalidArgument("a permutation needs at least 2 entries, got " +
                          std::to_string(n));
  }
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = mapping[i];
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw NotABijection(i + 1, "value " + std::to_string(v) +
                                     " at position " + std::to_string(i + 1) +
                                     " is outside 1.." + std::to_string(n));
    }
    if (seen[v]) {
      throw NotABijection(i + 1, "value " + std::to_string(v) +
                                     " repeated at position " +
                                     std::to_string(i + 1));
    }
    seen[v] = true;
  }
  return Permutation(std::vector<int>(mapping.begin(), mapping.end()));
}

Permutation Permutation::Identity(int n) {
  if (n < 2) {
    throw InvalidArgument("a permutation needs at least 2 entries, got " +
                          std::to_string(n));
  }
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 1);
  return Permutation(std::move(m));
}

Permutation Permutation::Inverse() const {
  std::vector<int> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    inv[mapping_[i] - 1] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::Compose(const Permutation& other) const {
  CheckSameLength(*this, other);
  std::vector<int> out(mapping_.size());
  for (int i = 1; i <= size(); ++i) out[i - 1] = at(other.at(i));
  return Permutation(std::move(out));
}

std::string Permutation::ToString() const {
  std::string s = "(";
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(mapping_[i]);
  }
  return s + ")";
}

int HammingDistance(const Permutation& p, const Permutation& q) {
  CheckSameLength(p, q);
  int d = 0;
  for (int i = 1; i <= p.size(); ++i) d += p.at(i) != q.at(i);
  return d;
}

int KendallTauDistance(const Permutation& p, const Permutation& q) {
  CheckSameLength(p, q);
  int d = 0;
  for (int i = 1; i <= p.size(); ++i) {
    for (int j = i + 1; j <= p.size(); ++j) {
      d += (p.at(i) < p.at(j)) != (q.at(i) < q.at(j));
    }
  }
  return d;
}

int InversionCount(const Permutation& p) {
  int count = 0;
  for (int i = 1; i <= p.size(); ++i) {
    for (int j = i + 1; j <= p.size(); ++j) count += p.at(i) > p.at(j);
  }
  return count;
}

std::vector<int> LehmerEncode(const Permutation& p) {
  std::vector<int> code(p.size(), 0);
  for (int i = 1; i <= p.size(); ++i) {
    for (int j = 1; j < i; ++j) code[i - 1] += p.at(j) > p.at(i);
  }
  return code;
}

Permutation LehmerDecode(std::span<const int> code) {
  const int n = static_cast<int>(code.size());
  for (int i = 1; i <= n; ++i) {
    const int v = code[i - 1];
    if (v < 0 || v > i - 1) {
      throw InvalidLehmerCode("entry " + std::to_string(v) + " at position " +
                              std::to_string(i) + " is outside 0.." +
                              std::to_string(i - 1));
    }
  }
  // Walking right to left, p(i) has exactly code[i] larger values among the
  // values still unassigned to positions 1..i-1.
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::vector<int> mapping(n);
  for (int i = n; i >= 1; --i) {
    const int k = static_cast<int>(remaining.size()) - 1 - code[i - 1];
    mapping[i - 1] = remaining[k];
    remaining.erase(remaining.begin() + k);
  }
  return Permutation::Validate(mapping);
}

std::vector<int> HammingEncode(const Permutation& p) {
  const int n = p.size();
  std::vector<int> h(static_cast<std::size_t>(n) * n, 0);
  for (int i = 1; i <= n; ++i) h[(i - 1) * n + (p.at(i) - 1)] = 1;
  return h;
}

Permutation HammingDecode(std::span<const int> embedding) {
  const std::size_t len = embedding.size();
  int n = 0;
  while (static_cast<std::size_t>(n) * n < len) ++n;
  if (static_cast<std::size_t>(n) * n != len || n < 2) {
    throw InvalidHammingEmbedding("length " + std::to_string(len) +
                                  " is not a square of at least 4");
  }
  std::vector<int> mapping(n, 0);
  std::vector<bool> column_used(n, false);
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < n; ++j) {
      const int v = embedding[i * n + j];
      if (v != 0 && v != 1) {
        throw InvalidHammingEmbedding("entry " + std::to_string(v) +
                                      " in block " + std::to_string(i + 1) +
                                      " is not 0/1");
      }
      if (v == 1) {
        ++ones;
        mapping[i] = j + 1;
      }
    }
    if (ones != 1) {
      throw InvalidHammingEmbedding("block " + std::to_string(i + 1) +
                                    " has " + std::to_string(ones) +
                                    " ones");
    }
    if (column_used[mapping[i] - 1]) {
      throw InvalidHammingEmbedding("column " + std::to_string(mapping[i]) +
                                    " repeated in block " +
                                    std::to_string(i + 1));
    }
    column_used[mapping[i] - 1] = true;
  }
  return Permutation::Validate(mapping);
}

uint64_t Factorial(int n) {
  uint64_t f = 1;
  for (int k = 2; k <= n; ++k) {
    if (f > UINT64_MAX / static_cast<uint64_t>(k)) return UINT64_MAX;
    f *= static_cast<uint64_t>(k);
  }
  return f;
}

std::vector<Permutation> AllPermutations(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 1);
  std::vector<Permutation> all;
  all.reserve(Factorial(n));
  do {
    all.push_back(Permutation::Validate(m));
  } while (std::next_permutation(m.begin(), m.end()));
  return all;
}

}  // namespace ordsup
