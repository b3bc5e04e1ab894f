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

// Permutations of recipe steps and the codecs used as regression targets.
//
// A Permutation of N steps is stored 1-indexed: mapping()[i - 1] == p(i),
// the original step placed at position i after shuffling. Every public way
// of obtaining a Permutation checks bijectivity, so a live object always
// satisfies it.

#ifndef ORDSUP_PERMUTATION_H_
#define ORDSUP_PERMUTATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordsup/errors.h"

namespace ordsup {

class Permutation {
 public:
  // Throws NotABijection on a duplicate or out-of-range value, and
  // InvalidArgument when fewer than two entries are given.
  static Permutation Validate(std::span<const int> mapping);
  static Permutation Validate(std::initializer_list<int> mapping) {
    return Validate(std::span<const int>(mapping.begin(), mapping.size()));
  }
  static Permutation Identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  // 1-indexed access: at(i) == p(i) for 1 <= i <= N.
  int at(int i) const { return mapping_[i - 1]; }
  const std::vector<int>& mapping() const { return mapping_; }

  Permutation Inverse() const;
  // (this ∘ other)(i) == this->at(other.at(i)).
  Permutation Compose(const Permutation& other) const;

  std::string ToString() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> mapping)
      : mapping_(std::move(mapping)) {}
  std::vector<int> mapping_;
};

// Number of positions where p and q disagree.
int HammingDistance(const Permutation& p, const Permutation& q);

// Number of position pairs (i < j) ordered differently by p and q.
int KendallTauDistance(const Permutation& p, const Permutation& q);

// Number of pairs i < j with p(i) > p(j).
int InversionCount(const Permutation& p);

// values[i] = #{j < i : p(j) > p(i)}.
std::vector<int> LehmerEncode(const Permutation& p);
// Throws InvalidLehmerCode when an entry falls outside [0, i - 1].
Permutation LehmerDecode(std::span<const int> code);

// Flattened permutation matrix: block i (length N) is the one-hot of p(i).
std::vector<int> HammingEncode(const Permutation& p);
// Throws InvalidHammingEmbedding on a malformed block or repeated column.
Permutation HammingDecode(std::span<const int> embedding);

// out[i] = steps[p(i)], 1-indexed. Throws LengthMismatch.
template <typename T>
std::vector<T> ApplyPermutation(std::span<const T> steps,
                                const Permutation& p) {
  if (steps.size() != static_cast<std::size_t>(p.size())) {
    throw LengthMismatch("cannot apply a permutation of " +
                         std::to_string(p.size()) + " steps to " +
                         std::to_string(steps.size()) + " items");
  }
  std::vector<T> out;
  out.reserve(steps.size());
  for (int i = 1; i <= p.size(); ++i) out.push_back(steps[p.at(i) - 1]);
  return out;
}

template <typename T>
std::vector<T> ApplyPermutation(const std::vector<T>& steps,
                                const Permutation& p) {
  return ApplyPermutation(std::span<const T>(steps), p);
}

// n! as an unsigned integer, saturating at UINT64_MAX.
uint64_t Factorial(int n);

// All permutations of n in lexicographic order.
std::vector<Permutation> AllPermutations(int n);

}  // namespace ordsup

#endif  // ORDSUP_PERMUTATION_H_
