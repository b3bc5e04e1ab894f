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

#ifndef ORDSUP_SYNTHETIC_H_
#define ORDSUP_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ordsup/corpus.h"

namespace ordsup {

// Seeded toy recipes for smoke tests and learnability checks. Step k is a
// few random kitchen words plus the marker token "stepmark<k>", so the
// original order is recoverable from the text alone and every step in a
// recipe is distinct.
std::vector<Recipe> MakeSyntheticRecipes(int count, int n_steps,
                                         uint64_t seed);

std::string PositionMarker(int step);

}  // namespace ordsup

#endif  // ORDSUP_SYNTHETIC_H_
