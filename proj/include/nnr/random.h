// Copyright 2026 The nnr Authors
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

#ifndef NNR_RANDOM_H
#define NNR_RANDOM_H

#include <cstdint>
#include <random>

namespace nnr {

/// Name recorded alongside seeds so sampled outputs can be regenerated.
inline constexpr const char *kGeneratorName = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64 &rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace nnr

#endif  // NNR_RANDOM_H
