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

#ifndef NNR_ORACLE_H
#define NNR_ORACLE_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnr/linalg.h"
#include "nnr/ranges.h"

namespace nnr {

struct RngSeed {
  std::uint64_t seed = 0;
};

struct KernelState {
  PureState2 psi;
  Complex exp_z;
};

/// Pure states with |<psi|Z|psi>| <= constraint_tol, in canonical order
/// (lexicographic on the four real components of psi).
struct StateCloud {
  std::vector<KernelState> states;
  double constraint_tol = 1e-8;
  std::uint64_t seed = 0;
};

/// Draws n Haar-random pure states, moves each toward <Z> = 0 with at most
/// 200 Gauss-Newton steps on the Bloch sphere and keeps those that reach tol.
/// Z may be any complex 2x2 matrix. The cloud may be empty.
StateCloud sample_kernel_states(const Mat2 &z, std::size_t n, double tol, RngSeed seed);

/// The <A> values of the cloud. Throws Error(kEmptyCloud).
RangeSamples cloud_range(const Mat2 &a, const StateCloud &cloud);

/// Largest distance from a cloud value of W(A | Z - lambda I) to the
/// closed-form curve. For a FullRange curve the distance is the largest
/// excursion outside W(A) over 64 support directions. Propagates
/// Error(kEmptyCloud).
double cross_check_curve(const Mat2 &a, const RealSym2 &z, double lambda, std::size_t cloud_size, RngSeed seed,
                         double tol = 1e-8);

}  // namespace nnr

#endif  // NNR_ORACLE_H
