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

#ifndef NNR_CHANNELS_H
#define NNR_CHANNELS_H

#include <array>
#include <cstdint>
#include <random>
#include <variant>

#include "nnr/linalg.h"

namespace nnr {

/// Two-operator noise channel on two qubits. Both operators are block
/// diagonal with 2x2 blocks.
struct KrausPair {
  Mat4 a1;
  Mat4 a2;

  friend bool operator==(const KrausPair &, const KrausPair &) = default;
};

/// The products T_ij = A_i^dagger A_j and their diagonal blocks:
/// t11 = e11 (+) f11, t12 = e12 (+) f12.
struct BlockOperators {
  Mat4 t11;
  Mat4 t12;
  Mat4 t21;
  Mat4 t22;
  Mat2 e11;
  Mat2 e12;
  Mat2 f11;
  Mat2 f12;
};

/// Amplitude damping with probability p1 on the first qubit and p2 on the
/// second, reduced to two Kraus operators.
struct ADParams {
  double p1 = 0.0;
  double p2 = 0.0;

  friend bool operator==(const ADParams &, const ADParams &) = default;
};

/// The ten free entries of the general block-diagonal pair. The dependent
/// entries b1..b6 and the helper roots c1, c2 are filled in by
/// make_general_params().
struct GeneralParams {
  std::array<double, 10> a{};
  std::array<double, 6> b{};
  double c1 = 0.0;
  double c2 = 0.0;

  friend bool operator==(const GeneralParams &lhs, const GeneralParams &rhs) { return lhs.a == rhs.a; }
};

using Channel = std::variant<ADParams, GeneralParams, KrausPair>;

/// Validates the free entries and solves the trace-preserving constraints for
/// b1..b6. Throws Error(kDomain) naming the first violated constraint.
GeneralParams make_general_params(const std::array<double, 10> &a);

KrausPair build_ad(const ADParams &params);
KrausPair build_general(const GeneralParams &params);
KrausPair build_channel(const Channel &channel);

/// Off-block entries must be exactly zero; anything else throws
/// Error(kStructure).
void require_block_diagonal(const KrausPair &pair);

/// T_ij from direct products of the stored Kraus matrices. Throws
/// Error(kStructure) if a product leaks more than 1e-12 outside the blocks.
BlockOperators derive_blocks(const KrausPair &pair);

struct TraceResiduals {
  /// || A1^dagger A1 + A2^dagger A2 - I ||_F
  double adjoint_first = 0.0;
  /// || A1 A1^dagger + A2 A2^dagger - I ||_F
  double adjoint_last = 0.0;
};

TraceResiduals check_trace_preserving(const KrausPair &pair);

/// Draws GeneralParams uniformly from (0, 1)^10 until one satisfies every
/// constraint. Meant for tests and property checks.
GeneralParams sample_general_params(std::mt19937_64 &rng);

}  // namespace nnr

#endif  // NNR_CHANNELS_H
