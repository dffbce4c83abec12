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

#include "nnr/channels.h"

#include <cmath>
#include <sstream>
#include <string>

#include "nnr/errors.h"
#include "nnr/random.h"

namespace nnr {

namespace {

constexpr double kBlockLeakTol = 1e-12;
constexpr double kRawTraceTol = 1e-10;

void require_radicand(double value, const char *name) {
  if (!(value >= 0.0)) {
    std::ostringstream msg;
    msg << name << " radicand is negative (" << value << ")";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

void require_denominator(double value, const char *name) {
  if (value == 0.0 || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "denominator " << name << " vanishes";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

Mat2 mat2(double m00, double m01, double m10, double m11) {
  Mat2 m;
  m(0, 0) = m00;
  m(0, 1) = m01;
  m(1, 0) = m10;
  m(1, 1) = m11;
  return m;
}

}  // namespace

GeneralParams make_general_params(const std::array<double, 10> &a) {
  for (std::size_t i = 0; i < a.size(); i++) {
    if (!(a[i] > 0.0 && a[i] < 1.0)) {
      std::ostringstream msg;
      msg << "a" << (i + 1) << " = " << a[i] << " is outside (0, 1)";
      throw Error(ErrorKind::kDomain, msg.str());
    }
  }
  // 1-based aliases keep the constraint algebra readable.
  auto x = [&](int i) { return a[static_cast<std::size_t>(i - 1)]; };

  double b1_radicand = 1.0 - x(1) * x(1) - x(3) * x(3) - x(9) * x(9);
  double b4_radicand = 1.0 - x(5) * x(5) - x(7) * x(7) - x(10) * x(10);
  double c1_radicand = (x(4) * x(4) - 1.0) * x(1) * x(1) - 2.0 * x(1) * x(2) * x(3) * x(4) - x(4) * x(4) +
                       (x(2) * x(2) - 1.0) * (x(3) * x(3) - 1.0);
  double c2_radicand = (x(8) * x(8) - 1.0) * x(5) * x(5) - 2.0 * x(5) * x(6) * x(7) * x(8) - x(8) * x(8) +
                       (x(6) * x(6) - 1.0) * (x(7) * x(7) - 1.0);
  double upper_den = x(1) * x(1) + x(3) * x(3) - 1.0;
  double lower_den = x(5) * x(5) + x(7) * x(7) - 1.0;
  require_radicand(b1_radicand, "b1");
  require_radicand(b4_radicand, "b4");
  require_radicand(c1_radicand, "c1");
  require_radicand(c2_radicand, "c2");
  require_denominator(upper_den, "a1^2 + a3^2 - 1");
  require_denominator(lower_den, "a5^2 + a7^2 - 1");

  GeneralParams out;
  out.a = a;
  out.c1 = std::sqrt(c1_radicand);
  out.c2 = std::sqrt(c2_radicand);
  double b1 = std::sqrt(b1_radicand);
  double b4 = std::sqrt(b4_radicand);
  double e2 = x(1) * x(2) + x(3) * x(4);
  double f2 = x(5) * x(6) + x(7) * x(8);
  out.b[0] = b1;
  out.b[1] = (e2 * b1 - out.c1 * x(9)) / upper_den;
  out.b[2] = (e2 * x(9) + out.c1 * b1) / upper_den;
  out.b[3] = b4;
  out.b[4] = (f2 * b4 - out.c2 * x(10)) / lower_den;
  out.b[5] = (f2 * x(10) + out.c2 * b4) / lower_den;
  return out;
}

KrausPair build_ad(const ADParams &params) {
  if (!(params.p1 >= 0.0 && params.p1 <= 1.0) || !(params.p2 >= 0.0 && params.p2 <= 1.0)) {
    std::ostringstream msg;
    msg << "damping probabilities must lie in [0, 1], got p1 = " << params.p1 << ", p2 = " << params.p2;
    throw Error(ErrorKind::kDomain, msg.str());
  }
  double p1 = params.p1;
  double p2 = params.p2;
  KrausPair k;
  k.a1(0, 1) = std::sqrt(1.0 - p2);
  k.a1(1, 0) = 1.0;
  k.a1(2, 2) = 1.0;
  k.a1(3, 3) = std::sqrt(1.0 - p2 * (1.0 - p1));
  k.a2(0, 1) = std::sqrt(p2);
  k.a2(2, 3) = std::sqrt(p2 * (1.0 - p1));
  return k;
}

KrausPair build_general(const GeneralParams &params) {
  // Re-derive so that hand-filled parameter structs are validated too.
  GeneralParams p = make_general_params(params.a);
  const auto &a = p.a;
  const auto &b = p.b;
  KrausPair k;
  k.a1 = direct_sum(mat2(a[0], a[1], a[2], a[3]), mat2(a[4], a[5], a[6], a[7]));
  k.a2 = direct_sum(mat2(b[0], b[1], a[8], b[2]), mat2(b[3], b[4], a[9], b[5]));
  return k;
}

void require_block_diagonal(const KrausPair &pair) {
  if (off_block_max(pair.a1) != 0.0 || off_block_max(pair.a2) != 0.0) {
    throw Error(ErrorKind::kStructure, "Kraus operators must be block diagonal with 2x2 blocks");
  }
}

KrausPair build_channel(const Channel &channel) {
  if (const auto *ad = std::get_if<ADParams>(&channel)) {
    return build_ad(*ad);
  }
  if (const auto *general = std::get_if<GeneralParams>(&channel)) {
    return build_general(*general);
  }
  const auto &raw = std::get<KrausPair>(channel);
  if (!is_finite(raw.a1) || !is_finite(raw.a2)) {
    throw Error(ErrorKind::kDomain, "Kraus operators contain non-finite entries");
  }
  require_block_diagonal(raw);
  double residual = check_trace_preserving(raw).adjoint_first;
  if (residual > kRawTraceTol) {
    std::ostringstream msg;
    msg << "channel is not trace preserving (residual " << residual << ")";
    throw Error(ErrorKind::kDomain, msg.str());
  }
  return raw;
}

BlockOperators derive_blocks(const KrausPair &pair) {
  BlockOperators out;
  out.t11 = adjoint(pair.a1) * pair.a1;
  out.t12 = adjoint(pair.a1) * pair.a2;
  double leak = std::max(off_block_max(out.t11), off_block_max(out.t12));
  if (leak > kBlockLeakTol) {
    std::ostringstream msg;
    msg << "T_ij products leak " << leak << " outside the diagonal blocks";
    throw Error(ErrorKind::kStructure, msg.str());
  }
  out.t21 = adjoint(out.t12);
  out.t22 = Mat4::identity() - out.t11;
  out.e11 = upper_block(out.t11);
  out.f11 = lower_block(out.t11);
  out.e12 = upper_block(out.t12);
  out.f12 = lower_block(out.t12);
  return out;
}

TraceResiduals check_trace_preserving(const KrausPair &pair) {
  TraceResiduals out;
  Mat4 id = Mat4::identity();
  out.adjoint_first = frobenius_norm(adjoint(pair.a1) * pair.a1 + adjoint(pair.a2) * pair.a2 - id);
  out.adjoint_last = frobenius_norm(pair.a1 * adjoint(pair.a1) + pair.a2 * adjoint(pair.a2) - id);
  return out;
}

GeneralParams sample_general_params(std::mt19937_64 &rng) {
  while (true) {
    std::array<double, 10> a{};
    for (double &v : a) {
      v = uniform01(rng);
    }
    try {
      return make_general_params(a);
    } catch (const Error &) {
    }
  }
}

}  // namespace nnr
