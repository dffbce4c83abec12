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

#include "nnr/linalg.h"

#include <algorithm>

namespace nnr {

Mat4 direct_sum(const Mat2 &upper, const Mat2 &lower) {
  Mat4 out;
  for (std::size_t r = 0; r < 2; r++) {
    for (std::size_t c = 0; c < 2; c++) {
      out(r, c) = upper(r, c);
      out(r + 2, c + 2) = lower(r, c);
    }
  }
  return out;
}

Mat2 upper_block(const Mat4 &m) {
  Mat2 out;
  for (std::size_t r = 0; r < 2; r++) {
    for (std::size_t c = 0; c < 2; c++) {
      out(r, c) = m(r, c);
    }
  }
  return out;
}

Mat2 lower_block(const Mat4 &m) {
  Mat2 out;
  for (std::size_t r = 0; r < 2; r++) {
    for (std::size_t c = 0; c < 2; c++) {
      out(r, c) = m(r + 2, c + 2);
    }
  }
  return out;
}

double off_block_max(const Mat4 &m) {
  double best = 0.0;
  for (std::size_t r = 0; r < 4; r++) {
    for (std::size_t c = 0; c < 4; c++) {
      if ((r < 2) != (c < 2)) {
        best = std::max(best, std::abs(m(r, c)));
      }
    }
  }
  return best;
}

Mat2 outer(const Vec2 &ket) {
  Mat2 out;
  for (std::size_t r = 0; r < 2; r++) {
    for (std::size_t c = 0; c < 2; c++) {
      out(r, c) = ket[r] * std::conj(ket[c]);
    }
  }
  return out;
}

Complex inner(const Vec2 &bra, const Vec2 &ket) {
  return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
}

Vec2 apply(const Mat2 &m, const Vec2 &v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

Complex expectation(const Mat2 &m, const Vec2 &v) { return inner(v, apply(m, v)); }

Mat2 RealSym2::to_matrix() const {
  Mat2 m;
  m(0, 0) = 2.0 * a;
  m(0, 1) = b;
  m(1, 0) = b;
  m(1, 1) = 2.0 * c;
  return m;
}

double wrap_angle(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  // fmod can round a tiny negative input up to exactly 2pi.
  if (w >= kTwoPi) {
    w = 0.0;
  }
  return w;
}

SymEig2 symmetric_eig2(const RealSym2 &z) {
  SymEig2 out;
  double diff = z.a - z.c;
  out.epsilon = std::hypot(z.b, diff);
  out.half_trace = z.a + z.c;
  if (out.epsilon == 0.0) {
    out.rotation_angle = 0.0;
    return out;
  }
  out.rotation_angle = 0.5 * wrap_angle(std::atan2(z.b, diff));
  return out;
}

Mat2 reflection_diagonalizer(double alpha) {
  double c = std::cos(alpha);
  double s = std::sin(alpha);
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = s;
  u(1, 0) = s;
  u(1, 1) = -c;
  return u;
}

Mat2 rotation(double alpha) {
  double c = std::cos(alpha);
  double s = std::sin(alpha);
  Mat2 r;
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  return r;
}

PureState2 build_state(double alpha, double theta, double phi) {
  double ca = std::cos(alpha);
  double sa = std::sin(alpha);
  double ct = std::cos(0.5 * theta);
  double st = std::sin(0.5 * theta);
  Complex phase = std::polar(1.0, phi);
  PureState2 psi;
  psi.components[0] = ca * ct - phase * (sa * st);
  psi.components[1] = sa * ct + phase * (ca * st);
  return psi;
}

HermEig2 hermitian_eig2(const Mat2 &h) {
  double h00 = h(0, 0).real();
  double h11 = h(1, 1).real();
  // Average the two off-diagonal entries so slightly non-Hermitian input
  // (rounding) still yields a Hermitian decomposition.
  Complex h01 = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  double mean = 0.5 * (h00 + h11);
  double half_gap = std::hypot(0.5 * (h00 - h11), std::abs(h01));
  HermEig2 out;
  out.lower = mean - half_gap;
  out.upper = mean + half_gap;
  if (std::abs(h01) == 0.0) {
    out.top_vector = h00 >= h11 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    return out;
  }
  // Two algebraically equivalent eigenvector candidates; keep the one with
  // the larger norm to avoid cancellation.
  Vec2 first{h01, out.upper - h00};
  Vec2 second{out.upper - h11, std::conj(h01)};
  double n1 = std::sqrt(std::norm(first[0]) + std::norm(first[1]));
  double n2 = std::sqrt(std::norm(second[0]) + std::norm(second[1]));
  if (n1 >= n2) {
    out.top_vector = {first[0] / n1, first[1] / n1};
  } else {
    out.top_vector = {second[0] / n2, second[1] / n2};
  }
  return out;
}

}  // namespace nnr
