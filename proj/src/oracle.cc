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

#include "nnr/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "nnr/errors.h"
#include "nnr/random.h"

namespace nnr {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxHalvings = 40;

using Vec3 = std::array<double, 3>;

double dot(const Vec3 &x, const Vec3 &y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 normalized(const Vec3 &v) {
  double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

// <Z> in the state with Bloch vector v is the affine map offset + v . slope.
struct AffineExpectation {
  Complex offset;
  std::array<Complex, 3> slope;

  explicit AffineExpectation(const Mat2 &z) {
    offset = 0.5 * (z(0, 0) + z(1, 1));
    slope[0] = 0.5 * (z(0, 1) + z(1, 0));
    slope[1] = 0.5 * Complex(0.0, 1.0) * (z(0, 1) - z(1, 0));
    slope[2] = 0.5 * (z(0, 0) - z(1, 1));
  }

  Complex operator()(const Vec3 &v) const { return offset + v[0] * slope[0] + v[1] * slope[1] + v[2] * slope[2]; }
};

// Minimum-norm Gauss-Newton step for the two real residuals, restricted to
// the tangent plane of the sphere at v.
Vec3 tangent_step(const AffineExpectation &f, const Vec3 &v, Complex residual) {
  std::array<Vec3, 2> rows;
  for (int k = 0; k < 2; k++) {
    Vec3 g;
    for (int i = 0; i < 3; i++) {
      g[i] = k == 0 ? f.slope[i].real() : f.slope[i].imag();
    }
    double along = dot(g, v);
    for (int i = 0; i < 3; i++) {
      g[i] -= along * v[i];
    }
    rows[k] = g;
  }
  // Pseudo-inverse of the 2x2 Gram matrix through its eigen-decomposition.
  double m00 = dot(rows[0], rows[0]);
  double m01 = dot(rows[0], rows[1]);
  double m11 = dot(rows[1], rows[1]);
  double mean = 0.5 * (m00 + m11);
  double gap = std::hypot(0.5 * (m00 - m11), m01);
  double cutoff = 1e-14 * (m00 + m11);
  std::array<double, 2> eigval{mean + gap, mean - gap};
  std::array<std::array<double, 2>, 2> eigvec;
  if (gap == 0.0) {
    eigvec = {{{1.0, 0.0}, {0.0, 1.0}}};
  } else {
    double angle = 0.5 * std::atan2(2.0 * m01, m00 - m11);
    eigvec = {{{std::cos(angle), std::sin(angle)}, {-std::sin(angle), std::cos(angle)}}};
  }
  std::array<double, 2> rhs{residual.real(), residual.imag()};
  std::array<double, 2> coef{0.0, 0.0};
  for (int k = 0; k < 2; k++) {
    if (eigval[k] <= cutoff) {
      continue;
    }
    double proj = (eigvec[k][0] * rhs[0] + eigvec[k][1] * rhs[1]) / eigval[k];
    coef[0] += proj * eigvec[k][0];
    coef[1] += proj * eigvec[k][1];
  }
  Vec3 step;
  for (int i = 0; i < 3; i++) {
    step[i] = -(coef[0] * rows[0][i] + coef[1] * rows[1][i]);
  }
  return step;
}

Vec3 refine(const AffineExpectation &f, Vec3 v, double tol) {
  double value = std::abs(f(v));
  for (int it = 0; it < kMaxIterations && value > 0.1 * tol; it++) {
    Vec3 step = tangent_step(f, v, f(v));
    bool improved = false;
    double scale = 1.0;
    for (int h = 0; h < kMaxHalvings; h++, scale *= 0.5) {
      Vec3 trial = normalized({v[0] + scale * step[0], v[1] + scale * step[1], v[2] + scale * step[2]});
      double trial_value = std::abs(f(trial));
      if (trial_value < value) {
        v = trial;
        value = trial_value;
        improved = true;
        break;
      }
    }
    if (!improved) {
      break;
    }
  }
  return v;
}

PureState2 state_from_bloch(const Vec3 &v, double global_phase) {
  double theta = std::acos(std::clamp(v[2], -1.0, 1.0));
  double phi = std::atan2(v[1], v[0]);
  Complex g = std::polar(1.0, global_phase);
  PureState2 psi;
  psi.components[0] = g * std::cos(0.5 * theta);
  psi.components[1] = g * std::polar(std::sin(0.5 * theta), phi);
  return psi;
}

auto sort_key(const KernelState &s) {
  const Vec2 &c = s.psi.components;
  return std::make_tuple(c[0].real(), c[0].imag(), c[1].real(), c[1].imag());
}

}  // namespace

StateCloud sample_kernel_states(const Mat2 &z, std::size_t n, double tol, RngSeed seed) {
  if (n == 0) {
    throw Error(ErrorKind::kDomain, "cloud size must be at least 1");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kDomain, "kernel tolerance must be positive");
  }
  std::mt19937_64 rng(seed.seed);
  AffineExpectation f(z);
  StateCloud cloud;
  cloud.constraint_tol = tol;
  cloud.seed = seed.seed;
  for (std::size_t i = 0; i < n; i++) {
    double cos_polar = uniform(rng, -1.0, 1.0);
    double azimuth = uniform(rng, 0.0, kTwoPi);
    double global_phase = uniform(rng, 0.0, kTwoPi);
    double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
    Vec3 v{sin_polar * std::cos(azimuth), sin_polar * std::sin(azimuth), cos_polar};
    v = refine(f, v, tol);
    PureState2 psi = state_from_bloch(v, global_phase);
    Complex exp_z = expectation(z, psi.components);
    if (std::abs(exp_z) <= tol) {
      cloud.states.push_back(KernelState{psi, exp_z});
    }
  }
  std::sort(cloud.states.begin(), cloud.states.end(),
            [](const KernelState &x, const KernelState &y) { return sort_key(x) < sort_key(y); });
  return cloud;
}

RangeSamples cloud_range(const Mat2 &a, const StateCloud &cloud) {
  if (cloud.states.empty()) {
    throw Error(ErrorKind::kEmptyCloud, "no sampled state satisfies the kernel constraint");
  }
  RangeSamples out;
  out.points.reserve(cloud.states.size());
  for (const KernelState &s : cloud.states) {
    out.points.push_back(RangeSample{expectation(a, s.psi.components), 0.0, std::nullopt});
  }
  return out;
}

double cross_check_curve(const Mat2 &a, const RealSym2 &z, double lambda, std::size_t cloud_size, RngSeed seed,
                         double tol) {
  Mat2 shifted = z.to_matrix() - Complex(lambda) * Mat2::identity();
  RangeSamples values = cloud_range(a, sample_kernel_states(shifted, cloud_size, tol, seed));
  NuclearCurve curve = nuclear_curve(a, z, lambda);
  double worst = 0.0;
  if (curve.kind == CurveKind::kFullRange) {
    constexpr int kDirections = 64;
    for (const RangeSample &s : values.points) {
      for (int k = 0; k < kDirections; k++) {
        double angle = kTwoPi * k / kDirections;
        double excess = (std::polar(1.0, -angle) * s.point).real() - support_value(a, angle);
        worst = std::max(worst, excess);
      }
    }
    return worst;
  }
  if (curve.kind == CurveKind::kEmpty) {
    // The closed form says no state qualifies, yet the sampler found some.
    return std::numeric_limits<double>::infinity();
  }
  for (const RangeSample &s : values.points) {
    worst = std::max(worst, distance_to_curve(curve, s.point));
  }
  return worst;
}

}  // namespace nnr
