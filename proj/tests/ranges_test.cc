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

#include "nnr/ranges.h"

#include "gtest/gtest.h"

#include "nnr/channels.h"
#include "nnr/errors.h"
#include "test_util.h"

using namespace nnr;

namespace {

Mat2 mat2(Complex m00, Complex m01, Complex m10, Complex m11) {
  Mat2 m;
  m(0, 0) = m00;
  m(0, 1) = m01;
  m(1, 0) = m10;
  m(1, 1) = m11;
  return m;
}

Mat4 diag4(double a, double b, double c, double d) {
  Mat4 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

RealSym2 sym_of(const Mat2 &m) { return RealSym2{0.5 * m(0, 0).real(), m(0, 1).real(), 0.5 * m(1, 1).real()}; }

template <typename F>
ErrorKind kind_thrown(F f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kParse;
}

}  // namespace

TEST(ranges, boundary_of_identity) {
  for (const RangeSample &s : numerical_range_boundary(Mat2::identity(), 16).points) {
    ASSERT_LE(std::abs(s.point - 1.0), 1e-15);
    ASSERT_FALSE(s.lambda.has_value());
  }
}

TEST(ranges, boundary_of_hermitian_lies_on_spectrum_segment) {
  for (const RangeSample &s : numerical_range_boundary(mat2(0, 0, 0, 1), 64).points) {
    ASSERT_LE(std::abs(s.point.imag()), 1e-15);
    ASSERT_GE(s.point.real(), -1e-15);
    ASSERT_LE(s.point.real(), 1.0 + 1e-15);
  }
}

TEST(ranges, boundary_of_nilpotent_is_unit_circle) {
  RangeSamples samples = numerical_range_boundary(mat2(0, 2, 0, 0), 256);
  ASSERT_EQ(samples.points.size(), 256u);
  for (const RangeSample &s : samples.points) {
    ASSERT_NEAR(std::abs(s.point), 1.0, 1e-12);
    ASSERT_NEAR(std::arg(s.point * std::polar(1.0, -s.phi)), 0.0, 1e-12);
  }
}

TEST(ranges, boundary_needs_three_points) {
  ASSERT_EQ(kind_thrown([] { numerical_range_boundary(Mat2::identity(), 2); }), ErrorKind::kDomain);
}

TEST(ranges, rank_k_examples) {
  RealInterval two = hermitian_rank_k_interval(diag4(3, 2, 1, 0), 2);
  ASSERT_EQ(two.lo, 1.0);
  ASSERT_EQ(two.hi, 2.0);
  ASSERT_TRUE(hermitian_rank_k_interval(diag4(3, 2, 1, 0), 3).empty());
  RealInterval one = hermitian_rank_k_interval(mat2(1, 0, 0, 0), 1);
  ASSERT_EQ(one.lo, 0.0);
  ASSERT_EQ(one.hi, 1.0);
}

TEST(ranges, rank_k_errors) {
  ASSERT_EQ(kind_thrown([] { hermitian_rank_k_interval(mat2(0, 1, 0, 0), 1); }), ErrorKind::kNotHermitian);
  ASSERT_EQ(kind_thrown([] { hermitian_rank_k_interval(diag4(1, 1, 1, 1), 0); }), ErrorKind::kDomain);
  ASSERT_EQ(kind_thrown([] { hermitian_rank_k_interval(diag4(1, 1, 1, 1), 5); }), ErrorKind::kDomain);
}

TEST(ranges, zero_z_is_full_range) {
  std::mt19937_64 rng(31);
  Mat2 a = fixtures::random_mat2(rng);
  NuclearCurve c = nuclear_curve(a, RealSym2{}, 0.0);
  ASSERT_EQ(c.kind, CurveKind::kFullRange);
  ASSERT_EQ(nuclear_curve(a, RealSym2{}, 0.1).kind, CurveKind::kEmpty);
  ASSERT_EQ(kind_thrown([&] { curve_point(c, 0.0); }), ErrorKind::kInvalidKind);

  // The samples of a full range are the boundary of W(A), tagged with lambda.
  RangeSamples samples = sample_curve(c, 32);
  RangeSamples boundary = numerical_range_boundary(a, 32);
  ASSERT_EQ(samples.points.size(), 32u);
  for (std::size_t k = 0; k < 32; k++) {
    ASSERT_EQ(samples.points[k].point, boundary.points[k].point);
    ASSERT_EQ(samples.points[k].lambda, 0.0);
  }
}

TEST(ranges, lambda_outside_spectrum_is_empty) {
  NuclearCurve c = nuclear_curve(Mat2::identity(), RealSym2{1.0, 0.0, 0.0}, 2.5);
  ASSERT_EQ(c.kind, CurveKind::kEmpty);
  ASSERT_TRUE(sample_curve(c, 16).points.empty());
}

TEST(ranges, amplitude_damping_sides) {
  double p1 = 0.5;
  double p2 = 0.7;
  double lambda = 1.0 - p2 * (1.0 - p1) / (2.0 - p1 - p2 + p1 * p2);
  BlockOperators b = derive_blocks(build_ad(ADParams{p1, p2}));

  NuclearCurve e = nuclear_curve(b.e12, sym_of(b.e11), lambda);
  ASSERT_EQ(e.kind, CurveKind::kPoint);
  ASSERT_NEAR(e.center.real(), (1.0 - lambda) * std::sqrt(1.0 / p2 - 1.0), 1e-12);
  ASSERT_NEAR(e.center.imag(), 0.0, 1e-15);
  ASSERT_NEAR(std::cos(e.theta), (p1 - p2 + p1 * p2) / (2.0 - p1 - p2 + p1 * p2), 1e-12);
  ASSERT_NEAR(std::cos(e.theta), 0.1304347826, 1e-9);
  for (double phi : {0.0, 1.0, 3.0}) {
    ASSERT_EQ(curve_point(e, phi), e.center);
  }
  ASSERT_EQ(angles_from_point(e, e.center).phi, 0.0);

  NuclearCurve f = nuclear_curve(b.f12, sym_of(b.f11), lambda);
  ASSERT_EQ(f.kind, CurveKind::kCircle);
  ASSERT_LE(std::abs(f.center), 1e-15);
  double radius = std::sqrt((1.0 - lambda) * (lambda + p2 - p1 * p2 - 1.0)) / std::sqrt(p2 * (1.0 - p1));
  for (double phi : {0.0, 0.7, 2.0, 5.0}) {
    ASSERT_NEAR(std::abs(curve_point(f, phi) - f.center), radius, 1e-12);
  }
  ASSERT_LE(std::abs(curve_point(f, 0.0) + curve_point(f, kPi)), 1e-12);

  CurveAngles af = angles_from_point(f, e.center);
  ASSERT_NEAR(std::cos(af.theta), -0.7391304348, 1e-9);
  ASSERT_NEAR(af.phi, 0.0, 1e-7);
}

TEST(ranges, unit_circle_conic) {
  NuclearCurve c;
  c.kind = CurveKind::kCircle;
  c.q = 1.0;
  c.r = Complex(0.0, 1.0);
  c.p_of_lambda = 1.0;
  ConicImplicit conic = conic_implicit(c);
  ASSERT_EQ(conic.alpha, 1.0L);
  ASSERT_EQ(conic.beta, 1.0L);
  ASSERT_EQ(conic.gamma, 0.0L);
  ASSERT_EQ(conic.discriminant(), -4.0);
}

TEST(ranges, degenerate_kinds) {
  // Symmetric A gives r = 0, so the curve is flat.
  NuclearCurve segment = nuclear_curve(mat2(1, 2, 2, 0), RealSym2{0.5, 0.0, 0.0}, 0.5);
  ASSERT_EQ(segment.kind, CurveKind::kSegment);
  ASSERT_EQ(kind_thrown([&] { conic_implicit(segment); }), ErrorKind::kDegenerateConic);
  for (double phi : {0.1, 1.3, 2.9, 4.4}) {
    Complex z = curve_point(segment, phi);
    ASSERT_LE(std::abs(curve_point(segment, angles_from_point(segment, z).phi) - z), 1e-12);
  }
  ASSERT_EQ(kind_thrown([&] { angles_from_point(segment, segment.center + 10.0); }), ErrorKind::kOffCurve);

  // Spectral endpoint: p(lambda) = 0.
  NuclearCurve endpoint = nuclear_curve(mat2(1, 2, 3, 4), RealSym2{0.5, 0.0, 0.0}, 1.0);
  ASSERT_EQ(endpoint.kind, CurveKind::kPoint);
  ASSERT_EQ(kind_thrown([&] { conic_implicit(endpoint); }), ErrorKind::kDegenerateConic);
}

TEST(ranges, angles_reject_off_curve_points) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; i++) {
    Mat2 a = fixtures::random_mat2(rng);
    RealSym2 z = fixtures::random_sym(rng);
    NuclearCurve c = nuclear_curve(a, z, fixtures::random_admissible_lambda(rng, z));
    if (c.kind != CurveKind::kEllipse) {
      continue;
    }
    ASSERT_THROW(angles_from_point(c, c.center), Error);
    Complex outside = c.center + 1.5 * (curve_point(c, 0.3) - c.center);
    ASSERT_EQ(kind_thrown([&] { angles_from_point(c, outside); }), ErrorKind::kOffCurve);
  }
}

TEST(ranges, angles_round_trip) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 1000; i++) {
    Mat2 a = fixtures::random_mat2(rng);
    RealSym2 z = fixtures::random_sym(rng);
    NuclearCurve c = nuclear_curve(a, z, fixtures::random_admissible_lambda(rng, z));
    double phi = uniform(rng, 0.0, kTwoPi);
    Complex point = curve_point(c, phi);
    CurveAngles angles = angles_from_point(c, point);
    ASSERT_GE(angles.phi, 0.0);
    ASSERT_LT(angles.phi, kTwoPi);
    ASSERT_LE(std::abs(curve_point(c, angles.phi) - point), 1e-8) << i;
    ASSERT_EQ(angles.theta, c.theta);
  }
}

TEST(ranges, sample_curve_reproducible_from_parameters) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 200; i++) {
    Mat2 a = fixtures::random_mat2(rng);
    RealSym2 z = fixtures::random_sym(rng);
    NuclearCurve c = nuclear_curve(a, z, fixtures::random_admissible_lambda(rng, z));
    for (const RangeSample &s : sample_curve(c, 64).points) {
      ASSERT_EQ(s.lambda, c.lambda);
      ASSERT_LE(std::abs(curve_point(c, s.phi) - s.point), 1e-10);
    }
  }
}

TEST(ranges, distance_to_curve_of_known_points) {
  NuclearCurve c = nuclear_curve(mat2(0, 2, 0, 0), RealSym2{0.5, 0.0, -0.5}, 0.0);
  ASSERT_EQ(c.kind, CurveKind::kCircle);
  double radius = std::abs(curve_point(c, 0.0) - c.center);
  ASSERT_LE(distance_to_curve(c, curve_point(c, 1.234)), 1e-12);
  ASSERT_NEAR(distance_to_curve(c, c.center), radius, 1e-12);
  ASSERT_NEAR(distance_to_curve(c, c.center + 3.0 * radius), 2.0 * radius, 1e-12);
}
