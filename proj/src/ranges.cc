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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nnr/errors.h"

namespace nnr {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kCosineSlack = 1e-9;

bool is_circle(const NuclearCurve &c) {
  double qq = std::norm(c.q);
  double rr = std::norm(c.r);
  double scale = qq + rr;
  double dot = c.q1() * c.r1() + c.q2() * c.r2();
  return std::abs(qq - rr) <= kDegenerateTol * scale && std::abs(dot) <= kDegenerateTol * scale;
}

void require_drawable(const NuclearCurve &curve) {
  if (curve.kind == CurveKind::kEmpty || curve.kind == CurveKind::kFullRange) {
    std::ostringstream msg;
    msg << "operation needs a traced curve, got kind " << curve_kind_name(curve.kind);
    throw Error(ErrorKind::kInvalidKind, msg.str());
  }
}

void require_hermitian(double defect) {
  if (defect > kHermitianTol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (defect " << defect << ")";
    throw Error(ErrorKind::kNotHermitian, msg.str());
  }
}

template <typename Vector>
RealInterval rank_k_from_spectrum(const Vector &descending, std::size_t k) {
  std::size_t n = descending.size();
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "rank k = " << k << " must lie in [1, " << n << "]";
    throw Error(ErrorKind::kDomain, msg.str());
  }
  return RealInterval{descending[n - k], descending[k - 1]};
}

// Golden-section minimisation of f on [lo, hi].
template <typename F>
double golden_minimise(F f, double lo, double hi, int iterations) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations; i++) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

const char *curve_kind_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::kEllipse:
      return "ellipse";
    case CurveKind::kCircle:
      return "circle";
    case CurveKind::kSegment:
      return "segment";
    case CurveKind::kPoint:
      return "point";
    case CurveKind::kEmpty:
      return "empty";
    case CurveKind::kFullRange:
      return "full-range";
  }
  return "unknown";
}

NuclearCurve nuclear_curve(const Mat2 &a, const RealSym2 &z, double lambda) {
  NuclearCurve c;
  c.a = a;
  c.z = z;
  c.lambda = lambda;
  c.eig = symmetric_eig2(z);
  double eps = c.eig.epsilon;
  double offset = lambda - c.eig.half_trace;
  double slack = kSpectrumSlack * std::max({1.0, std::abs(c.eig.half_trace), eps});

  if (c.eig.degenerate()) {
    c.kind = std::abs(offset) <= slack ? CurveKind::kFullRange : CurveKind::kEmpty;
    return c;
  }
  if (std::abs(offset) > eps + slack) {
    c.kind = CurveKind::kEmpty;
    return c;
  }

  Complex d = a(0, 0);
  Complex f = a(0, 1);
  Complex g = a(1, 0);
  Complex h = a(1, 1);
  double diff = z.a - z.c;
  double eps2 = eps * eps;
  Complex k = z.b * (f + g) + diff * (d - h);
  c.w = k / (2.0 * eps2);
  c.z0 = 0.5 * (d + h) - (z.a + z.c) * c.w;
  c.p_of_lambda = std::sqrt(std::max(0.0, eps2 - offset * offset)) / (2.0 * eps2);
  c.q = diff * (f + g) - z.b * (d - h);
  c.r = Complex(0.0, eps) * (f - g);
  c.center = c.z0 + c.w * lambda;
  c.theta = std::acos(std::clamp(offset / eps, -1.0, 1.0));

  if (c.p_of_lambda <= kDegenerateTol || std::max(std::abs(c.q), std::abs(c.r)) <= kDegenerateTol) {
    c.kind = CurveKind::kPoint;
  } else if (std::abs(c.cross()) <= kDegenerateTol) {
    c.kind = CurveKind::kSegment;
  } else if (is_circle(c)) {
    c.kind = CurveKind::kCircle;
  } else {
    c.kind = CurveKind::kEllipse;
  }
  return c;
}

Complex curve_point(const NuclearCurve &curve, double phi) {
  require_drawable(curve);
  return curve.center + curve.p_of_lambda * (curve.q * std::cos(phi) + curve.r * std::sin(phi));
}

PureState2 curve_state(const NuclearCurve &curve, double phi) {
  require_drawable(curve);
  return build_state(curve.eig.rotation_angle, curve.theta, phi);
}

Complex curve_point_from_state(const NuclearCurve &curve, double phi) {
  return expectation(curve.a, curve_state(curve, phi).components);
}

double ConicImplicit::evaluate(Complex point) const {
  Complex u = (point - center) / scale;
  long double x = u.real();
  long double y = u.imag();
  return static_cast<double>(alpha * x * x + beta * y * y + gamma * x * y);
}

ConicImplicit conic_implicit(const NuclearCurve &curve) {
  if (curve.kind != CurveKind::kEllipse && curve.kind != CurveKind::kCircle) {
    std::ostringstream msg;
    msg << "implicit conic needs an ellipse or circle, got " << curve_kind_name(curve.kind);
    throw Error(ErrorKind::kDegenerateConic, msg.str());
  }
  long double q1 = curve.q1();
  long double q2 = curve.q2();
  long double r1 = curve.r1();
  long double r2 = curve.r2();
  long double cross = r1 * q2 - q1 * r2;
  long double den = cross * cross;
  ConicImplicit out;
  out.alpha = (q2 * q2 + r2 * r2) / den;
  out.beta = (q1 * q1 + r1 * r1) / den;
  out.gamma = -2.0L * (q1 * q2 + r1 * r2) / den;
  out.center = curve.center;
  out.scale = curve.p_of_lambda;
  return out;
}

double conic_residual(const NuclearCurve &curve, Complex point) {
  Complex offset = point - curve.center;
  double x = offset.real();
  double y = offset.imag();
  double u = x * curve.r2() - y * curve.r1();
  double v = curve.q1() * y - curve.q2() * x;
  double radius = curve.p_of_lambda * curve.cross();
  return u * u + v * v - radius * radius;
}

CurveAngles angles_from_point(const NuclearCurve &curve, Complex point, double tol) {
  require_drawable(curve);
  CurveAngles out;
  out.theta = curve.theta;

  auto off_curve = [&](const char *why) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "point (" << point.real() << ", " << point.imag() << ") is not on the " << curve_kind_name(curve.kind)
        << ": " << why;
    return Error(ErrorKind::kOffCurve, msg.str());
  };

  if (curve.kind == CurveKind::kPoint) {
    if (std::abs(point - curve.center) > tol) {
      throw off_curve("distance to the point exceeds tolerance");
    }
    out.phi = 0.0;
    return out;
  }

  Complex scaled = (point - curve.center) / curve.p_of_lambda;
  if (curve.kind == CurveKind::kSegment) {
    // q and r are parallel; project everything onto their common direction.
    Complex dir = std::abs(curve.q) >= std::abs(curve.r) ? curve.q : curve.r;
    dir /= std::abs(dir);
    double qs = (std::conj(dir) * curve.q).real();
    double rs = (std::conj(dir) * curve.r).real();
    double along = (std::conj(dir) * scaled).real();
    double half_length = std::hypot(qs, rs);
    double cosine = along / half_length;
    if (std::abs(cosine) > 1.0 + kCosineSlack) {
      throw off_curve("beyond the segment end");
    }
    out.phi = wrap_angle(std::atan2(rs, qs) + std::acos(std::clamp(cosine, -1.0, 1.0)));
  } else {
    double x = scaled.real();
    double y = scaled.imag();
    double det = curve.q1() * curve.r2() - curve.r1() * curve.q2();
    double cosine = (x * curve.r2() - y * curve.r1()) / det;
    double sine = (curve.q1() * y - curve.q2() * x) / det;
    if (std::abs(cosine) > 1.0 + kCosineSlack) {
      throw off_curve("|cos phi| exceeds 1");
    }
    out.phi = wrap_angle(std::atan2(sine, cosine));
  }
  if (std::abs(curve_point(curve, out.phi) - point) > tol) {
    throw off_curve("no phi reproduces the point within tolerance");
  }
  return out;
}

double distance_to_curve(const NuclearCurve &curve, Complex point, std::size_t grid) {
  require_drawable(curve);
  if (curve.kind == CurveKind::kPoint) {
    return std::abs(point - curve.center);
  }
  auto dist2 = [&](double phi) { return std::norm(curve_point(curve, phi) - point); };
  double step = kTwoPi / static_cast<double>(grid);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid; k++) {
    double value = dist2(step * static_cast<double>(k));
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  double centre = step * static_cast<double>(best);
  double refined = golden_minimise(dist2, centre - step, centre + step, 80);
  return std::sqrt(std::min(best_value, dist2(refined)));
}

double support_value(const Mat2 &a, double angle) {
  Mat2 rotated = std::polar(1.0, -angle) * a;
  Mat2 hermitian_part = Complex(0.5) * (rotated + adjoint(rotated));
  return hermitian_eig2(hermitian_part).upper;
}

RangeSamples numerical_range_boundary(const Mat2 &a, std::size_t n) {
  if (n < 3) {
    throw Error(ErrorKind::kDomain, "boundary sampling needs at least 3 directions");
  }
  RangeSamples out;
  out.points.reserve(n);
  for (std::size_t k = 0; k < n; k++) {
    double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    Mat2 rotated = std::polar(1.0, -angle) * a;
    Mat2 hermitian_part = Complex(0.5) * (rotated + adjoint(rotated));
    Vec2 top = hermitian_eig2(hermitian_part).top_vector;
    out.points.push_back(RangeSample{expectation(a, top), angle, std::nullopt});
  }
  return out;
}

RangeSamples sample_curve(const NuclearCurve &curve, std::size_t n) {
  RangeSamples out;
  if (curve.kind == CurveKind::kEmpty) {
    return out;
  }
  if (curve.kind == CurveKind::kFullRange) {
    out = numerical_range_boundary(curve.a, n);
    for (auto &s : out.points) {
      s.lambda = curve.lambda;
    }
    return out;
  }
  out.points.reserve(n);
  for (std::size_t k = 0; k < n; k++) {
    double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    out.points.push_back(RangeSample{curve_point_from_state(curve, phi), phi, curve.lambda});
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Mat2 &m) {
  require_hermitian(hermiticity_defect(m));
  HermEig2 eig = hermitian_eig2(m);
  return {eig.upper, eig.lower};
}

std::vector<double> hermitian_eigenvalues(const Mat4 &m) {
  require_hermitian(hermiticity_defect(m));
  Eigen::Matrix4cd dense;
  for (int r = 0; r < 4; r++) {
    for (int c = 0; c < 4; c++) {
      dense(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(dense, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + 4);
  std::reverse(out.begin(), out.end());
  return out;
}

RealInterval hermitian_rank_k_interval(const Mat2 &m, std::size_t k) {
  return rank_k_from_spectrum(hermitian_eigenvalues(m), k);
}

RealInterval hermitian_rank_k_interval(const Mat4 &m, std::size_t k) {
  return rank_k_from_spectrum(hermitian_eigenvalues(m), k);
}

}  // namespace nnr
