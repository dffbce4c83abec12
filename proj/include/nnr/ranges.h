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

#ifndef NNR_RANGES_H
#define NNR_RANGES_H

#include <cstddef>
#include <optional>
#include <vector>

#include "nnr/linalg.h"

namespace nnr {

/// Below this, p(lambda) or max(|q|, |r|) is treated as zero.
inline constexpr double kDegenerateTol = 1e-12;
/// Slack on the spectral interval [half_trace - eps, half_trace + eps].
inline constexpr double kSpectrumSlack = 1e-12;
/// Default distance within which a point counts as lying on a curve.
inline constexpr double kOnCurveTol = 1e-8;

enum class CurveKind { kEllipse, kCircle, kSegment, kPoint, kEmpty, kFullRange };

const char *curve_kind_name(CurveKind kind);

/// The set W(A | Z - lambda I) for a 2x2 complex A and real symmetric Z.
///
/// For non-degenerate Z every unit state with <Z> = lambda can be written as
/// build_state(alpha, theta, phi) with alpha = eig.rotation_angle and
/// cos(theta) = (lambda - half_trace) / epsilon, and then
///
///   <A> = center + p * (q cos(phi) + r sin(phi)),   center = z0 + w * lambda.
///
/// With A = [[d, f], [g, h]], Z = [[2a, b], [b, 2c]], eps^2 = b^2 + (a - c)^2
/// and K = b (f + g) + (a - c)(d - h):
///
///   z0 = (d + h) / 2 - (a + c) K / (2 eps^2)      w = K / (2 eps^2)
///   p  = sqrt(eps^2 - (lambda - a - c)^2) / (2 eps^2)
///   q  = (a - c)(f + g) - b (d - h)               r = i eps (f - g)
///
/// p is kept non-negative; the orientation of the curve lives in q and r.
struct NuclearCurve {
  Mat2 a;
  RealSym2 z;
  double lambda = 0.0;
  SymEig2 eig;
  CurveKind kind = CurveKind::kEmpty;
  Complex z0;
  Complex w;
  Complex q;
  Complex r;
  double p_of_lambda = 0.0;
  Complex center;
  /// Polar angle on the Bloch sphere fixed by lambda. Meaningless for
  /// kEmpty and kFullRange.
  double theta = 0.0;

  double q1() const { return q.real(); }
  double q2() const { return q.imag(); }
  double r1() const { return r.real(); }
  double r2() const { return r.imag(); }
  /// r1 q2 - q1 r2; zero exactly when the curve is flat.
  double cross() const { return r1() * q2() - q1() * r2(); }
};

NuclearCurve nuclear_curve(const Mat2 &a, const RealSym2 &z, double lambda);

/// Closed-form point z(phi). Throws Error(kInvalidKind) for kEmpty and
/// kFullRange.
Complex curve_point(const NuclearCurve &curve, double phi);

/// The generating state of curve_point(curve, phi).
PureState2 curve_state(const NuclearCurve &curve, double phi);

/// <psi|A|psi> with psi = curve_state(curve, phi). Agrees with curve_point to
/// rounding; this is the path used for emitted samples.
Complex curve_point_from_state(const NuclearCurve &curve, double phi);

/// alpha x^2 + beta y^2 + gamma x y = 1 in coordinates
/// (x + i y) = (z - center) / scale.
///
/// The coefficients are held in extended precision. For thin ellipses the
/// three terms are large and cancel, and in double precision the error of
/// both the discriminant and evaluate() grows with the square of the axis
/// ratio.
struct ConicImplicit {
  long double alpha = 0.0L;
  long double beta = 0.0L;
  long double gamma = 0.0L;
  Complex center;
  double scale = 0.0;

  double discriminant() const { return static_cast<double>(gamma * gamma - 4.0L * alpha * beta); }
  /// alpha x^2 + beta y^2 + gamma x y for a point given in plane coordinates.
  double evaluate(Complex point) const;
};

/// Throws Error(kDegenerateConic) unless the curve is an ellipse or circle.
ConicImplicit conic_implicit(const NuclearCurve &curve);

/// Division-free implicit form
///   (X r2 - Y r1)^2 + (q1 Y - q2 X)^2 - (p (r1 q2 - q1 r2))^2
/// with X + iY = point - center. Negative inside, zero on, positive outside
/// the curve. Only meaningful for ellipses and circles.
double conic_residual(const NuclearCurve &curve, Complex point);

struct CurveAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Recovers (theta, phi) with curve_point(curve, phi) == point. Throws
/// Error(kOffCurve) when no phi reproduces the point within tol, and
/// Error(kInvalidKind) for kEmpty and kFullRange curves. Point curves report
/// phi = 0.
CurveAngles angles_from_point(const NuclearCurve &curve, Complex point, double tol = kOnCurveTol);

/// Euclidean distance from point to the curve (dense phi grid plus local
/// refinement).
double distance_to_curve(const NuclearCurve &curve, Complex point, std::size_t grid = 4096);

struct RangeSample {
  Complex point;
  double phi = 0.0;
  std::optional<double> lambda;
};

struct RangeSamples {
  std::vector<RangeSample> points;
};

/// n boundary points of W(A): for direction angles 2 pi k / n, the expectation
/// of A in the top eigenvector of the Hermitian part of e^{-i angle} A.
RangeSamples numerical_range_boundary(const Mat2 &a, std::size_t n);

/// max Re(e^{-i angle} z) over z in W(A).
double support_value(const Mat2 &a, double angle);

/// n samples phi = 2 pi k / n of a nuclear curve. Empty curves give no
/// samples; kFullRange gives the boundary of W(A) tagged with lambda.
RangeSamples sample_curve(const NuclearCurve &curve, std::size_t n);

/// Closed real interval; empty when lo > hi.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return lo > hi; }
};

/// Eigenvalues in descending order.
std::vector<double> hermitian_eigenvalues(const Mat2 &m);
std::vector<double> hermitian_eigenvalues(const Mat4 &m);

/// Rank-k numerical range of a Hermitian matrix: [l_{n-k+1}, l_k] for
/// eigenvalues l_1 >= ... >= l_n. Throws Error(kNotHermitian) or
/// Error(kDomain) for k outside [1, n].
RealInterval hermitian_rank_k_interval(const Mat2 &m, std::size_t k);
RealInterval hermitian_rank_k_interval(const Mat4 &m, std::size_t k);

}  // namespace nnr

#endif  // NNR_RANGES_H
