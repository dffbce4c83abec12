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

#include "nnr/solver.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <tuple>

#include "nnr/errors.h"

namespace nnr {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kProjectorTol = 1e-8;
constexpr int kMaxBisections = 200;

enum class Shape { kPoint, kSegment, kConic, kUnusable };

// A nuclear curve of one block side at a fixed lambda11. A full-range side
// whose block is a multiple of the identity behaves as a single point.
struct SideCurve {
  NuclearCurve curve;
  Shape shape = Shape::kUnusable;
  bool scalar_full_range = false;
};

Shape shape_of(CurveKind kind) {
  switch (kind) {
    case CurveKind::kPoint:
      return Shape::kPoint;
    case CurveKind::kSegment:
      return Shape::kSegment;
    case CurveKind::kEllipse:
    case CurveKind::kCircle:
      return Shape::kConic;
    default:
      return Shape::kUnusable;
  }
}

SideCurve side_curve(const BlockSide &side, double lambda) {
  SideCurve out;
  out.curve = nuclear_curve(side.a, side.z, lambda);
  out.shape = shape_of(out.curve.kind);
  if (out.curve.kind == CurveKind::kFullRange) {
    Complex mean = 0.5 * trace(side.a);
    if (max_abs_entry(side.a - mean * Mat2::identity()) <= kDegenerateTol) {
      out.scalar_full_range = true;
      out.shape = Shape::kPoint;
      out.curve.center = mean;
    }
  }
  return out;
}

Complex point_of(const SideCurve &side) { return side.curve.center; }

std::optional<CurveAngles> angles_on(const SideCurve &side, Complex z, double tol) {
  if (side.scalar_full_range) {
    if (std::abs(z - side.curve.center) > tol) {
      return std::nullopt;
    }
    // Every state has <Z> = lambda here; take the first basis vector.
    return CurveAngles{0.0, 0.0};
  }
  try {
    return angles_from_point(side.curve, z, tol);
  } catch (const Error &) {
    return std::nullopt;
  }
}

bool on_side(const SideCurve &side, Complex z) { return angles_on(side, z, kOnCurveTol).has_value(); }

// Unit direction and half length of a flat (segment) curve.
struct Line {
  Complex origin;
  Complex dir;
  double half_length = 0.0;
};

Line line_of(const NuclearCurve &c) {
  Complex dir = std::abs(c.q) >= std::abs(c.r) ? c.q : c.r;
  dir /= std::abs(dir);
  double qs = (std::conj(dir) * c.q).real();
  double rs = (std::conj(dir) * c.r).real();
  return Line{c.center, dir, c.p_of_lambda * std::hypot(qs, rs)};
}

void push_unique(std::vector<Complex> &points, Complex z, double radius) {
  for (const Complex &existing : points) {
    if (std::abs(existing - z) <= radius) {
      return;
    }
  }
  points.push_back(z);
}

std::vector<Complex> intersect_lines(const SideCurve &e, const SideCurve &f, double radius) {
  Line le = line_of(e.curve);
  Line lf = line_of(f.curve);
  std::vector<Complex> candidates;
  double denom = (std::conj(lf.dir) * le.dir).imag();
  Complex delta = lf.origin - le.origin;
  if (std::abs(denom) > kDegenerateTol) {
    double s = (std::conj(lf.dir) * delta).imag() / denom;
    candidates.push_back(le.origin + s * le.dir);
  } else {
    // Parallel: only collinear overlaps intersect; report the overlap ends.
    for (double sign : {-1.0, 1.0}) {
      candidates.push_back(le.origin + sign * le.half_length * le.dir);
      candidates.push_back(lf.origin + sign * lf.half_length * lf.dir);
    }
  }
  std::vector<Complex> out;
  for (Complex z : candidates) {
    if (on_side(e, z) && on_side(f, z)) {
      push_unique(out, z, radius);
    }
  }
  return out;
}

// Traces `param` over a phi grid and brackets sign changes of the implicit
// form of `implicit`, which must be an ellipse or circle.
std::vector<Complex> intersect_parametric(const NuclearCurve &param, const NuclearCurve &implicit,
                                          const SolverConfig &config) {
  std::size_t n = config.phi_samples;
  double step = kTwoPi / static_cast<double>(n);
  auto residual = [&](double phi) { return conic_residual(implicit, curve_point(param, phi)); };
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; k++) {
    values[k] = residual(step * static_cast<double>(k));
  }
  std::vector<Complex> out;
  for (std::size_t k = 0; k < n; k++) {
    double lo = step * static_cast<double>(k);
    double hi = lo + step;
    double g_lo = values[k];
    double g_hi = values[(k + 1) % n];
    if (g_lo == 0.0) {
      push_unique(out, curve_point(param, lo), config.dedup_radius);
      continue;
    }
    if (g_lo * g_hi >= 0.0) {
      continue;
    }
    for (int it = 0; it < kMaxBisections && hi - lo > config.intersect_tol; it++) {
      double mid = 0.5 * (lo + hi);
      double g_mid = residual(mid);
      if (g_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((g_mid < 0.0) == (g_lo < 0.0)) {
        lo = mid;
        g_lo = g_mid;
      } else {
        hi = mid;
      }
    }
    push_unique(out, curve_point(param, 0.5 * (lo + hi)), config.dedup_radius);
  }
  return out;
}

std::vector<Complex> intersect(const SideCurve &e, const SideCurve &f, const SolverConfig &config) {
  std::vector<Complex> out;
  if (e.shape == Shape::kPoint) {
    Complex z = point_of(e);
    if (on_side(f, z)) {
      out.push_back(z);
    }
    return out;
  }
  if (f.shape == Shape::kPoint) {
    Complex z = point_of(f);
    if (on_side(e, z)) {
      out.push_back(z);
    }
    return out;
  }
  if (e.shape == Shape::kSegment && f.shape == Shape::kSegment) {
    return intersect_lines(e, f, config.dedup_radius);
  }
  // At least one side is a proper conic; trace the other one over phi.
  if (f.shape == Shape::kConic) {
    return intersect_parametric(e.curve, f.curve, config);
  }
  return intersect_parametric(f.curve, e.curve, config);
}

std::vector<GammaPoint> gamma_for_sides(const BlockSide &e_side, const BlockSide &f_side, double lambda11,
                                        const SolverConfig &config, SolveDiagnostics *diagnostics) {
  SideCurve e = side_curve(e_side, lambda11);
  SideCurve f = side_curve(f_side, lambda11);
  std::vector<GammaPoint> out;
  for (const SideCurve *s : {&e, &f}) {
    if (s->curve.kind == CurveKind::kFullRange && !s->scalar_full_range) {
      // The intersection is two-dimensional here and is not enumerated.
      if (diagnostics != nullptr) {
        diagnostics->unenumerated_full_range++;
      }
      return out;
    }
  }
  if (e.shape == Shape::kUnusable || f.shape == Shape::kUnusable) {
    return out;
  }
  for (Complex z : intersect(e, f, config)) {
    auto ae = angles_on(e, z, kOnCurveTol);
    auto af = angles_on(f, z, kOnCurveTol);
    if (!ae || !af) {
      if (diagnostics != nullptr) {
        diagnostics->angle_rejects++;
      }
      continue;
    }
    out.push_back(GammaPoint{z, lambda11, ae->phi, af->phi, ae->theta, af->theta});
  }
  if (diagnostics != nullptr) {
    diagnostics->gamma_points += out.size();
  }
  return out;
}

struct Sides {
  BlockSide e;
  BlockSide f;
};

Sides make_sides(const BlockOperators &blocks) {
  return Sides{make_block_side(blocks.e11, blocks.e12), make_block_side(blocks.f11, blocks.f12)};
}

bool is_structural_point(const BlockSide &side) {
  // q and r do not depend on lambda, so any admissible lambda reveals them.
  SymEig2 eig = symmetric_eig2(side.z);
  if (eig.degenerate()) {
    return false;
  }
  NuclearCurve c = nuclear_curve(side.a, side.z, eig.half_trace);
  return std::max(std::abs(c.q), std::abs(c.r)) <= kDegenerateTol;
}

// When one side is a single point for every lambda11, Gamma is non-empty only
// at isolated lambda11 values. Returns those roots found between grid points.
std::vector<double> isolated_roots(const Sides &sides, const std::vector<double> &grid, const OmegaInterval &om) {
  bool e_point = is_structural_point(sides.e);
  bool f_point = is_structural_point(sides.f);
  std::vector<double> roots;
  if (!e_point && !f_point) {
    return roots;
  }
  if (e_point && f_point) {
    // Both centres are affine in lambda; solve z_e(lambda) = z_f(lambda).
    NuclearCurve e0 = nuclear_curve(sides.e.a, sides.e.z, om.lo);
    NuclearCurve f0 = nuclear_curve(sides.f.a, sides.f.z, om.lo);
    Complex dz = e0.z0 - f0.z0;
    Complex dw = e0.w - f0.w;
    if (std::norm(dw) > 0.0) {
      double lambda = -(std::conj(dw) * dz).real() / std::norm(dw);
      if (lambda > om.lo && lambda < om.hi) {
        roots.push_back(lambda);
      }
    }
    return roots;
  }
  const BlockSide &point_side = e_point ? sides.e : sides.f;
  const BlockSide &curve_side = e_point ? sides.f : sides.e;

  auto signed_gap = [&](double lambda) -> std::optional<double> {
    NuclearCurve pc = nuclear_curve(point_side.a, point_side.z, lambda);
    NuclearCurve cc = nuclear_curve(curve_side.a, curve_side.z, lambda);
    if (pc.kind == CurveKind::kEmpty || cc.kind == CurveKind::kEmpty || cc.kind == CurveKind::kFullRange) {
      return std::nullopt;
    }
    if (std::abs(cc.cross()) > kDegenerateTol) {
      return conic_residual(cc, pc.center);
    }
    if (std::max(std::abs(cc.q), std::abs(cc.r)) <= kDegenerateTol) {
      return std::nullopt;
    }
    // Flat curve: signed distance from its supporting line.
    Line line = line_of(cc);
    return (std::conj(line.dir) * (pc.center - line.origin)).imag();
  };

  std::vector<std::optional<double>> values;
  values.reserve(grid.size());
  for (double lambda : grid) {
    values.push_back(signed_gap(lambda));
  }
  for (std::size_t i = 0; i + 1 < grid.size(); i++) {
    if (!values[i] || !values[i + 1] || *values[i] * *values[i + 1] >= 0.0) {
      continue;
    }
    double lo = grid[i];
    double hi = grid[i + 1];
    double g_lo = *values[i];
    for (int it = 0; it < kMaxBisections; it++) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        break;
      }
      auto g_mid = signed_gap(mid);
      if (!g_mid) {
        break;
      }
      if (*g_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((*g_mid < 0.0) == (g_lo < 0.0)) {
        lo = mid;
        g_lo = *g_mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

CodeSolution make_solution(const BlockOperators &blocks, const Sides &sides, const GammaPoint &gp) {
  auto state_for = [](const BlockSide &side, double theta, double phi) {
    SymEig2 eig = symmetric_eig2(side.z);
    PureState2 psi = build_state(eig.rotation_angle, theta, phi);
    psi.components = side.to_original(psi.components);
    return psi;
  };
  CodeSolution sol;
  sol.psi_e = state_for(sides.e, gp.theta_e, gp.phi_e);
  sol.psi_f = state_for(sides.f, gp.theta_f, gp.phi_f);
  sol.p2 = code_projector(sol.psi_e, sol.psi_f);
  KlReport report = verify_kl(sol.p2, blocks);
  sol.lambda = report.lambda;
  sol.residuals = report.residuals;
  return sol;
}

bool solution_less(const CodeSolution &x, const CodeSolution &y) {
  return std::make_tuple(x.lambda11(), x.lambda12().real(), x.lambda12().imag()) <
         std::make_tuple(y.lambda11(), y.lambda12().real(), y.lambda12().imag());
}

std::vector<CodeSolution> sort_and_merge(std::vector<CodeSolution> solutions, double radius) {
  std::stable_sort(solutions.begin(), solutions.end(), solution_less);
  std::vector<CodeSolution> kept;
  for (CodeSolution &candidate : solutions) {
    bool merged = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (candidate.lambda11() - it->lambda11() > radius) {
        break;
      }
      if (std::abs(candidate.lambda12() - it->lambda12()) <= radius) {
        if (candidate.max_residual() < it->max_residual()) {
          *it = candidate;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      kept.push_back(candidate);
    }
  }
  return kept;
}

}  // namespace

double CodeSolution::max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }

void SolverConfig::validate() const {
  if (lambda_grid == 0 || phi_samples == 0 || !(kl_tol > 0.0) || !(intersect_tol > 0.0) || !(dedup_radius > 0.0)) {
    throw Error(ErrorKind::kDomain, "solver configuration values must all be positive");
  }
}

BlockSide make_block_side(const Mat2 &z11, const Mat2 &a12) {
  double defect = hermiticity_defect(z11);
  if (defect > kHermitianTol) {
    std::ostringstream msg;
    msg << "diagonal block is not Hermitian (defect " << defect << ")";
    throw Error(ErrorKind::kNotHermitian, msg.str());
  }
  BlockSide side;
  Complex off = 0.5 * (z11(0, 1) + std::conj(z11(1, 0)));
  double b = off.real();
  side.a = a12;
  if (off.imag() != 0.0) {
    side.gauge = std::conj(off) / std::abs(off);
    b = std::abs(off);
    side.a(0, 1) = a12(0, 1) * side.gauge;
    side.a(1, 0) = std::conj(side.gauge) * a12(1, 0);
  }
  side.z = RealSym2{0.5 * z11(0, 0).real(), b, 0.5 * z11(1, 1).real()};
  return side;
}

OmegaInterval omega(const BlockOperators &blocks) {
  Sides sides = make_sides(blocks);
  SymEig2 e = symmetric_eig2(sides.e.z);
  SymEig2 f = symmetric_eig2(sides.f.z);
  OmegaInterval out;
  out.nu1 = e.lower();
  out.nu2 = e.upper();
  out.mu1 = f.lower();
  out.mu2 = f.upper();
  out.lo = std::max(out.nu1, out.mu1);
  out.hi = std::min(out.nu2, out.mu2);
  out.empty = out.lo > out.hi;
  return out;
}

std::vector<GammaPoint> gamma(const BlockOperators &blocks, double lambda11, const SolverConfig &config,
                              SolveDiagnostics *diagnostics) {
  config.validate();
  Sides sides = make_sides(blocks);
  return gamma_for_sides(sides.e, sides.f, lambda11, config, diagnostics);
}

std::vector<CodeSolution> solve(const Channel &channel, const SolverConfig &config, SolveDiagnostics *diagnostics) {
  return solve_blocks(derive_blocks(build_channel(channel)), config, diagnostics);
}

std::vector<CodeSolution> solve_blocks(const BlockOperators &blocks, const SolverConfig &config,
                                       SolveDiagnostics *diagnostics) {
  config.validate();
  OmegaInterval om = omega(blocks);
  if (om.empty) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Omega is empty: spectra [" << om.nu1 << ", " << om.nu2 << "] and [" << om.mu1 << ", " << om.mu2
        << "] do not overlap";
    throw Error(ErrorKind::kEmptyOmega, msg.str());
  }
  Sides sides = make_sides(blocks);

  std::vector<double> grid;
  if (om.hi == om.lo || config.lambda_grid == 1) {
    grid.push_back(om.lo);
  } else {
    std::size_t n = std::max<std::size_t>(config.lambda_grid, 2);
    grid.reserve(n);
    for (std::size_t i = 0; i < n; i++) {
      double t = static_cast<double>(i) / static_cast<double>(n - 1);
      grid.push_back(i + 1 == n ? om.hi : om.lo + (om.hi - om.lo) * t);
    }
  }
  std::vector<double> roots = isolated_roots(sides, grid, om);

  std::vector<double> lambdas = grid;
  lambdas.insert(lambdas.end(), roots.begin(), roots.end());
  if (diagnostics != nullptr) {
    diagnostics->lambda_values += lambdas.size();
    diagnostics->refined_roots += roots.size();
  }

  std::vector<CodeSolution> found;
  for (double lambda11 : lambdas) {
    for (const GammaPoint &gp : gamma_for_sides(sides.e, sides.f, lambda11, config, diagnostics)) {
      CodeSolution sol = make_solution(blocks, sides, gp);
      if (sol.max_residual() <= config.kl_tol) {
        found.push_back(sol);
      } else if (diagnostics != nullptr) {
        diagnostics->residual_rejects++;
      }
    }
  }
  return sort_and_merge(std::move(found), config.dedup_radius);
}

double ad_closed_form_lambda11(const ADParams &params) {
  double p1 = params.p1;
  double p2 = params.p2;
  return 1.0 - p2 * (1.0 - p1) / (2.0 - p1 - p2 + p1 * p2);
}

CodeSolution ad_closed_form(const ADParams &params) {
  double p1 = params.p1;
  double p2 = params.p2;
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    std::ostringstream msg;
    msg << "closed form needs 0 < p1, p2 < 1, got p1 = " << p1 << ", p2 = " << p2;
    throw Error(ErrorKind::kDomain, msg.str());
  }
  BlockOperators blocks = derive_blocks(build_ad(params));
  double denom = 2.0 - p1 - p2 + p1 * p2;
  double theta_e = std::acos((p1 - p2 + p1 * p2) / denom);
  double theta_f = std::acos((-p1 - p2 + p1 * p2) / denom);
  // E11 and F11 are diagonal, so both frames are the identity.
  CodeSolution sol;
  sol.psi_e = build_state(0.0, theta_e, 0.0);
  sol.psi_f = build_state(0.0, theta_f, 0.0);
  sol.p2 = code_projector(sol.psi_e, sol.psi_f);
  KlReport report = verify_kl(sol.p2, blocks);
  sol.lambda = report.lambda;
  sol.residuals = report.residuals;
  return sol;
}

Mat4 code_projector(const PureState2 &psi_e, const PureState2 &psi_f) {
  return direct_sum(outer(psi_e.components), outer(psi_f.components));
}

KlReport verify_kl(const Mat4 &p2, const BlockOperators &blocks) {
  double idempotency = frobenius_norm(p2 * p2 - p2);
  double hermiticity = hermiticity_defect(p2);
  double rank_gap = std::abs(trace(p2) - 2.0);
  if (idempotency > kProjectorTol || hermiticity > kProjectorTol || rank_gap > kProjectorTol) {
    std::ostringstream msg;
    msg << "P2 is not a rank-2 orthogonal projector (|P^2 - P| = " << idempotency << ", |P - P^dagger| = "
        << hermiticity << ", |Tr P - 2| = " << rank_gap << ")";
    throw Error(ErrorKind::kNotProjector, msg.str());
  }
  const std::array<const Mat4 *, 4> ts{&blocks.t11, &blocks.t12, &blocks.t21, &blocks.t22};
  KlReport out;
  for (std::size_t idx = 0; idx < 4; idx++) {
    Mat4 compressed = p2 * (*ts[idx]) * p2;
    Complex value = 0.5 * trace(compressed);
    out.lambda[idx / 2][idx % 2] = value;
    out.residuals[idx] = frobenius_norm(compressed - value * p2);
  }
  return out;
}

}  // namespace nnr
