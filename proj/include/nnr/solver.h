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

#ifndef NNR_SOLVER_H
#define NNR_SOLVER_H

#include <array>
#include <cstddef>
#include <vector>

#include "nnr/channels.h"
#include "nnr/linalg.h"
#include "nnr/ranges.h"

namespace nnr {

/// Admissible lambda11 values: the overlap of the spectral intervals
/// [nu1, nu2] of E11 and [mu1, mu2] of F11.
struct OmegaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// One point z of W(E12 | E11 - lambda11 I) intersected with
/// W(F12 | F11 - lambda11 I), with the Bloch angles of both generating states.
struct GammaPoint {
  Complex z;
  double lambda11 = 0.0;
  double phi_e = 0.0;
  double phi_f = 0.0;
  double theta_e = 0.0;
  double theta_f = 0.0;
};

using CompressionValues = std::array<std::array<Complex, 2>, 2>;

/// A code projector P2 = |psi_e><psi_e| (+) |psi_f><psi_f| together with its
/// compression values and Knill-Laflamme residuals (order 11, 12, 21, 22).
struct CodeSolution {
  CompressionValues lambda{};
  PureState2 psi_e;
  PureState2 psi_f;
  Mat4 p2;
  std::array<double, 4> residuals{};

  double lambda11() const { return lambda[0][0].real(); }
  Complex lambda12() const { return lambda[0][1]; }
  double max_residual() const;
};

struct SolverConfig {
  std::size_t lambda_grid = 1000;
  std::size_t phi_samples = 512;
  double kl_tol = 1e-10;
  double intersect_tol = 1e-12;
  double dedup_radius = 1e-9;

  /// Throws Error(kDomain) unless every field is positive.
  void validate() const;
};

/// Counters describing what a scan discarded. Filled when a pointer is passed.
struct SolveDiagnostics {
  std::size_t lambda_values = 0;
  std::size_t refined_roots = 0;
  std::size_t gamma_points = 0;
  std::size_t angle_rejects = 0;
  std::size_t residual_rejects = 0;
  std::size_t unenumerated_full_range = 0;
};

struct KlReport {
  CompressionValues lambda{};
  std::array<double, 4> residuals{};
};

/// The E- or F-side of the problem, brought to a real symmetric Z by a
/// diagonal phase change psi = diag(1, gauge) psi'. `a` is the transformed
/// off-diagonal block; gauge is 1 when the block was already real.
struct BlockSide {
  RealSym2 z;
  Mat2 a;
  Complex gauge{1.0, 0.0};

  Vec2 to_original(const Vec2 &transformed) const { return {transformed[0], gauge * transformed[1]}; }
};

/// Throws Error(kNotHermitian) if z11 is not Hermitian.
BlockSide make_block_side(const Mat2 &z11, const Mat2 &a12);

OmegaInterval omega(const BlockOperators &blocks);

std::vector<GammaPoint> gamma(const BlockOperators &blocks, double lambda11, const SolverConfig &config,
                              SolveDiagnostics *diagnostics = nullptr);

/// Scans lambda11 over Omega (plus isolated roots between grid points when one
/// side collapses to a point for every lambda), builds a code for each
/// intersection point and keeps those meeting config.kl_tol. Sorted by
/// lambda11, then Re and Im of lambda12. Throws Error(kEmptyOmega).
std::vector<CodeSolution> solve(const Channel &channel, const SolverConfig &config,
                                SolveDiagnostics *diagnostics = nullptr);
std::vector<CodeSolution> solve_blocks(const BlockOperators &blocks, const SolverConfig &config,
                                       SolveDiagnostics *diagnostics = nullptr);

/// Closed-form code of the amplitude-damping pair. Needs 0 < p1, p2 < 1.
CodeSolution ad_closed_form(const ADParams &params);

/// Closed-form lambda11 = 1 - p2 (1 - p1) / (2 - p1 - p2 + p1 p2).
double ad_closed_form_lambda11(const ADParams &params);

/// lambda_ij = Tr(P2 T_ij P2) / 2 and residual_ij = ||P2 T_ij P2 - lambda_ij P2||_F.
/// Throws Error(kNotProjector) unless p2 is a rank-2 orthogonal projector
/// within 1e-8.
KlReport verify_kl(const Mat4 &p2, const BlockOperators &blocks);

Mat4 code_projector(const PureState2 &psi_e, const PureState2 &psi_f);

}  // namespace nnr

#endif  // NNR_SOLVER_H
