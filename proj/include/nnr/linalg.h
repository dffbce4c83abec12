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

#ifndef NNR_LINALG_H
#define NNR_LINALG_H

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

namespace nnr {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Dense row-major N x N complex matrix. Only N = 2 and N = 4 are used.
template <std::size_t N>
struct Matrix {
  std::array<Complex, N * N> entries{};

  constexpr Complex &operator()(std::size_t row, std::size_t col) { return entries[row * N + col]; }
  constexpr const Complex &operator()(std::size_t row, std::size_t col) const {
    return entries[row * N + col];
  }

  static constexpr std::size_t size() { return N; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; i++) {
      m(i, i) = 1.0;
    }
    return m;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Vec2 = std::array<Complex, 2>;

template <std::size_t N>
Matrix<N> operator+(const Matrix<N> &lhs, const Matrix<N> &rhs) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; i++) {
    out.entries[i] = lhs.entries[i] + rhs.entries[i];
  }
  return out;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N> &lhs, const Matrix<N> &rhs) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; i++) {
    out.entries[i] = lhs.entries[i] - rhs.entries[i];
  }
  return out;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N> &lhs, const Matrix<N> &rhs) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; r++) {
    for (std::size_t c = 0; c < N; c++) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < N; k++) {
        acc += lhs(r, k) * rhs(k, c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

template <std::size_t N>
Matrix<N> operator*(Complex scale, const Matrix<N> &m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; i++) {
    out.entries[i] = scale * m.entries[i];
  }
  return out;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N> &m) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; r++) {
    for (std::size_t c = 0; c < N; c++) {
      out(c, r) = std::conj(m(r, c));
    }
  }
  return out;
}

template <std::size_t N>
Complex trace(const Matrix<N> &m) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < N; i++) {
    acc += m(i, i);
  }
  return acc;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N> &m) {
  double acc = 0.0;
  for (const Complex &z : m.entries) {
    acc += std::norm(z);
  }
  return std::sqrt(acc);
}

template <std::size_t N>
double max_abs_entry(const Matrix<N> &m) {
  double best = 0.0;
  for (const Complex &z : m.entries) {
    best = std::max(best, std::abs(z));
  }
  return best;
}

template <std::size_t N>
bool is_finite(const Matrix<N> &m) {
  for (const Complex &z : m.entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return false;
    }
  }
  return true;
}

/// Frobenius norm of m - m^dagger.
template <std::size_t N>
double hermiticity_defect(const Matrix<N> &m) {
  return frobenius_norm(m - adjoint(m));
}

Mat4 direct_sum(const Mat2 &upper, const Mat2 &lower);
Mat2 upper_block(const Mat4 &m);
Mat2 lower_block(const Mat4 &m);
/// Largest modulus among the entries outside the two diagonal 2x2 blocks.
double off_block_max(const Mat4 &m);

Mat2 outer(const Vec2 &ket);
Complex inner(const Vec2 &bra, const Vec2 &ket);
Vec2 apply(const Mat2 &m, const Vec2 &v);
/// <v|m|v> for a unit vector v.
Complex expectation(const Mat2 &m, const Vec2 &v);

/// Real symmetric 2x2 matrix [[2a, b], [b, 2c]].
struct RealSym2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Mat2 to_matrix() const;
  bool is_finite() const { return std::isfinite(a) && std::isfinite(b) && std::isfinite(c); }
  friend bool operator==(const RealSym2 &, const RealSym2 &) = default;
};

/// Closed-form spectral data of a RealSym2: the eigenvalues are
/// half_trace +/- epsilon and the rotation angle alpha satisfies
/// cos 2alpha = (a - c) / epsilon, sin 2alpha = b / epsilon.
struct SymEig2 {
  double epsilon = 0.0;
  double half_trace = 0.0;
  double rotation_angle = 0.0;

  bool degenerate() const { return epsilon == 0.0; }
  double lower() const { return half_trace - epsilon; }
  double upper() const { return half_trace + epsilon; }
};

SymEig2 symmetric_eig2(const RealSym2 &z);

/// The symmetric orthogonal diagonalizer U = [[cos a, sin a], [sin a, -cos a]];
/// U (Z - half_trace I) U = diag(epsilon, -epsilon).
Mat2 reflection_diagonalizer(double alpha);

/// The rotation R = [[cos a, -sin a], [sin a, cos a]] = U diag(1, -1). It also
/// diagonalizes Z, and is the frame used by build_state.
Mat2 rotation(double alpha);

struct PureState2 {
  Vec2 components{Complex(1.0), Complex(0.0)};

  double norm() const { return std::sqrt(std::norm(components[0]) + std::norm(components[1])); }
};

/// R(alpha) applied to the Bloch-sphere ket (cos(theta/2), e^{i phi} sin(theta/2)).
PureState2 build_state(double alpha, double theta, double phi);

/// Eigen-decomposition of a 2x2 Hermitian matrix.
struct HermEig2 {
  double lower = 0.0;
  double upper = 0.0;
  Vec2 top_vector{Complex(1.0), Complex(0.0)};
};

HermEig2 hermitian_eig2(const Mat2 &h);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double angle);

}  // namespace nnr

#endif  // NNR_LINALG_H
