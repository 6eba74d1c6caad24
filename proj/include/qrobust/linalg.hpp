// Copyright 2026 The qrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qrobust {

using Complex = std::complex<double>;

/**
 * Dense square matrix of compile-time size, stored row-major.
 *
 * Only the handful of operations needed for 2x2, 3x3 and 4x4 work are
 * provided; everything is a value type.
 */
template <typename T, std::size_t N>
struct Matrix {
  std::array<T, N * N> a{};

  static constexpr std::size_t size = N;

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::array<T, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  T& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return a[r * N + c];
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(Matrix x, const T& s) { return x *= s; }
  friend Matrix operator*(const T& s, Matrix x) { return x *= s; }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const T xik = x(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using ComplexMat2 = Matrix<Complex, 2>;
using ComplexMat4 = Matrix<Complex, 4>;
using RealMat3 = Matrix<double, 3>;
using RealMat4 = Matrix<double, 4>;
using Vec3 = std::array<double, 3>;

template <typename T, std::size_t N>
Matrix<T, N> transpose(const Matrix<T, N>& m) {
  Matrix<T, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(j, i) = m(i, j);
  return r;
}

template <std::size_t N>
Matrix<Complex, N> adjoint(const Matrix<Complex, N>& m) {
  Matrix<Complex, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

template <typename T, std::size_t N>
T trace(const Matrix<T, N>& m) {
  T s{};
  for (std::size_t i = 0; i < N; ++i) s += m(i, i);
  return s;
}

template <typename T, std::size_t N>
double max_abs(const Matrix<T, N>& m) {
  double r = 0.0;
  for (const auto& x : m.a) r = std::max(r, static_cast<double>(std::abs(x)));
  return r;
}

template <typename T, std::size_t N>
double max_abs_diff(const Matrix<T, N>& x, const Matrix<T, N>& y) {
  return max_abs(x - y);
}

/** Largest |m(i,j) - conj(m(j,i))|. */
template <std::size_t N>
double hermiticity_residual(const Matrix<Complex, N>& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

template <std::size_t N>
Matrix<Complex, N> to_complex(const Matrix<double, N>& m) {
  Matrix<Complex, N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = m.a[i];
  return r;
}

double determinant(const RealMat3& m);
Complex determinant(const ComplexMat2& m);

/** Inverse of a 2x2 matrix by the adjugate formula; no singularity check. */
ComplexMat2 inverse(const ComplexMat2& m);

ComplexMat4 kron(const ComplexMat2& x, const ComplexMat2& y);

Vec3 operator*(const RealMat3& m, const Vec3& v);
double dot(const Vec3& x, const Vec3& y);
double norm(const Vec3& v);

/** The Pauli basis (I, X, Y, Z). */
const std::array<ComplexMat2, 4>& pauli();

/** Lower-right 3x3 block of a 4x4 real matrix. */
RealMat3 block3(const RealMat4& m);

/** 4x4 matrix diag(1, 0, 0, 0) + the given 3x3 block and column-0 tail. */
RealMat4 assemble(const RealMat3& block, const Vec3& shift);

}  // namespace qrobust
