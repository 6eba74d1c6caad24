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

#include "qrobust/linalg.hpp"

namespace qrobust {

double determinant(const RealMat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Complex determinant(const ComplexMat2& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

ComplexMat2 inverse(const ComplexMat2& m) {
  const Complex d = determinant(m);
  ComplexMat2 r;
  r(0, 0) = m(1, 1) / d;
  r(0, 1) = -m(0, 1) / d;
  r(1, 0) = -m(1, 0) / d;
  r(1, 1) = m(0, 0) / d;
  return r;
}

ComplexMat4 kron(const ComplexMat2& x, const ComplexMat2& y) {
  ComplexMat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

Vec3 operator*(const RealMat3& m, const Vec3& v) {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += m(i, j) * v[j];
  return r;
}

double dot(const Vec3& x, const Vec3& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

const std::array<ComplexMat2, 4>& pauli() {
  static const std::array<ComplexMat2, 4> basis = [] {
    const Complex i(0.0, 1.0);
    std::array<ComplexMat2, 4> p;
    p[0] = ComplexMat2::identity();
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = -i;
    p[2](1, 0) = i;
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return basis;
}

RealMat3 block3(const RealMat4& m) {
  RealMat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(i + 1, j + 1);
  return r;
}

RealMat4 assemble(const RealMat3& block, const Vec3& shift) {
  RealMat4 r;
  r(0, 0) = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    r(i + 1, 0) = shift[i];
    for (std::size_t j = 0; j < 3; ++j) r(i + 1, j + 1) = block(i, j);
  }
  return r;
}

}  // namespace qrobust
