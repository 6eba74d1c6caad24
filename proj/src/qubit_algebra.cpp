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

#include "qrobust/qubit_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "qrobust/error.hpp"

namespace qrobust {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 64;

template <std::size_t N>
double off_diagonal_norm(const Matrix<Complex, N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) in place: first a diagonal phase makes the pivot real, then
// a real Jacobi rotation finishes the job. The accumulated unitary is
// multiplied into v from the right.
template <std::size_t N>
void rotate(Matrix<Complex, N>& a, Matrix<Complex, N>& v, std::size_t p,
            std::size_t q) {
  const double r = std::abs(a(p, q));
  if (r == 0.0) return;
  const Complex phase = a(p, q) / r;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Columns p and q of J = diag(..., 1, conj(phase), ...) * R(c, s).
  const Complex jpp = c;
  const Complex jqp = -s * std::conj(phase);
  const Complex jpq = s;
  const Complex jqq = c * std::conj(phase);

  // a <- a J
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
  // a <- J^dagger a
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

template <std::size_t N>
HermitianEigen<N> hermitian_eigen(const Matrix<Complex, N>& m) {
  if (hermiticity_residual(m) > kHermitianTol)
    throw DomainError(Errc::NonHermitian, "matrix is not Hermitian");
  Matrix<Complex, N> a = 0.5 * (m + adjoint(m));
  Matrix<Complex, N> v = Matrix<Complex, N>::identity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffDiagonalTol) break;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template HermitianEigen<2> hermitian_eigen(const ComplexMat2&);
template HermitianEigen<4> hermitian_eigen(const ComplexMat4&);

TwoQubitDensity TwoQubitDensity::from_matrix(const ComplexMat4& m,
                                             double psd_tolerance) {
  if (hermiticity_residual(m) > 1e-12)
    throw DomainError(Errc::InvalidState, "density matrix is not Hermitian");
  if (std::abs(trace(m) - 1.0) > 1e-12)
    throw DomainError(Errc::InvalidState, "density matrix trace is not 1");
  if (hermitian_eigenvalues(m)[0] < -psd_tolerance)
    throw DomainError(Errc::InvalidState,
                      "density matrix has a negative eigenvalue");
  return TwoQubitDensity(m);
}

PureTwoQubit PureTwoQubit::from_amplitudes(const Amplitudes& amps) {
  double n = 0.0;
  for (const auto& z : amps) n += std::norm(z);
  if (std::abs(std::sqrt(n) - 1.0) > 1e-12)
    throw DomainError(Errc::InvalidState, "state is not normalized");
  return PureTwoQubit(amps);
}

PureTwoQubit PureTwoQubit::normalized(const Amplitudes& amps) {
  double n = 0.0;
  for (const auto& z : amps) n += std::norm(z);
  n = std::sqrt(n);
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError(Errc::InvalidState, "cannot normalize the zero vector");
  Amplitudes out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = amps[i] / n;
  return PureTwoQubit(out);
}

ComplexMat4 PureTwoQubit::projector_matrix() const {
  ComplexMat4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = amps_[i] * std::conj(amps_[j]);
  return r;
}

TwoQubitDensity PureTwoQubit::projector() const {
  return TwoQubitDensity::from_matrix(projector_matrix());
}

double overlap(const PureTwoQubit& x, const PureTwoQubit& y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
  return std::abs(s);
}

ComplexMat4 partial_transpose(const ComplexMat4& m) {
  ComplexMat4 r;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d)
          r(2 * a + b, 2 * c + d) = m(2 * a + d, 2 * c + b);
  return r;
}

ComplexMat4 partial_transpose(const TwoQubitDensity& rho) {
  return partial_transpose(rho.matrix());
}

double min_pt_eigenvalue(const TwoQubitDensity& rho) {
  return hermitian_eigenvalues(partial_transpose(rho))[0];
}

double negativity(const TwoQubitDensity& rho) {
  double s = 0.0;
  for (double e : hermitian_eigenvalues(partial_transpose(rho)))
    if (e < 0.0) s -= e;
  return s;
}

bool is_unitary(const ComplexMat2& u, double tol) {
  return max_abs_diff(adjoint(u) * u, ComplexMat2::identity()) <= tol;
}

PureTwoQubit bell_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureTwoQubit::normalized({h, 0.0, 0.0, h});
}

PureTwoQubit apply_local(const ComplexMat2& a, const ComplexMat2& b,
                         const PureTwoQubit& psi) {
  const ComplexMat4 k = kron(a, b);
  PureTwoQubit::Amplitudes out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += k(i, j) * psi[j];
  return PureTwoQubit::normalized(out);
}

PureTwoQubit make_bell_like(const ComplexMat2& u, const ComplexMat2& v) {
  if (!is_unitary(u) || !is_unitary(v))
    throw DomainError(Errc::NonUnitary, "local operator is not unitary");
  return apply_local(u, v, bell_state());
}

}  // namespace qrobust
