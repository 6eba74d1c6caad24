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

#include <array>
#include <cstddef>

#include "qrobust/linalg.hpp"

namespace qrobust {

/** Eigenvalues (ascending) and matching eigenvectors stored as columns. */
template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};
  Matrix<Complex, N> vectors;
};

/**
 * Cyclic complex Jacobi diagonalization for N = 2 or 4.
 *
 * Sweeps run in fixed (p, q) order until the off-diagonal Frobenius norm
 * drops below 1e-13. Throws NonHermitian when the input deviates from
 * Hermitian by more than 1e-10.
 */
template <std::size_t N>
HermitianEigen<N> hermitian_eigen(const Matrix<Complex, N>& m);

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<Complex, N>& m) {
  return hermitian_eigen(m).values;
}

extern template HermitianEigen<2> hermitian_eigen(const ComplexMat2&);
extern template HermitianEigen<4> hermitian_eigen(const ComplexMat4&);

/** Two-qubit density matrix in the |00>,|01>,|10>,|11> basis. */
class TwoQubitDensity {
 public:
  /**
   * Validates Hermiticity and unit trace to 1e-12 and the smallest
   * eigenvalue against -psd_tolerance. Throws InvalidState otherwise.
   */
  static TwoQubitDensity from_matrix(const ComplexMat4& m,
                                     double psd_tolerance = 1e-10);

  const ComplexMat4& matrix() const noexcept { return m_; }

 private:
  explicit TwoQubitDensity(const ComplexMat4& m) : m_(m) {}
  ComplexMat4 m_;
};

class PureTwoQubit {
 public:
  using Amplitudes = std::array<Complex, 4>;

  /** Requires unit norm to 1e-12; throws InvalidState otherwise. */
  static PureTwoQubit from_amplitudes(const Amplitudes& amps);
  /** Rescales to unit norm; throws InvalidState for the zero vector. */
  static PureTwoQubit normalized(const Amplitudes& amps);

  const Amplitudes& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  ComplexMat4 projector_matrix() const;
  TwoQubitDensity projector() const;

 private:
  explicit PureTwoQubit(const Amplitudes& amps) : amps_(amps) {}
  Amplitudes amps_;
};

/** |<x|y>|, equal to 1 iff the states agree up to a global phase. */
double overlap(const PureTwoQubit& x, const PureTwoQubit& y);

/** Transposes the second-qubit index. */
ComplexMat4 partial_transpose(const ComplexMat4& m);
ComplexMat4 partial_transpose(const TwoQubitDensity& rho);

double min_pt_eigenvalue(const TwoQubitDensity& rho);

/** Sum of magnitudes of the negative eigenvalues of the partial transpose. */
double negativity(const TwoQubitDensity& rho);

bool is_unitary(const ComplexMat2& u, double tol = 1e-10);

/** (|00> + |11>)/sqrt(2). */
PureTwoQubit bell_state();

/** (u (x) v)(|00> + |11>)/sqrt(2); throws NonUnitary. */
PureTwoQubit make_bell_like(const ComplexMat2& u, const ComplexMat2& v);

/** (a (x) b)|psi>, renormalized. */
PureTwoQubit apply_local(const ComplexMat2& a, const ComplexMat2& b,
                         const PureTwoQubit& psi);

}  // namespace qrobust
