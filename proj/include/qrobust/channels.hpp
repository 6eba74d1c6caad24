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
#include <vector>

#include "qrobust/linalg.hpp"
#include "qrobust/qubit_algebra.hpp"

namespace qrobust {

/**
 * Pauli transfer matrix M_ij = tr[s_i F(s_j)] / 2 of a trace-preserving map,
 * with s = (I, X, Y, Z). Row 0 is (1, 0, 0, 0).
 */
class TransferMatrix {
 public:
  /** Throws InvalidChannel if row 0 differs from (1,0,0,0) by more than 1e-12. */
  static TransferMatrix from_matrix(const RealMat4& m);
  static TransferMatrix identity();

  const RealMat4& matrix() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /** Column-0 tail: the Bloch-vector image of the maximally mixed state. */
  Vec3 shift() const { return {m_(1, 0), m_(2, 0), m_(3, 0)}; }

 private:
  explicit TransferMatrix(const RealMat4& m) : m_(m) {}
  RealMat4 m_;
};

/** Channel in canonical form r -> diag(lambda) r + shift on Bloch vectors. */
struct DiagonalChannel {
  Vec3 lambda{};
  Vec3 shift{};

  bool is_unital(double tol = 0.0) const;
  TransferMatrix to_transfer() const;
};

struct KrausSet {
  std::vector<ComplexMat2> operators;
};

struct ChannelClass {
  bool positive = false;
  bool completely_positive = false;
  bool entanglement_breaking = false;
  bool unital = false;
};

/** Throws IncompleteKraus unless sum K^dagger K = I to 1e-10. */
TransferMatrix ptm_from_kraus(const KrausSet& k);

/** Transfer matrix of X -> A X A^dagger; not trace preserving in general. */
RealMat4 conjugation_matrix(const ComplexMat2& a);

/** Weights q_0..q_3 of the Pauli mixture with eigenvalues lambda. */
std::array<double, 4> pauli_kraus_weights(const Vec3& lambda);

/** (Id (x) F)[|psi+><psi+|], second factor carrying the channel. */
ComplexMat4 choi_from_ptm(const TransferMatrix& m);

/** Kraus operators from the eigendecomposition of a Choi matrix. */
KrausSet kraus_from_choi(const ComplexMat4& choi);

/**
 * Max over unit r of |diag(lambda) r + t|, estimated on a 10^4-point
 * Fibonacci grid and refined by local search around the best grid point.
 */
double max_output_bloch_norm(const DiagonalChannel& c);

/** Value of sum t_j^2 / (1 - |lambda_j|)^2, with 0/0 read as 0. */
double ellipsoid_value(const DiagonalChannel& c);

ChannelClass classify(const DiagonalChannel& c);

TransferMatrix compose(const TransferMatrix& outer, const TransferMatrix& inner);

/** Transfer matrix of the dual map (the transpose). */
RealMat4 dual(const TransferMatrix& m);

/** Applies a 4x4 Pauli-basis matrix to an arbitrary 2x2 operator. */
ComplexMat2 apply_map(const RealMat4& m, const ComplexMat2& x);

struct CanonicalForm {
  DiagonalChannel channel;
  RealMat3 rotation_out;
  RealMat3 rotation_in;
};

/**
 * Block = rotation_out * diag(lambda) * rotation_in with both rotations in
 * SO(3); |lambda| descending, any sign flip carried by lambda_3. The shift
 * is rotation_out^T times the original column-0 tail.
 */
CanonicalForm canonical_form(const TransferMatrix& m);

struct Svd3 {
  RealMat3 u;
  Vec3 s{};
  RealMat3 v;  ///< m = u diag(s) v^T
};

/** One-sided Jacobi SVD; s >= 0 sorted descending, u and v orthogonal. */
Svd3 svd3(const RealMat3& m);

/** SU(2) element u with u s_j u^dagger = sum_i q_ij s_i. */
ComplexMat2 su2_from_rotation(const RealMat3& q);

/** Rotation block of X -> u X u^dagger. */
RealMat3 rotation_from_su2(const ComplexMat2& u);

/** (left (x) right) applied through the Pauli coefficient array. */
ComplexMat4 apply_pair_matrix(const RealMat4& left, const RealMat4& right,
                              const ComplexMat4& rho);

/** Throws InvalidState if the output has an eigenvalue below -1e-8. */
TwoQubitDensity apply_pair(const TransferMatrix& left,
                           const TransferMatrix& right,
                           const TwoQubitDensity& rho);

}  // namespace qrobust
