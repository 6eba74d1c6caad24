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

// Sinkhorn-type scaling of a qubit channel F to a unital one:
//   X -> A F(B X B^dagger) A^dagger  is unital and trace preserving,
// with A, B invertible. In the canonical frame (diagonal block, shift t) the
// scaling is fixed by S = I + sum x_j s_j, where y = 1 + t.x is the largest
// admissible root of a quartic and x_j = y t_j / (lambda_j^2 - y).

#include <array>
#include <vector>

#include "qrobust/channels.hpp"
#include "qrobust/linalg.hpp"

namespace qrobust {

/** Monic quartic y^4 + b y^3 + c y^2 + d y + e. */
struct QuarticCoefficients {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;

  double evaluate(double y) const;
};

QuarticCoefficients quartic_coefficients(const DiagonalChannel& c);

/**
 * Roots of a monic polynomial of degree 1 to 4 given by its lower
 * coefficients (highest first), in closed form with one Newton polish each.
 */
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

/**
 * Largest admissible real root. Factors (y - lambda_k^2) belonging to
 * directions with t_k = 0 are divided out first because they never solve
 * the fixed-point system; the remaining real roots must exceed
 * lambda_j^2 for every direction with t_j != 0. Throws NoValidRoot.
 */
double largest_real_root(const QuarticCoefficients& q, const DiagonalChannel& c);

struct FixedPointData {
  double y = 1.0;
  Vec3 x{};
  double x_norm = 0.0;
  double xi = 0.0;

  /** S = I + sum x_j s_j. */
  ComplexMat2 s_operator() const;
};

/** Throws PoleHit if lambda_j^2 is within 1e-14 of y for some t_j != 0. */
FixedPointData fixed_point_data(const DiagonalChannel& c, double y);

struct ScalingOperators {
  ComplexMat2 a_tilde;  ///< square root of S
  ComplexMat2 b_tilde;  ///< inverse square root of F^dagger(S)
};

/** Throws DegenerateScaling when x or xi / y reaches 1 within 1e-12. */
ScalingOperators scaling_operators(const DiagonalChannel& c,
                                   const FixedPointData& f);

/** 3x3 block of the scaled map X -> a_tilde F(b_tilde X b_tilde) a_tilde. */
RealMat3 reduced_unital_matrix(const DiagonalChannel& c, const FixedPointData& f);

struct SpecialDiagonalization {
  RealMat3 q_u;
  Vec3 lambda_tilde{};
  RealMat3 q_v;
};

/** m = q_u diag(lambda_tilde) q_v with q_u, q_v in SO(3). */
SpecialDiagonalization special_diagonalize(const RealMat3& m);

/**
 * Result of the reduction. The scaled map X -> a_op F(b_op X b_op^dagger)
 * a_op^dagger has transfer matrix diag(1, lambda_tilde).
 *
 * a_op and b_op include basis rotations and so are not Hermitian in
 * general; a_tilde and b_tilde are their positive-definite parts in the
 * canonical frame. None of them is normalized.
 */
struct UnitalReduction {
  ComplexMat2 a_op;
  ComplexMat2 b_op;
  ComplexMat2 a_tilde;
  ComplexMat2 b_tilde;
  Vec3 lambda_tilde{};
  RealMat3 q_u;
  RealMat3 q_v;
  /** Fixed point S of the scaling iteration, in the input frame. */
  ComplexMat2 fixed_point;
  double residual = 0.0;
};

/**
 * Full reduction of a positive interior channel. Throws BoundaryChannel
 * for channels on or outside the boundary and VerificationFailed if the
 * reassembled map misses diag(1, lambda_tilde) by more than 1e-9.
 */
UnitalReduction decompose(const TransferMatrix& m);

/** Closed-form reduction for a channel whose shift lies along the z axis. */
UnitalReduction decompose_axial(const DiagonalChannel& c);

/**
 * Iterates S <- (F((F^dagger(S))^{-1}))^{-1} from S = I with tr S = 2
 * until the entrywise step falls below tol. Throws NoConvergence.
 */
ComplexMat2 iterate_fixed_point(const TransferMatrix& m, double tol,
                                int max_iter);

}  // namespace qrobust
