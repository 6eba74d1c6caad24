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
#include <compare>
#include <functional>
#include <vector>

#include "qrobust/channels.hpp"
#include "qrobust/linalg.hpp"
#include "qrobust/qubit_algebra.hpp"

namespace qrobust {

/** 3x3 matrix with entry signs[i] at (i, perm[i]) and zeros elsewhere. */
struct SignedPermutation {
  std::array<int, 3> perm{0, 1, 2};  ///< zero-based column of row i
  std::array<int, 3> signs{1, 1, 1};

  RealMat3 matrix() const;

  /** lambda^T P lambda_prime, summed in row order. */
  double apply(const Vec3& lambda, const Vec3& lambda_prime) const;

  /** All 48 instances in lexicographic (perm, signs) order. */
  static const std::array<SignedPermutation, 48>& all();

  friend auto operator<=>(const SignedPermutation&,
                          const SignedPermutation&) = default;
};

struct EaVerdict {
  bool annihilating = false;
  double max_value = 0.0;
  SignedPermutation argmax;
};

/**
 * Exhaustive maximum of lambda^T P lambda_prime over signed permutations.
 * Ties go to the lexicographically smallest (perm, signs).
 */
EaVerdict signed_permutation_max(const Vec3& lambda, const Vec3& lambda_prime);

/**
 * Annihilation verdict for a pair of unital Pauli-diagonal channels.
 * Nonnegative inputs take the sorted dot-product shortcut. Throws NotUnital
 * or NotPositive.
 */
EaVerdict is_ea_pair(const DiagonalChannel& left, const DiagonalChannel& right);

using LambdaTrajectory = std::function<Vec3(double)>;

/**
 * Last zero of max_P lambda(t)^T P lambda'(t) - 1 on [0, horizon].
 * Throws AlreadyAnnihilating or NoThreshold.
 */
double ea_threshold_time(const LambdaTrajectory& left,
                         const LambdaTrajectory& right, double horizon);

/**
 * Witness-family member whose output at time tau has the smallest
 * partial-transpose eigenvalue. Ties within 1e-12 go to the earlier member.
 */
PureTwoQubit robust_unital_state(const LambdaTrajectory& left,
                                 const LambdaTrajectory& right, double tau);

/**
 * Maximally entangled states (|a>|b> + e^{i theta}|a'>|b'>)/sqrt(2) built
 * from Pauli eigenbases with theta a multiple of pi/2, deduplicated up to
 * global phase. The single-excitation state (|01>+|10>)/sqrt(2) comes
 * first, (|00>+|11>)/sqrt(2) is also present.
 */
const std::vector<PureTwoQubit>& witness_family();

}  // namespace qrobust
