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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qrobust/channels.hpp"
#include "qrobust/qubit_algebra.hpp"

namespace qrobust {

/** Rz(a) Ry(b) Rz(c). */
ComplexMat2 su2_from_euler(const Vec3& params);

/** Euler angles (a, b, c) of u up to a global phase. */
Vec3 euler_from_unitary(const ComplexMat2& u);

/**
 * A pure state written as (C (x) I)|psi+> with
 * C = U diag(sqrt(1 + sin alpha), sqrt(1 - sin alpha)) V, so that
 * alpha = 0 is maximally entangled, alpha = pi/2 is a product state, and
 * the negativity is cos(alpha)/2.
 */
struct PureStateSample {
  double alpha = 0.0;
  Vec3 u_params{};
  Vec3 v_params{};
  PureTwoQubit state = bell_state();
};

/** C for the given parameters; tr C^dagger C = 2. */
ComplexMat2 sample_operator(double alpha, const Vec3& u_params,
                            const Vec3& v_params);

/**
 * The witness family followed by a Halton sweep over (alpha, u, v).
 * `seed` shifts the starting index of the sweep.
 */
std::vector<PureStateSample> sample_pure_states(std::size_t n, std::uint64_t seed);

struct SampledVerdict {
  bool refuted = false;  ///< some sample stays entangled
  std::optional<std::size_t> witness_index;
  std::optional<PureTwoQubit> witness;
  double min_pt_eigenvalue = 0.0;  ///< smallest over all samples
};

/** Pushes every sample through the pair and looks for an NPT output. */
SampledVerdict ea_sampled_verdict(const TransferMatrix& left,
                                  const TransferMatrix& right, std::size_t n,
                                  std::uint64_t seed);

}  // namespace qrobust
