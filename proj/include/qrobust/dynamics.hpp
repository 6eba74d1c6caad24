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

#include <utility>
#include <vector>

#include "qrobust/channels.hpp"
#include "qrobust/qubit_algebra.hpp"
#include "qrobust/sinkhorn.hpp"

namespace qrobust {

enum class NoiseKind { GAD, InfTempAD, Depolarizing, Tabulated };

/**
 * Time-dependent single-qubit noise.
 *
 * GAD relaxes towards the thermal state with ground population w at rate
 * gamma: lambda = (e^{-gt}, e^{-gt}, e^{-2gt}), t_3 = (2w-1)(1-e^{-2gt}).
 * InfTempAD is the w = 1/2 case. Depolarizing shrinks all three Bloch
 * components by e^{-gt}. Tabulated interpolates a list of transfer
 * matrices linearly in time.
 */
class NoiseFamily {
 public:
  static NoiseFamily gad(double gamma, double w);
  static NoiseFamily inf_temp_ad(double gamma);
  static NoiseFamily depolarizing(double gamma);
  /** Times must be strictly increasing; at least one entry. */
  static NoiseFamily tabulated(std::vector<std::pair<double, TransferMatrix>> table);

  NoiseKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double w() const noexcept { return w_; }
  const std::vector<std::pair<double, TransferMatrix>>& table() const noexcept {
    return table_;
  }

  /** True when every member of the family is unital. */
  bool is_unital_family() const;

 private:
  NoiseFamily(NoiseKind kind, double gamma, double w) : kind_(kind), gamma_(gamma), w_(w) {}

  NoiseKind kind_;
  double gamma_;
  double w_;
  std::vector<std::pair<double, TransferMatrix>> table_;
};

/** Throws OutOfTable for tabulated families queried outside their range. */
TransferMatrix transfer_at(const NoiseFamily& f, double t);

// Closed forms for two qubits under identical GAD noise. All of them throw
// InvalidParameter for other kinds of family.

/** Common eigenvalue lambda_1 = lambda_2 of the reduced unital map. */
double gad_reduced_lambda(const NoiseFamily& f, double t);

/**
 * Positive diagonal input scaling of the reduction with the w-dependent
 * factor on |0><0|, normalized to unit largest entry.
 */
ComplexMat2 gad_scaling_B(const NoiseFamily& f, double t);

/** Lifetime of the optimal initial state. */
double gad_tau_tilde(const NoiseFamily& f);

/** Lifetime of (|00>+|11>)/sqrt(2). */
double gad_tau_bell(const NoiseFamily& f);

/** Right-hand side R of 1 - e^{-2 gamma t} = R at the annihilation time. */
double gad_ea_rhs(double w);

/** Time after which the channel pair annihilates all entanglement. */
double gad_ea_time(const NoiseFamily& f);

/** (B (x) B)|psi+> at t = tau_tilde, normalized; support on |00>, |11>. */
PureTwoQubit gad_robust_state(const NoiseFamily& f);

/**
 * (B (x) B)^{t0/tau_tilde}|psi+>, normalized: |psi+> at t0 = 0 and the
 * robust state at t0 = tau_tilde. Throws OutOfRange outside [0, tau_tilde].
 */
PureTwoQubit gad_interpolated_state(const NoiseFamily& f, double t0);

enum class LifetimeMethod { ClosedForm, Numeric };

struct LifetimeReport {
  double tau = 0.0;
  LifetimeMethod method = LifetimeMethod::Numeric;
  PureTwoQubit state_used = bell_state();
};

/**
 * Earliest time after which both families are entanglement breaking,
 * capped at `cap`. Returns `cap` if either family never gets there.
 */
double entanglement_breaking_horizon(const NoiseFamily& left,
                                     const NoiseFamily& right, double cap);

/**
 * Last time at which the negativity of the evolved state is above 1e-12,
 * from a 1000-step scan refined by bisection. Throws StillEntangled.
 */
LifetimeReport lifetime_of_state(const NoiseFamily& left,
                                 const NoiseFamily& right,
                                 const PureTwoQubit& psi, double horizon);

struct PairLifetime {
  LifetimeReport report;
  UnitalReduction left;   ///< reduction at the threshold time
  UnitalReduction right;
  PureTwoQubit unital_state = bell_state();  ///< robust state of the reduced pair
};

/**
 * Annihilation threshold of the reduced unital pair and the optimal
 * initial state (B (x) B')|psi_unital>. Throws NoThreshold,
 * AlreadyAnnihilating or BoundaryChannel.
 */
PairLifetime pair_ea_analysis(const NoiseFamily& left, const NoiseFamily& right,
                              double horizon);

LifetimeReport pair_ea_lifetime(const NoiseFamily& left,
                                const NoiseFamily& right, double horizon);

/**
 * (B^s (x) B'^s)|psi_unital> with s = t0/tau_tilde, normalized. The input
 * scalings must be Hermitian positive definite (true for the built-in
 * families); throws NonHermitian otherwise and OutOfRange for t0 outside
 * [0, tau_tilde].
 */
PureTwoQubit interpolated_state(const NoiseFamily& left,
                                const NoiseFamily& right, double t0,
                                double horizon);

/** Same, reusing a completed pair analysis. */
PureTwoQubit interpolated_state(const PairLifetime& analysis, double t0);

}  // namespace qrobust
