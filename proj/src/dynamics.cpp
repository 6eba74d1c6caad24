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

#include "qrobust/dynamics.hpp"

#include <algorithm>
#include <numbers>

#include "qrobust/error.hpp"
#include "qrobust/scan.hpp"
#include "qrobust/unital_ea.hpp"

namespace qrobust {

namespace {

constexpr double kNegativityZero = 1e-12;

void require_gad(const NoiseFamily& f) {
  if (f.kind() != NoiseKind::GAD && f.kind() != NoiseKind::InfTempAD)
    throw DomainError(Errc::InvalidParameter,
                      "closed form needs amplitude-damping noise");
}

// w[1 - w(1 - e)] and (1-w)[1 - (1-w)(1 - e)] with e = e^{-2 gamma t}.
std::pair<double, double> gad_brackets(double w, double e) {
  return {w * (1.0 - w * (1.0 - e)), (1.0 - w) * (1.0 - (1.0 - w) * (1.0 - e))};
}

// 8 (sqrt(2) + 1) w (1 - w).
double gad_eight_au(double w) {
  return 8.0 * (std::numbers::sqrt2 + 1.0) * w * (1.0 - w);
}

ComplexMat2 hermitian_power(const ComplexMat2& b, double s) {
  if (hermiticity_residual(b) > 1e-10 * std::max(1.0, max_abs(b)))
    throw DomainError(Errc::NonHermitian, "input scaling is not Hermitian");
  const auto eig = hermitian_eigen(b);
  if (!(eig.values[0] > 0.0))
    throw DomainError(Errc::NonHermitian, "input scaling is not positive");
  const ComplexMat2 d = ComplexMat2::diagonal(
      {std::pow(eig.values[0], s), std::pow(eig.values[1], s)});
  return eig.vectors * d * adjoint(eig.vectors);
}

LambdaTrajectory reduced_trajectory(const NoiseFamily& f) {
  return [f](double t) { return decompose(transfer_at(f, t)).lambda_tilde; };
}

bool is_entanglement_breaking(const NoiseFamily& f, double t) {
  return classify(canonical_form(transfer_at(f, t)).channel).entanglement_breaking;
}

double breaking_time(const NoiseFamily& f, double cap) {
  if (!is_entanglement_breaking(f, cap)) return cap;
  constexpr int kSteps = 200;
  int k = 1;
  while (k < kSteps && !is_entanglement_breaking(f, cap * k / kSteps)) ++k;
  double lo = cap * (k - 1) / kSteps, hi = cap * k / kSteps;
  while (hi - lo > 1e-10 * std::max(1.0, cap)) {
    const double mid = 0.5 * (lo + hi);
    if (is_entanglement_breaking(f, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

NoiseFamily NoiseFamily::gad(double gamma, double w) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError(Errc::InvalidParameter, "gamma must be positive");
  if (!(w > 0.0 && w < 1.0))
    throw DomainError(Errc::InvalidParameter, "w must lie in (0, 1)");
  return NoiseFamily(NoiseKind::GAD, gamma, w);
}

NoiseFamily NoiseFamily::inf_temp_ad(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError(Errc::InvalidParameter, "gamma must be positive");
  return NoiseFamily(NoiseKind::InfTempAD, gamma, 0.5);
}

NoiseFamily NoiseFamily::depolarizing(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError(Errc::InvalidParameter, "gamma must be positive");
  return NoiseFamily(NoiseKind::Depolarizing, gamma, 0.5);
}

NoiseFamily NoiseFamily::tabulated(
    std::vector<std::pair<double, TransferMatrix>> table) {
  if (table.empty())
    throw DomainError(Errc::InvalidParameter, "table is empty");
  for (std::size_t k = 1; k < table.size(); ++k)
    if (!(table[k].first > table[k - 1].first))
      throw DomainError(Errc::InvalidParameter,
                        "table times must be strictly increasing");
  NoiseFamily f(NoiseKind::Tabulated, 1.0, 0.5);
  f.table_ = std::move(table);
  return f;
}

bool NoiseFamily::is_unital_family() const {
  return kind_ == NoiseKind::InfTempAD || kind_ == NoiseKind::Depolarizing ||
         (kind_ == NoiseKind::GAD && w_ == 0.5);
}

TransferMatrix transfer_at(const NoiseFamily& f, double t) {
  if (f.kind() == NoiseKind::Tabulated) {
    const auto& tab = f.table();
    if (t < tab.front().first || t > tab.back().first)
      throw DomainError(Errc::OutOfTable, "time outside the tabulated range");
    auto hi = std::lower_bound(tab.begin(), tab.end(), t,
                               [](const auto& e, double v) { return e.first < v; });
    if (hi->first == t) return hi->second;
    const auto lo = hi - 1;
    const double s = (t - lo->first) / (hi->first - lo->first);
    return TransferMatrix::from_matrix(lo->second.matrix() * (1.0 - s) +
                                       hi->second.matrix() * s);
  }
  if (!(t >= 0.0))
    throw DomainError(Errc::OutOfRange, "time must be nonnegative");
  const double g = f.gamma();
  const double e1 = std::exp(-g * t);
  DiagonalChannel c;
  switch (f.kind()) {
    case NoiseKind::GAD:
    case NoiseKind::InfTempAD: {
      const double e2 = std::exp(-2.0 * g * t);
      c.lambda = {e1, e1, e2};
      c.shift = {0.0, 0.0, (2.0 * f.w() - 1.0) * (-std::expm1(-2.0 * g * t))};
      break;
    }
    case NoiseKind::Depolarizing:
      c.lambda = {e1, e1, e1};
      break;
    case NoiseKind::Tabulated:
      break;
  }
  return c.to_transfer();
}

double gad_reduced_lambda(const NoiseFamily& f, double t) {
  require_gad(f);
  const double w = f.w();
  const double e = std::exp(-2.0 * f.gamma() * t);
  const double one_minus_e = -std::expm1(-2.0 * f.gamma() * t);
  const double denom = std::sqrt(w * (1.0 - w)) * one_minus_e +
                       std::sqrt((1.0 - w * one_minus_e) * (w + e * (1.0 - w)));
  return std::exp(-f.gamma() * t) / denom;
}

ComplexMat2 gad_scaling_B(const NoiseFamily& f, double t) {
  require_gad(f);
  const auto [ground, excited] = gad_brackets(f.w(), std::exp(-2.0 * f.gamma() * t));
  const double b0 = std::sqrt(std::sqrt(ground));
  const double b1 = std::sqrt(std::sqrt(excited));
  const double top = std::max(b0, b1);
  return ComplexMat2::diagonal({b0 / top, b1 / top});
}

double gad_tau_tilde(const NoiseFamily& f) {
  require_gad(f);
  const double k = gad_eight_au(f.w());
  const double r = std::sqrt(1.0 + k) + 1.0;
  return std::log(r * r / k) / (2.0 * f.gamma());
}

double gad_tau_bell(const NoiseFamily& f) {
  require_gad(f);
  const double s = std::sqrt(2.0 * f.w() * (1.0 - f.w()));
  return std::log((1.0 + s) / s) / (2.0 * f.gamma());
}

double gad_ea_rhs(double w) {
  const double k = gad_eight_au(w);
  // (sqrt(1+k) - 1) / (k/2) without cancellation.
  return 2.0 / (std::sqrt(1.0 + k) + 1.0);
}

double gad_ea_time(const NoiseFamily& f) {
  require_gad(f);
  const double rhs = gad_ea_rhs(f.w());
  if (!(rhs < 1.0))
    throw DomainError(Errc::NeverAnnihilating,
                      "pair never becomes entanglement annihilating");
  return -std::log1p(-rhs) / (2.0 * f.gamma());
}

PureTwoQubit gad_robust_state(const NoiseFamily& f) {
  return gad_interpolated_state(f, gad_tau_tilde(f));
}

PureTwoQubit gad_interpolated_state(const NoiseFamily& f, double t0) {
  const double tau = gad_tau_tilde(f);
  if (!(t0 >= 0.0 && t0 <= tau * (1.0 + 1e-12)))
    throw DomainError(Errc::OutOfRange, "t0 outside [0, tau_tilde]");
  const double s = std::min(t0, tau) / (2.0 * tau);
  const auto [ground, excited] =
      gad_brackets(f.w(), std::exp(-2.0 * f.gamma() * tau));
  return PureTwoQubit::normalized(
      {std::pow(ground, s), 0.0, 0.0, std::pow(excited, s)});
}

double entanglement_breaking_horizon(const NoiseFamily& left,
                                     const NoiseFamily& right, double cap) {
  return std::max(breaking_time(left, cap), breaking_time(right, cap));
}

LifetimeReport lifetime_of_state(const NoiseFamily& left,
                                 const NoiseFamily& right,
                                 const PureTwoQubit& psi, double horizon) {
  if (!(horizon > 0.0))
    throw DomainError(Errc::InvalidParameter, "horizon must be positive");
  const TwoQubitDensity rho = psi.projector();
  const auto entangled = [&](double t) {
    return negativity(apply_pair(transfer_at(left, t), transfer_at(right, t),
                                 rho)) > kNegativityZero;
  };
  const Crossing c = last_crossing(entangled, horizon);
  if (c.status == CrossingStatus::PositiveAtHorizon)
    throw DomainError(Errc::StillEntangled, "state is entangled at the horizon");
  LifetimeReport r;
  r.tau = c.status == CrossingStatus::NegativeAtStart ? 0.0 : c.time;
  r.method = LifetimeMethod::Numeric;
  r.state_used = psi;
  return r;
}

PairLifetime pair_ea_analysis(const NoiseFamily& left, const NoiseFamily& right,
                              double horizon) {
  const LambdaTrajectory l = reduced_trajectory(left);
  const LambdaTrajectory r = reduced_trajectory(right);
  const double tau = ea_threshold_time(l, r, horizon);
  PairLifetime out{{}, decompose(transfer_at(left, tau)),
                   decompose(transfer_at(right, tau)),
                   robust_unital_state(l, r, tau)};
  out.report.tau = tau;
  out.report.method = LifetimeMethod::Numeric;
  out.report.state_used =
      apply_local(out.left.b_op, out.right.b_op, out.unital_state);
  return out;
}

LifetimeReport pair_ea_lifetime(const NoiseFamily& left,
                                const NoiseFamily& right, double horizon) {
  return pair_ea_analysis(left, right, horizon).report;
}

PureTwoQubit interpolated_state(const NoiseFamily& left,
                                const NoiseFamily& right, double t0,
                                double horizon) {
  return interpolated_state(pair_ea_analysis(left, right, horizon), t0);
}

PureTwoQubit interpolated_state(const PairLifetime& a, double t0) {
  const double tau = a.report.tau;
  if (!(t0 >= 0.0 && t0 <= tau * (1.0 + 1e-12)))
    throw DomainError(Errc::OutOfRange, "t0 outside [0, tau_tilde]");
  const double s = std::min(t0, tau) / tau;
  return apply_local(hermitian_power(a.left.b_op, s),
                     hermitian_power(a.right.b_op, s), a.unital_state);
}

}  // namespace qrobust
