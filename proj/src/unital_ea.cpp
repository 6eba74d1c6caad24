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

#include "qrobust/unital_ea.hpp"

#include <algorithm>
#include <numbers>

#include "qrobust/error.hpp"
#include "qrobust/scan.hpp"

namespace qrobust {

namespace {

bool bounded(const Vec3& l) {
  return std::abs(l[0]) <= 1.0 + 1e-12 && std::abs(l[1]) <= 1.0 + 1e-12 &&
         std::abs(l[2]) <= 1.0 + 1e-12;
}

EaVerdict make_verdict(const Vec3& lambda, const Vec3& lambda_prime,
                       const SignedPermutation& p) {
  EaVerdict v;
  v.argmax = p;
  v.max_value = p.apply(lambda, lambda_prime);
  v.annihilating = v.max_value <= 1.0 + 1e-12 && bounded(lambda) &&
                   bounded(lambda_prime);
  return v;
}

std::array<int, 3> descending_order(const Vec3& v) {
  std::array<int, 3> idx = {0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v[a] > v[b]; });
  return idx;
}

using Qubit = std::array<Complex, 2>;

struct Eigenbasis {
  Qubit plus;
  Qubit minus;
};

}  // namespace

RealMat3 SignedPermutation::matrix() const {
  RealMat3 m;
  for (std::size_t i = 0; i < 3; ++i) m(i, perm[i]) = signs[i];
  return m;
}

double SignedPermutation::apply(const Vec3& lambda,
                                const Vec3& lambda_prime) const {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    s += lambda[i] * signs[i] * lambda_prime[perm[i]];
  return s;
}

const std::array<SignedPermutation, 48>& SignedPermutation::all() {
  static const std::array<SignedPermutation, 48> table = [] {
    std::array<SignedPermutation, 48> t;
    std::array<int, 3> perm = {0, 1, 2};
    std::size_t n = 0;
    do {
      for (int mask = 0; mask < 8; ++mask) {
        SignedPermutation p;
        p.perm = perm;
        for (int i = 0; i < 3; ++i) p.signs[i] = (mask >> (2 - i)) & 1 ? 1 : -1;
        t[n++] = p;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return t;
  }();
  return table;
}

EaVerdict signed_permutation_max(const Vec3& lambda, const Vec3& lambda_prime) {
  const auto& all = SignedPermutation::all();
  std::size_t best = 0;
  double best_value = all[0].apply(lambda, lambda_prime);
  for (std::size_t k = 1; k < all.size(); ++k) {
    const double v = all[k].apply(lambda, lambda_prime);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return make_verdict(lambda, lambda_prime, all[best]);
}

EaVerdict is_ea_pair(const DiagonalChannel& left, const DiagonalChannel& right) {
  if (!left.is_unital(1e-12) || !right.is_unital(1e-12))
    throw DomainError(Errc::NotUnital, "channel has a nonzero shift");
  if (!bounded(left.lambda) || !bounded(right.lambda))
    throw DomainError(Errc::NotPositive, "channel eigenvalue exceeds 1");
  const auto nonnegative = [](const Vec3& l) {
    return l[0] >= 0.0 && l[1] >= 0.0 && l[2] >= 0.0;
  };
  if (!nonnegative(left.lambda) || !nonnegative(right.lambda))
    return signed_permutation_max(left.lambda, right.lambda);

  // Sorted pairing: row i of P sends the k-th largest of lambda to the k-th
  // largest of lambda_prime.
  const auto a = descending_order(left.lambda);
  const auto b = descending_order(right.lambda);
  SignedPermutation p;
  for (std::size_t k = 0; k < 3; ++k) p.perm[a[k]] = b[k];
  return make_verdict(left.lambda, right.lambda, p);
}

double ea_threshold_time(const LambdaTrajectory& left,
                         const LambdaTrajectory& right, double horizon) {
  if (!(horizon > 0.0))
    throw DomainError(Errc::InvalidParameter, "horizon must be positive");
  const auto entangling = [&](double t) {
    return signed_permutation_max(left(t), right(t)).max_value - 1.0 > 0.0;
  };
  const Crossing c = last_crossing(entangling, horizon);
  if (c.status == CrossingStatus::NegativeAtStart)
    throw DomainError(Errc::AlreadyAnnihilating,
                      "pair is entanglement annihilating at t = 0");
  if (c.status == CrossingStatus::PositiveAtHorizon)
    throw DomainError(Errc::NoThreshold,
                      "pair is not entanglement annihilating at the horizon");
  return c.time;
}

PureTwoQubit robust_unital_state(const LambdaTrajectory& left,
                                 const LambdaTrajectory& right, double tau) {
  const TransferMatrix l = DiagonalChannel{left(tau), {}}.to_transfer();
  const TransferMatrix r = DiagonalChannel{right(tau), {}}.to_transfer();
  const auto& family = witness_family();
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const ComplexMat4 out =
        apply_pair_matrix(l.matrix(), r.matrix(), family[k].projector_matrix());
    const double v = hermitian_eigenvalues(partial_transpose(out))[0];
    if (k == 0 || v < best_value - 1e-12) {
      best = k;
      best_value = v;
    }
  }
  return family[best];
}

const std::vector<PureTwoQubit>& witness_family() {
  static const std::vector<PureTwoQubit> family = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    const std::array<Eigenbasis, 3> bases = {
        Eigenbasis{{1.0, 0.0}, {0.0, 1.0}},  // Z
        Eigenbasis{{h, h}, {h, -h}},         // X
        Eigenbasis{{h, h * i}, {h, -h * i}}, // Y
    };
    std::vector<PureTwoQubit> out;
    for (const auto& a : bases)
      for (const auto& b : bases)
        for (int swap = 0; swap < 2; ++swap) {
          const Qubit& chi = swap == 0 ? b.minus : b.plus;
          const Qubit& chi_perp = swap == 0 ? b.plus : b.minus;
          for (int quarter = 0; quarter < 4; ++quarter) {
            const Complex phase =
                std::polar(1.0, quarter * std::numbers::pi / 2.0);
            PureTwoQubit::Amplitudes amps;
            for (std::size_t x = 0; x < 2; ++x)
              for (std::size_t y = 0; y < 2; ++y)
                amps[2 * x + y] = a.plus[x] * chi[y] +
                                  phase * a.minus[x] * chi_perp[y];
            const PureTwoQubit psi = PureTwoQubit::normalized(amps);
            const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& q) {
              return overlap(q, psi) > 1.0 - 1e-12;
            });
            if (!seen) out.push_back(psi);
          }
        }
    return out;
  }();
  return family;
}

}  // namespace qrobust
