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

#include "qrobust/oracle.hpp"

#include <array>
#include <numbers>

#include "qrobust/error.hpp"
#include "qrobust/unital_ea.hpp"

namespace qrobust {

namespace {

constexpr std::array<unsigned, 7> kHaltonBases = {2, 3, 5, 7, 11, 13, 17};
constexpr double kNptThreshold = -1e-10;

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

ComplexMat2 rz(double phi) {
  return ComplexMat2::diagonal({std::polar(1.0, -0.5 * phi), std::polar(1.0, 0.5 * phi)});
}

ComplexMat2 ry(double theta) {
  ComplexMat2 m;
  m(0, 0) = std::cos(0.5 * theta);
  m(0, 1) = -std::sin(0.5 * theta);
  m(1, 0) = std::sin(0.5 * theta);
  m(1, 1) = std::cos(0.5 * theta);
  return m;
}

PureTwoQubit state_from_operator(const ComplexMat2& c) {
  const double h = 1.0 / std::numbers::sqrt2;
  return PureTwoQubit::normalized(
      {h * c(0, 0), h * c(0, 1), h * c(1, 0), h * c(1, 1)});
}

}  // namespace

ComplexMat2 su2_from_euler(const Vec3& p) { return rz(p[0]) * ry(p[1]) * rz(p[2]); }

Vec3 euler_from_unitary(const ComplexMat2& u) {
  const ComplexMat2 s = u * (Complex(1.0) / std::sqrt(determinant(u)));
  const double c = std::abs(s(0, 0));
  const double sn = std::abs(s(1, 0));
  const double b = 2.0 * std::atan2(sn, c);
  if (sn <= 1e-12) return {2.0 * std::arg(s(1, 1)), b, 0.0};
  if (c <= 1e-12) return {2.0 * std::arg(s(1, 0)), b, 0.0};
  const double sum = 2.0 * std::arg(s(1, 1));
  const double diff = 2.0 * std::arg(s(1, 0));
  return {0.5 * (sum + diff), b, 0.5 * (sum - diff)};
}

ComplexMat2 sample_operator(double alpha, const Vec3& u_params,
                            const Vec3& v_params) {
  const double sa = std::sin(alpha);
  const ComplexMat2 d = ComplexMat2::diagonal(
      {std::sqrt(1.0 + sa), std::sqrt(std::max(0.0, 1.0 - sa))});
  return su2_from_euler(u_params) * d * su2_from_euler(v_params);
}

std::vector<PureStateSample> sample_pure_states(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError(Errc::InvalidParameter, "sample count must be positive");
  std::vector<PureStateSample> out;
  out.reserve(n);
  for (const auto& psi : witness_family()) {
    if (out.size() == n) return out;
    ComplexMat2 c;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        c(a, b) = std::numbers::sqrt2 * psi[2 * a + b];
    out.push_back({0.0, euler_from_unitary(c), {0.0, 0.0, 0.0}, psi});
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::uint64_t k = seed + 1; out.size() < n; ++k) {
    std::array<double, 7> h;
    for (std::size_t d = 0; d < 7; ++d) h[d] = radical_inverse(k, kHaltonBases[d]);
    PureStateSample s;
    s.alpha = 0.5 * std::numbers::pi * h[0];
    s.u_params = {two_pi * h[1], std::acos(1.0 - 2.0 * h[2]), two_pi * h[3]};
    s.v_params = {two_pi * h[4], std::acos(1.0 - 2.0 * h[5]), two_pi * h[6]};
    s.state = state_from_operator(sample_operator(s.alpha, s.u_params, s.v_params));
    out.push_back(s);
  }
  return out;
}

SampledVerdict ea_sampled_verdict(const TransferMatrix& left,
                                  const TransferMatrix& right, std::size_t n,
                                  std::uint64_t seed) {
  SampledVerdict v;
  const auto samples = sample_pure_states(n, seed);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const ComplexMat4 out = apply_pair_matrix(left.matrix(), right.matrix(),
                                              samples[k].state.projector_matrix());
    const double e = hermitian_eigenvalues(partial_transpose(out))[0];
    if (k == 0 || e < v.min_pt_eigenvalue) v.min_pt_eigenvalue = e;
    if (!v.refuted && e < kNptThreshold) {
      v.refuted = true;
      v.witness_index = k;
      v.witness = samples[k].state;
    }
  }
  return v;
}

}  // namespace qrobust
