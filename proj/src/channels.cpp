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

#include "qrobust/channels.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>

#include "qrobust/error.hpp"

namespace qrobust {

namespace {

constexpr std::size_t kSphereGridSize = 10000;

// Transpose of the Pauli matrices picks up a sign only for Y.
constexpr std::array<double, 4> kTransposeSign = {1.0, 1.0, -1.0, 1.0};

const std::array<ComplexMat4, 16>& pauli_pairs() {
  static const std::array<ComplexMat4, 16> pairs = [] {
    std::array<ComplexMat4, 16> p;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        p[4 * i + j] = kron(pauli()[i], pauli()[j]);
    return p;
  }();
  return pairs;
}

const std::vector<Vec3>& sphere_grid() {
  static const std::vector<Vec3> grid = [] {
    std::vector<Vec3> g(kSphereGridSize);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double n = static_cast<double>(kSphereGridSize);
    for (std::size_t k = 0; k < kSphereGridSize; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / n;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(k);
      g[k] = {rho * std::cos(phi), rho * std::sin(phi), z};
    }
    return g;
  }();
  return grid;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

Vec3 column(const RealMat3& m, std::size_t j) {
  return {m(0, j), m(1, j), m(2, j)};
}

void set_column(RealMat3& m, std::size_t j, const Vec3& v) {
  for (std::size_t i = 0; i < 3; ++i) m(i, j) = v[i];
}

// Unit vector orthogonal to a unit vector u.
Vec3 any_orthogonal(const Vec3& u) {
  const std::size_t k = std::abs(u[0]) <= std::abs(u[1])
                            ? (std::abs(u[0]) <= std::abs(u[2]) ? 0 : 2)
                            : (std::abs(u[1]) <= std::abs(u[2]) ? 1 : 2);
  Vec3 e{};
  e[k] = 1.0;
  const Vec3 w = cross(u, e);
  return scaled(w, 1.0 / norm(w));
}

double bloch_norm(const DiagonalChannel& c, const Vec3& r) {
  return norm({c.lambda[0] * r[0] + c.shift[0], c.lambda[1] * r[1] + c.shift[1],
               c.lambda[2] * r[2] + c.shift[2]});
}

}  // namespace

TransferMatrix TransferMatrix::from_matrix(const RealMat4& m) {
  const double r = std::max({std::abs(m(0, 0) - 1.0), std::abs(m(0, 1)),
                             std::abs(m(0, 2)), std::abs(m(0, 3))});
  if (!(r <= 1e-12))
    throw DomainError(Errc::InvalidChannel,
                      "transfer matrix row 0 is not (1,0,0,0)");
  return TransferMatrix(m);
}

TransferMatrix TransferMatrix::identity() {
  return TransferMatrix(RealMat4::identity());
}

bool DiagonalChannel::is_unital(double tol) const {
  return std::abs(shift[0]) <= tol && std::abs(shift[1]) <= tol &&
         std::abs(shift[2]) <= tol;
}

TransferMatrix DiagonalChannel::to_transfer() const {
  return TransferMatrix::from_matrix(assemble(RealMat3::diagonal(lambda), shift));
}

RealMat4 conjugation_matrix(const ComplexMat2& a) {
  const auto& s = pauli();
  const ComplexMat2 ad = adjoint(a);
  RealMat4 m;
  for (std::size_t j = 0; j < 4; ++j) {
    const ComplexMat2 image = a * s[j] * ad;
    for (std::size_t i = 0; i < 4; ++i)
      m(i, j) = 0.5 * trace(s[i] * image).real();
  }
  return m;
}

TransferMatrix ptm_from_kraus(const KrausSet& k) {
  ComplexMat2 completeness;
  RealMat4 m;
  for (const auto& op : k.operators) {
    completeness += adjoint(op) * op;
    m += conjugation_matrix(op);
  }
  if (k.operators.empty() ||
      max_abs_diff(completeness, ComplexMat2::identity()) > 1e-10)
    throw DomainError(Errc::IncompleteKraus,
                      "Kraus operators do not sum to the identity");
  // Completeness fixes row 0 up to rounding; pin it exactly.
  m(0, 0) = 1.0;
  m(0, 1) = m(0, 2) = m(0, 3) = 0.0;
  return TransferMatrix::from_matrix(m);
}

std::array<double, 4> pauli_kraus_weights(const Vec3& lambda) {
  const auto [l1, l2, l3] = lambda;
  const std::array<double, 4> q = {(1.0 + l1 + l2 + l3) / 4.0,
                                   (1.0 + l1 - l2 - l3) / 4.0,
                                   (1.0 - l1 + l2 - l3) / 4.0,
                                   (1.0 - l1 - l2 + l3) / 4.0};
  for (double x : q)
    if (x < -1e-12)
      throw DomainError(Errc::NotCompletelyPositive,
                        "Pauli weights have a negative entry");
  return q;
}

ComplexMat4 choi_from_ptm(const TransferMatrix& m) {
  ComplexMat4 choi;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) {
      const double c = 0.25 * kTransposeSign[j] * m(i, j);
      if (c != 0.0) choi += pauli_pairs()[4 * j + i] * Complex(c);
    }
  return choi;
}

KrausSet kraus_from_choi(const ComplexMat4& choi) {
  const auto eig = hermitian_eigen(choi);
  KrausSet k;
  for (std::size_t n = 0; n < 4; ++n) {
    const double mu = eig.values[n];
    if (mu <= 1e-14) continue;
    const double scale = std::sqrt(2.0 * mu);
    ComplexMat2 op;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t c = 0; c < 2; ++c)
        op(c, a) = scale * eig.vectors(2 * a + c, n);
    k.operators.push_back(op);
  }
  return k;
}

double ellipsoid_value(const DiagonalChannel& c) {
  double s = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double gap = 1.0 - std::abs(c.lambda[j]);
    if (c.shift[j] == 0.0) continue;
    if (gap <= 0.0) return std::numeric_limits<double>::infinity();
    s += c.shift[j] * c.shift[j] / (gap * gap);
  }
  return s;
}

double max_output_bloch_norm(const DiagonalChannel& c) {
  Vec3 best{0.0, 0.0, 1.0};
  double best_value = -1.0;
  for (const auto& r : sphere_grid()) {
    const double v = bloch_norm(c, r);
    if (v > best_value) {
      best_value = v;
      best = r;
    }
  }
  // |L r + t|^2 is convex, so stepping to the normalized gradient never
  // decreases it on the sphere.
  for (int it = 0; it < 200; ++it) {
    Vec3 g;
    for (std::size_t j = 0; j < 3; ++j)
      g[j] = c.lambda[j] * (c.lambda[j] * best[j] + c.shift[j]);
    const double gn = norm(g);
    if (gn == 0.0) break;
    const Vec3 next = scaled(g, 1.0 / gn);
    const double v = bloch_norm(c, next);
    if (v <= best_value) break;
    best_value = v;
    best = next;
  }
  return best_value;
}

ChannelClass classify(const DiagonalChannel& c) {
  ChannelClass out;
  const auto [l1, l2, l3] = c.lambda;
  out.unital = c.is_unital();
  if (out.unital) {
    out.positive = std::abs(l1) <= 1.0 + 1e-12 && std::abs(l2) <= 1.0 + 1e-12 &&
                   std::abs(l3) <= 1.0 + 1e-12;
    out.completely_positive = 1.0 + l3 >= std::abs(l1 + l2) - 1e-12 &&
                              1.0 - l3 >= std::abs(l1 - l2) - 1e-12;
    out.entanglement_breaking =
        out.completely_positive &&
        std::abs(l1) + std::abs(l2) + std::abs(l3) <= 1.0 + 1e-12;
    return out;
  }
  const ComplexMat4 choi = choi_from_ptm(c.to_transfer());
  out.completely_positive = hermitian_eigenvalues(choi)[0] >= -1e-12;
  out.entanglement_breaking =
      out.completely_positive &&
      hermitian_eigenvalues(partial_transpose(choi))[0] >= -1e-12;
  const bool bounded = std::abs(l1) <= 1.0 + 1e-12 &&
                       std::abs(l2) <= 1.0 + 1e-12 &&
                       std::abs(l3) <= 1.0 + 1e-12;
  out.positive = out.completely_positive ||
                 (bounded && ellipsoid_value(c) <= 1.0 + 1e-9 &&
                  max_output_bloch_norm(c) <= 1.0 + 1e-9);
  return out;
}

TransferMatrix compose(const TransferMatrix& outer, const TransferMatrix& inner) {
  return TransferMatrix::from_matrix(outer.matrix() * inner.matrix());
}

RealMat4 dual(const TransferMatrix& m) { return transpose(m.matrix()); }

ComplexMat2 apply_map(const RealMat4& m, const ComplexMat2& x) {
  const auto& s = pauli();
  std::array<Complex, 4> coeff;
  for (std::size_t j = 0; j < 4; ++j) coeff[j] = trace(s[j] * x);
  ComplexMat2 out;
  for (std::size_t i = 0; i < 4; ++i) {
    Complex c = 0.0;
    for (std::size_t j = 0; j < 4; ++j) c += m(i, j) * coeff[j];
    out += s[i] * (0.5 * c);
  }
  return out;
}

Svd3 svd3(const RealMat3& m) {
  RealMat3 w = m;
  RealMat3 v = RealMat3::identity();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = p + 1; q < 3; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          alpha += w(k, p) * w(k, p);
          beta += w(k, q) * w(k, q);
          gamma += w(k, p) * w(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-17 * std::sqrt(alpha * beta))
          continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < 3; ++k) {
          const double wp = w(k, p), wq = w(k, q);
          w(k, p) = c * wp - s * wq;
          w(k, q) = s * wp + c * wq;
          const double vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  std::array<std::size_t, 3> order = {0, 1, 2};
  std::array<double, 3> len;
  for (std::size_t k = 0; k < 3; ++k) len[k] = norm(column(w, k));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return len[x] > len[y]; });

  Svd3 out;
  std::array<Vec3, 3> cols;
  for (std::size_t k = 0; k < 3; ++k) {
    cols[k] = column(w, order[k]);
    set_column(out.v, k, column(v, order[k]));
  }
  const double tiny = 1e-300;
  const double s0 = norm(cols[0]);
  Vec3 u0 = s0 > tiny ? scaled(cols[0], 1.0 / s0) : Vec3{1.0, 0.0, 0.0};
  Vec3 r1 = cols[1];
  const double proj = dot(u0, r1);
  for (std::size_t i = 0; i < 3; ++i) r1[i] -= proj * u0[i];
  const double r1n = norm(r1);
  Vec3 u1 = r1n > tiny * 1e10 ? scaled(r1, 1.0 / r1n) : any_orthogonal(u0);
  Vec3 u2 = cross(u0, u1);
  double s2 = dot(u2, cols[2]);
  if (s2 < 0.0) {
    u2 = scaled(u2, -1.0);
    s2 = -s2;
  }
  out.s = {s0, norm(cols[1]), s2};
  set_column(out.u, 0, u0);
  set_column(out.u, 1, u1);
  set_column(out.u, 2, u2);
  return out;
}

CanonicalForm canonical_form(const TransferMatrix& m) {
  Svd3 d = svd3(block3(m.matrix()));
  Vec3 lambda = d.s;
  if (determinant(d.u) < 0.0) {
    for (std::size_t i = 0; i < 3; ++i) d.u(i, 2) = -d.u(i, 2);
    lambda[2] = -lambda[2];
  }
  if (determinant(d.v) < 0.0) {
    for (std::size_t i = 0; i < 3; ++i) d.v(i, 2) = -d.v(i, 2);
    lambda[2] = -lambda[2];
  }
  CanonicalForm out;
  out.rotation_out = d.u;
  out.rotation_in = transpose(d.v);
  out.channel.lambda = lambda;
  out.channel.shift = transpose(d.u) * m.shift();
  return out;
}

ComplexMat2 su2_from_rotation(const RealMat3& q) {
  const double tr = q(0, 0) + q(1, 1) + q(2, 2);
  double w, x, y, z;
  if (tr > 0.0) {
    w = 0.5 * std::sqrt(1.0 + tr);
    x = (q(2, 1) - q(1, 2)) / (4.0 * w);
    y = (q(0, 2) - q(2, 0)) / (4.0 * w);
    z = (q(1, 0) - q(0, 1)) / (4.0 * w);
  } else if (q(0, 0) >= q(1, 1) && q(0, 0) >= q(2, 2)) {
    x = 0.5 * std::sqrt(std::max(0.0, 1.0 + q(0, 0) - q(1, 1) - q(2, 2)));
    w = (q(2, 1) - q(1, 2)) / (4.0 * x);
    y = (q(0, 1) + q(1, 0)) / (4.0 * x);
    z = (q(0, 2) + q(2, 0)) / (4.0 * x);
  } else if (q(1, 1) >= q(2, 2)) {
    y = 0.5 * std::sqrt(std::max(0.0, 1.0 - q(0, 0) + q(1, 1) - q(2, 2)));
    w = (q(0, 2) - q(2, 0)) / (4.0 * y);
    x = (q(0, 1) + q(1, 0)) / (4.0 * y);
    z = (q(1, 2) + q(2, 1)) / (4.0 * y);
  } else {
    z = 0.5 * std::sqrt(std::max(0.0, 1.0 - q(0, 0) - q(1, 1) + q(2, 2)));
    w = (q(1, 0) - q(0, 1)) / (4.0 * z);
    x = (q(0, 2) + q(2, 0)) / (4.0 * z);
    y = (q(1, 2) + q(2, 1)) / (4.0 * z);
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  const Complex i(0.0, 1.0);
  const auto& s = pauli();
  return s[0] * Complex(w) - (s[1] * Complex(x) + s[2] * Complex(y) +
                              s[3] * Complex(z)) * i;
}

RealMat3 rotation_from_su2(const ComplexMat2& u) {
  return block3(conjugation_matrix(u));
}

ComplexMat4 apply_pair_matrix(const RealMat4& left, const RealMat4& right,
                              const ComplexMat4& rho) {
  const auto& basis = pauli_pairs();
  std::array<Complex, 16> c;
  for (std::size_t k = 0; k < 16; ++k) {
    Complex s = 0.0;
    // tr[(s_i (x) s_j) rho] without forming the product.
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t q = 0; q < 4; ++q) s += basis[k](r, q) * rho(q, r);
    c[k] = s;
  }
  // c' = M_left c M_right^T
  std::array<Complex, 16> tmp{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      if (left(i, k) == 0.0) continue;
      for (std::size_t j = 0; j < 4; ++j) tmp[4 * i + j] += left(i, k) * c[4 * k + j];
    }
  ComplexMat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < 4; ++l) s += tmp[4 * i + l] * right(j, l);
      if (s != Complex(0.0)) out += basis[4 * i + j] * (0.25 * s);
    }
  return out;
}

TwoQubitDensity apply_pair(const TransferMatrix& left,
                           const TransferMatrix& right,
                           const TwoQubitDensity& rho) {
  ComplexMat4 out = apply_pair_matrix(left.matrix(), right.matrix(), rho.matrix());
  out = 0.5 * (out + adjoint(out));
  if (hermitian_eigenvalues(out)[0] < -1e-8)
    throw DomainError(Errc::InvalidState,
                      "channel pair output is not positive semidefinite");
  return TwoQubitDensity::from_matrix(out, 1e-8);
}

}  // namespace qrobust
