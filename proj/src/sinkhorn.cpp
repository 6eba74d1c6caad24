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

#include "qrobust/sinkhorn.hpp"

#include <algorithm>
#include <limits>

#include "qrobust/error.hpp"

namespace qrobust {

namespace {

// Shifts at or below this size are treated as exactly zero: the matching
// pole factor is divided out of the quartic and x_j is set to 0.
constexpr double kZeroShift = 1e-12;
constexpr double kImagTol = 1e-9;

Complex horner(const std::vector<double>& full, Complex z, Complex* deriv) {
  Complex p = 0.0, dp = 0.0;
  for (double a : full) {
    dp = dp * z + p;
    p = p * z + a;
  }
  if (deriv) *deriv = dp;
  return p;
}

Complex newton_polish(const std::vector<double>& full, Complex z) {
  Complex dp;
  const Complex p = horner(full, z, &dp);
  if (dp == Complex(0.0)) return z;
  const Complex next = z - p / dp;
  return std::abs(horner(full, next, nullptr)) <= std::abs(p) ? next : z;
}

std::vector<Complex> quadratic_roots(Complex p, Complex q) {
  const Complex s = std::sqrt(p * p - 4.0 * q);
  const Complex w = -0.5 * (p + ((std::conj(p) * s).real() >= 0.0 ? s : -s));
  if (w == Complex(0.0)) return {0.0, 0.0};
  return {w, q / w};
}

std::vector<Complex> cubic_roots(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex disc = std::sqrt(Complex(q * q / 4.0 + p * p * p / 27.0));
  const Complex u1 = -0.5 * q + disc;
  const Complex u2 = -0.5 * q - disc;
  const Complex u = std::abs(u1) >= std::abs(u2) ? u1 : u2;
  std::vector<Complex> z;
  if (std::abs(u) == 0.0) {
    z = {0.0, 0.0, 0.0};
  } else {
    const Complex cr = std::pow(u, 1.0 / 3.0);
    const Complex omega = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
    Complex w = cr;
    for (int k = 0; k < 3; ++k) {
      z.push_back(w - p / (3.0 * w));
      w *= omega;
    }
  }
  for (auto& r : z) r -= a / 3.0;
  return z;
}

std::vector<Complex> quartic_roots(double b, double c, double d, double e) {
  const double b2 = b * b;
  const double p = c - 3.0 * b2 / 8.0;
  const double q = d - b * c / 2.0 + b2 * b / 8.0;
  const double r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
  std::vector<Complex> z;
  const double scale = 1.0 + std::abs(p) + std::abs(r);
  if (std::abs(q) <= 1e-14 * scale) {
    for (Complex u : quadratic_roots(p, r)) {
      const Complex s = std::sqrt(u);
      z.push_back(s);
      z.push_back(-s);
    }
  } else {
    // Resolvent m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0; q != 0 keeps m != 0.
    const auto ms = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
    Complex m = ms[0];
    for (const auto& x : ms)
      if (std::abs(x) > std::abs(m)) m = x;
    const Complex s = std::sqrt(2.0 * m);
    const Complex plus = std::sqrt(-2.0 * p - 2.0 * m - 2.0 * q / s);
    const Complex minus = std::sqrt(-2.0 * p - 2.0 * m + 2.0 * q / s);
    z = {0.5 * (s + plus), 0.5 * (s - plus), 0.5 * (-s + minus),
         0.5 * (-s - minus)};
  }
  for (auto& x : z) x -= b / 4.0;
  return z;
}

// Multiplies a monic polynomial (highest coefficient first) by (y - root).
std::vector<double> times_linear(const std::vector<double>& p, double root) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += p[k];
    out[k + 1] -= root * p[k];
  }
  return out;
}

// The quartic equals (y - 1) prod_j (y - l_j) + y sum_j t_j^2 prod_{k != j} (y - l_k)
// with l_j = lambda_j^2, so every direction with t_j = 0 contributes an exact
// factor (y - l_j). Returns the cofactor over the directions in `active`.
std::vector<double> reduced_polynomial(const DiagonalChannel& c,
                                       const std::vector<std::size_t>& active) {
  std::vector<double> p = times_linear({1.0}, 1.0);
  for (std::size_t a : active) p = times_linear(p, c.lambda[a] * c.lambda[a]);
  for (std::size_t a : active) {
    std::vector<double> term{c.shift[a] * c.shift[a]};
    for (std::size_t b : active)
      if (b != a) term = times_linear(term, c.lambda[b] * c.lambda[b]);
    term.push_back(0.0);
    const std::size_t offset = p.size() - term.size();
    for (std::size_t k = 0; k < term.size(); ++k) p[offset + k] += term[k];
  }
  return p;
}

RealMat4 rotation4(const RealMat3& q) { return assemble(q, {0.0, 0.0, 0.0}); }

ComplexMat2 pauli_combination(double c0, const Vec3& v) {
  const auto& s = pauli();
  return s[0] * Complex(c0) + s[1] * Complex(v[0]) + s[2] * Complex(v[1]) +
         s[3] * Complex(v[2]);
}

[[noreturn]] void boundary(const DomainError& e) {
  throw DomainError(Errc::BoundaryChannel, e.what());
}

}  // namespace

double QuarticCoefficients::evaluate(double y) const {
  return (((y + b) * y + c) * y + d) * y + e;
}

QuarticCoefficients quartic_coefficients(const DiagonalChannel& ch) {
  const double l1 = ch.lambda[0] * ch.lambda[0];
  const double l2 = ch.lambda[1] * ch.lambda[1];
  const double l3 = ch.lambda[2] * ch.lambda[2];
  const double t1 = ch.shift[0] * ch.shift[0];
  const double t2 = ch.shift[1] * ch.shift[1];
  const double t3 = ch.shift[2] * ch.shift[2];
  const double pairs = l1 * l2 + l1 * l3 + l2 * l3;
  QuarticCoefficients q;
  q.b = t1 + t2 + t3 - l1 - l2 - l3 - 1.0;
  q.c = l1 * (1.0 - t2 - t3) + l2 * (1.0 - t1 - t3) + l3 * (1.0 - t1 - t2) +
        pairs;
  q.d = t1 * l2 * l3 + l1 * t2 * l3 + l1 * l2 * t3 - l1 * l2 * l3 - pairs;
  q.e = l1 * l2 * l3;
  return q;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  std::vector<double> full{1.0};
  full.insert(full.end(), coeffs.begin(), coeffs.end());
  std::vector<Complex> roots;
  switch (coeffs.size()) {
    case 0:
      return {};
    case 1:
      roots = {-coeffs[0]};
      break;
    case 2:
      roots = quadratic_roots(coeffs[0], coeffs[1]);
      break;
    case 3:
      roots = cubic_roots(coeffs[0], coeffs[1], coeffs[2]);
      break;
    case 4:
      roots = quartic_roots(coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
      break;
    default:
      throw DomainError(Errc::InvalidParameter, "polynomial degree above 4");
  }
  for (auto& r : roots) r = newton_polish(full, r);
  return roots;
}

double largest_real_root(const QuarticCoefficients& q, const DiagonalChannel& c) {
  std::vector<std::size_t> active;
  double floor = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < 3; ++j)
    if (std::abs(c.shift[j]) > kZeroShift) {
      active.push_back(j);
      floor = std::max(floor, c.lambda[j] * c.lambda[j]);
    }
  if (active.empty()) return 1.0;
  const std::vector<double> reduced =
      active.size() == 3 ? std::vector<double>{1.0, q.b, q.c, q.d, q.e}
                         : reduced_polynomial(c, active);
  const std::vector<double> lower(reduced.begin() + 1, reduced.end());
  double best = -std::numeric_limits<double>::infinity();
  for (const Complex& r : polynomial_roots(lower))
    if (std::abs(r.imag()) < kImagTol && r.real() > floor)
      best = std::max(best, r.real());
  if (!std::isfinite(best))
    throw DomainError(Errc::NoValidRoot, "no admissible real root");
  for (int k = 0; k < 2; ++k)
    best = newton_polish(reduced, best).real();
  if (best > 1.0 + 1e-10)
    throw DomainError(Errc::NoValidRoot, "largest root exceeds 1");
  return best;
}

ComplexMat2 FixedPointData::s_operator() const { return pauli_combination(1.0, x); }

FixedPointData fixed_point_data(const DiagonalChannel& c, double y) {
  FixedPointData f;
  f.y = y;
  double xi2 = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double gap = c.lambda[j] * c.lambda[j] - y;
    if (std::abs(c.shift[j]) <= kZeroShift) {
      f.x[j] = std::abs(gap) < 1e-14 ? 0.0 : y * c.shift[j] / gap;
    } else {
      if (std::abs(gap) < 1e-14)
        throw DomainError(Errc::PoleHit, "root coincides with lambda_j^2");
      f.x[j] = y * c.shift[j] / gap;
    }
    xi2 += c.lambda[j] * c.lambda[j] * f.x[j] * f.x[j];
  }
  f.x_norm = norm(f.x);
  f.xi = std::sqrt(xi2);
  return f;
}

ScalingOperators scaling_operators(const DiagonalChannel& c,
                                   const FixedPointData& f) {
  const double x = f.x_norm;
  const double y = f.y;
  const double xi = f.xi;
  if (x >= 1.0 - 1e-12 || xi >= y - 1e-12)
    throw DomainError(Errc::DegenerateScaling, "scaling operator is singular");

  // sqrt(I + x.s) = (sp + sm)/2 I + x.s / (sp + sm).
  const double sp = std::sqrt(1.0 + x), sm = std::sqrt(1.0 - x);
  ScalingOperators out;
  out.a_tilde = pauli_combination(
      0.5 * (sp + sm),
      {f.x[0] / (sp + sm), f.x[1] / (sp + sm), f.x[2] / (sp + sm)});

  // (y I + n.s)^{-1/2} with n_j = lambda_j x_j and |n| = xi.
  const double yp = std::sqrt(y + xi), ym = std::sqrt(y - xi);
  const double q = yp * ym;
  const double c0 = (yp + ym) / (2.0 * q);
  const double c1 = -1.0 / ((yp + ym) * q);
  out.b_tilde = pauli_combination(
      c0, {c1 * c.lambda[0] * f.x[0], c1 * c.lambda[1] * f.x[1],
           c1 * c.lambda[2] * f.x[2]});
  return out;
}

RealMat3 reduced_unital_matrix(const DiagonalChannel& c, const FixedPointData& f) {
  const double x2 = f.x_norm * f.x_norm;
  const double y = f.y;
  const double s1 = std::sqrt(1.0 - x2);
  const double q = std::sqrt((y - f.xi) * (y + f.xi));
  const double lead = (1.0 - x2) / q;
  // (1 - s1)/x^2 and (y - q)/xi^2 in cancellation-free form.
  const double ka = 1.0 / (1.0 + s1);
  const double kb = 1.0 / (y + q);
  RealMat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double li = c.lambda[i];
      const double rank_one =
          (ka / q - li * li * kb / (s1 * y)) * f.x[i] * c.lambda[j] * f.x[j];
      m(i, j) = lead * ((i == j ? li / s1 : 0.0) + rank_one);
    }
  return m;
}

SpecialDiagonalization special_diagonalize(const RealMat3& m) {
  const CanonicalForm cf =
      canonical_form(TransferMatrix::from_matrix(rotation4(m)));
  return {cf.rotation_out, cf.channel.lambda, cf.rotation_in};
}

UnitalReduction decompose(const TransferMatrix& m) {
  const CanonicalForm cf = canonical_form(m);
  const DiagonalChannel& c = cf.channel;

  if (!c.is_unital(kZeroShift)) {
    if (!(ellipsoid_value(c) < 1.0 - 1e-10))
      throw DomainError(Errc::BoundaryChannel,
                        "shift is not inside the open ellipsoid");
    if (!classify(c).positive)
      throw DomainError(Errc::BoundaryChannel, "channel is not positive");
  } else if (std::abs(c.lambda[0]) > 1.0 + 1e-12) {
    throw DomainError(Errc::BoundaryChannel, "channel is not positive");
  }

  FixedPointData f;
  ScalingOperators ops;
  try {
    f = fixed_point_data(c, largest_real_root(quartic_coefficients(c), c));
    ops = scaling_operators(c, f);
  } catch (const DomainError& e) {
    boundary(e);
  }
  const SpecialDiagonalization sd = special_diagonalize(reduced_unital_matrix(c, f));

  const ComplexMat2 u_out = su2_from_rotation(cf.rotation_out);
  const ComplexMat2 u_in = su2_from_rotation(cf.rotation_in);
  const ComplexMat2 u_u = su2_from_rotation(sd.q_u);
  const ComplexMat2 u_v = su2_from_rotation(sd.q_v);

  UnitalReduction r;
  r.a_tilde = ops.a_tilde;
  r.b_tilde = ops.b_tilde;
  r.a_op = adjoint(u_u) * ops.a_tilde * adjoint(u_out);
  r.b_op = adjoint(u_in) * ops.b_tilde * adjoint(u_v);
  r.lambda_tilde = sd.lambda_tilde;
  r.q_u = sd.q_u;
  r.q_v = sd.q_v;
  r.fixed_point = u_out * f.s_operator() * adjoint(u_out);

  const RealMat4 reduced =
      conjugation_matrix(r.a_op) * m.matrix() * conjugation_matrix(r.b_op);
  r.residual = max_abs_diff(
      reduced, assemble(RealMat3::diagonal(r.lambda_tilde), {0.0, 0.0, 0.0}));
  if (!(r.residual < 1e-9))
    throw DomainError(Errc::VerificationFailed,
                      "reduced map is not diag(1, lambda_tilde)");
  return r;
}

UnitalReduction decompose_axial(const DiagonalChannel& c) {
  if (std::abs(c.shift[0]) > kZeroShift || std::abs(c.shift[1]) > kZeroShift)
    throw DomainError(Errc::InvalidParameter, "shift is not along the z axis");
  const double l1 = c.lambda[0], l2 = c.lambda[1], l3 = c.lambda[2];
  const double t3 = c.shift[2];
  const double dp2 = (1.0 + t3) * (1.0 + t3) - l3 * l3;
  const double dm2 = (1.0 - t3) * (1.0 - t3) - l3 * l3;
  const double ep2 = (1.0 + l3) * (1.0 + l3) - t3 * t3;
  const double em2 = (1.0 - l3) * (1.0 - l3) - t3 * t3;
  if (dp2 <= 1e-12 || dm2 <= 1e-12 || ep2 <= 1e-12 || em2 <= 1e-12)
    throw DomainError(Errc::BoundaryChannel, "axial channel on the boundary");
  const double dp = std::sqrt(dp2), dm = std::sqrt(dm2);
  const double root = dp * dm;
  const double x3 =
      -t3 * (1.0 - t3 * t3 + l3 * l3 + root) / (1.0 - t3 * t3 - l3 * l3 + root);
  const double y = 1.0 + t3 * x3;
  const double e = std::sqrt(ep2) + std::sqrt(em2);

  UnitalReduction r;
  r.a_tilde = ComplexMat2::diagonal({std::sqrt(2.0 * dm / (dp + dm)),
                                     std::sqrt(2.0 * dp / (dp + dm))});
  r.b_tilde = ComplexMat2::diagonal(
      {1.0 / std::sqrt(y + l3 * x3), 1.0 / std::sqrt(y - l3 * x3)});
  r.a_op = r.a_tilde;
  r.b_op = r.b_tilde;
  r.lambda_tilde = {2.0 * l1 / e, 2.0 * l2 / e, 4.0 * l3 / (e * e)};
  r.q_u = RealMat3::identity();
  r.q_v = RealMat3::identity();
  r.fixed_point = ComplexMat2::diagonal({1.0 + x3, 1.0 - x3});
  const RealMat4 reduced = conjugation_matrix(r.a_op) *
                           c.to_transfer().matrix() *
                           conjugation_matrix(r.b_op);
  r.residual = max_abs_diff(
      reduced, assemble(RealMat3::diagonal(r.lambda_tilde), {0.0, 0.0, 0.0}));
  return r;
}

ComplexMat2 iterate_fixed_point(const TransferMatrix& m, double tol,
                                int max_iter) {
  const RealMat4 forward = m.matrix();
  const RealMat4 backward = dual(m);
  ComplexMat2 s = ComplexMat2::identity();
  for (int k = 0; k < max_iter; ++k) {
    ComplexMat2 next = inverse(apply_map(forward, inverse(apply_map(backward, s))));
    next = 0.5 * (next + adjoint(next));
    next *= Complex(2.0) / trace(next);
    const double step = max_abs_diff(next, s);
    s = next;
    if (step < tol) return s;
  }
  throw DomainError(Errc::NoConvergence, "fixed-point iteration did not converge");
}

}  // namespace qrobust
