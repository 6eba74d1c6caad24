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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qrobust/channels.hpp"
#include "support/check.hpp"
#include "support/reference.hpp"

using namespace qrobust;
using namespace qrobust::testing;

namespace {

TransferMatrix random_cp(Rng& rng) {
  return ptm_from_kraus(to_kraus_set(random_stinespring(rng, 1 + rng.uniform() * 4)));
}

double det3(const RealMat3& m) { return determinant(m); }

bool is_rotation(const RealMat3& q) {
  return max_abs_diff(transpose(q) * q, RealMat3::identity()) < 1e-12 &&
         std::abs(det3(q) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("ptm_from_kraus on fixed channels") {
  const auto& s = pauli();
  CHECK(ptm_from_kraus({{s[0]}}).matrix() == RealMat4::identity());

  KrausSet dep;
  for (const auto& sigma : s) dep.operators.push_back(0.5 * sigma);
  CHECK(max_abs_diff(ptm_from_kraus(dep).matrix(),
                     RealMat4::diagonal({1.0, 0.0, 0.0, 0.0})) < 1e-15);

  const double p = 0.75;
  ComplexMat2 k0 = ComplexMat2::diagonal({1.0, std::sqrt(1.0 - p)});
  ComplexMat2 k1;
  k1(0, 1) = std::sqrt(p);
  const TransferMatrix ad = ptm_from_kraus({{k0, k1}});
  const RealMat4 expected = assemble(RealMat3::diagonal({0.5, 0.5, 0.25}), {0.0, 0.0, 0.75});
  CHECK(max_abs_diff(ad.matrix(), expected) < 1e-15);

  CHECK_ERRC(ptm_from_kraus({{k0}}), Errc::IncompleteKraus);
}

TEST_CASE("ptm_from_kraus matches the trace formula on random channels") {
  Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    const KrausList k = random_stinespring(rng, 1 + n % 4);
    const Eigen::Matrix4d ref = ptm(k);
    CHECK((to_eigen(ptm_from_kraus(to_kraus_set(k)).matrix()) - ref).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("pauli_kraus_weights") {
  const auto id = pauli_kraus_weights({1.0, 1.0, 1.0});
  CHECK(id[0] == 1.0);
  CHECK(id[1] == 0.0);
  const auto dep = pauli_kraus_weights({0.0, 0.0, 0.0});
  for (double q : dep) CHECK(q == 0.25);
  CHECK_ERRC(pauli_kraus_weights({1.0, -1.0, 1.0}), Errc::NotCompletelyPositive);
}

TEST_CASE("choi_from_ptm on fixed channels") {
  const ComplexMat4 id = choi_from_ptm(TransferMatrix::identity());
  CHECK(max_abs_diff(id, bell_state().projector_matrix()) < 1e-15);
  const ComplexMat4 dep =
      choi_from_ptm(TransferMatrix::from_matrix(RealMat4::diagonal({1.0, 0.0, 0.0, 0.0})));
  CHECK(max_abs_diff(dep, Complex(0.25) * ComplexMat4::identity()) < 1e-15);
  const ComplexMat4 transpose_map =
      choi_from_ptm(DiagonalChannel{{1.0, -1.0, 1.0}, {}}.to_transfer());
  CHECK(hermitian_eigenvalues(transpose_map)[0] < -1e-6);
}

TEST_CASE("choi matrix equals the Kraus-built Choi state") {
  Rng rng(23);
  for (int n = 0; n < 50; ++n) {
    const KrausList k = random_stinespring(rng, 3);
    KrausList id{Eigen::Matrix2cd::Identity()};
    const Eigen::Matrix4cd ref = apply_pair(id, k, projector(bell_state()));
    const ComplexMat4 ours = choi_from_ptm(ptm_from_kraus(to_kraus_set(k)));
    CHECK((to_eigen(ours) - ref).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("ptm -> choi -> kraus -> ptm round trip") {
  Rng rng(25);
  for (int n = 0; n < 200; ++n) {
    const TransferMatrix m = random_cp(rng);
    const TransferMatrix back = ptm_from_kraus(kraus_from_choi(choi_from_ptm(m)));
    CHECK(max_abs_diff(back.matrix(), m.matrix()) < 1e-9);
  }
}

TEST_CASE("classify") {
  const ChannelClass id = classify({{1.0, 1.0, 1.0}, {}});
  CHECK(id.positive);
  CHECK(id.completely_positive);
  CHECK(id.unital);
  CHECK_FALSE(id.entanglement_breaking);

  const ChannelClass eb = classify({{0.4, 0.3, 0.2}, {}});
  CHECK(eb.entanglement_breaking);
  CHECK(eb.completely_positive);

  const ChannelClass ad = classify({{0.5, 0.5, 0.25}, {0.0, 0.0, 0.75}});
  CHECK(ad.completely_positive);
  CHECK(ad.positive);
  CHECK_FALSE(ad.entanglement_breaking);
  CHECK_FALSE(ad.unital);

  const ChannelClass tr = classify({{1.0, -1.0, 1.0}, {}});
  CHECK(tr.positive);
  CHECK_FALSE(tr.completely_positive);

  CHECK_FALSE(classify({{0.5, 0.5, 0.5}, {0.0, 0.0, 0.6}}).positive);
}

TEST_CASE("classify agrees with the Choi spectrum of random channels") {
  Rng rng(27);
  for (int n = 0; n < 100; ++n) {
    const CanonicalForm cf = canonical_form(random_cp(rng));
    const ChannelClass c = classify(cf.channel);
    CHECK(c.completely_positive);
    CHECK(c.positive);
    const double min_pt =
        eigenvalues(::qrobust::testing::partial_transpose(
                        to_eigen(choi_from_ptm(cf.channel.to_transfer()))))
            .minCoeff();
    CHECK(c.entanglement_breaking == (min_pt >= -1e-12));
  }
}

TEST_CASE("max_output_bloch_norm and the ellipsoid") {
  CHECK(max_output_bloch_norm({{0.5, 0.4, 0.3}, {}}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(max_output_bloch_norm({{0.5, 0.5, 0.25}, {0.0, 0.0, 0.75}}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ellipsoid_value({{0.5, 0.5, 0.25}, {0.0, 0.0, 0.75}}) == doctest::Approx(1.0));
  CHECK(ellipsoid_value({{1.0, 1.0, 1.0}, {}}) == 0.0);
}

TEST_CASE("compose") {
  Rng rng(29);
  const TransferMatrix m = random_cp(rng);
  CHECK(compose(TransferMatrix::identity(), m).matrix() == m.matrix());
  const auto a = DiagonalChannel{{0.9, -0.5, 0.3}, {}}.to_transfer();
  const auto b = DiagonalChannel{{0.2, 0.4, -0.6}, {}}.to_transfer();
  CHECK(max_abs_diff(compose(a, b).matrix(),
                     RealMat4::diagonal({1.0, 0.18, -0.2, -0.18})) < 1e-15);
  for (int n = 0; n < 50; ++n) {
    Eigen::Matrix2cd ea, eb;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        ea(i, j) = rng.complex_normal();
        eb(i, j) = rng.complex_normal();
      }
    const RealMat4 lhs =
        conjugation_matrix(from_eigen(ea)) * conjugation_matrix(from_eigen(eb));
    const Eigen::Matrix4d rhs = ptm(KrausList{ea * eb});
    CHECK((to_eigen(lhs) - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dual") {
  const auto u = DiagonalChannel{{0.3, 0.2, 0.1}, {}}.to_transfer();
  CHECK(dual(u) == u.matrix());
  const auto shifted = DiagonalChannel{{0.5, 0.5, 0.25}, {0.0, 0.0, 0.75}}.to_transfer();
  CHECK(dual(shifted)(3, 0) == 0.0);
  CHECK(dual(shifted)(0, 3) == 0.75);
  Rng rng(31);
  for (int n = 0; n < 20; ++n) {
    const KrausList k = random_stinespring(rng, 2);
    const TransferMatrix m = ptm_from_kraus(to_kraus_set(k));
    CHECK(transpose(dual(m)) == m.matrix());
    const RealMat4 d = dual(m);
    // tr[s_i F(s_j)] = tr[F^dagger(s_i) s_j] over all Pauli pairs.
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        KrausList adj;
        for (const auto& op : k) adj.push_back(op.adjoint());
        const Eigen::Matrix2cd fi = apply_kraus(adj, paulis()[i]);
        const double ref = 0.5 * (fi * paulis()[j]).trace().real();
        CHECK(std::abs(d(j, i) - ref) < 1e-13);
      }
  }
}

TEST_CASE("apply_map agrees with the Kraus action on non-Hermitian operators") {
  Rng rng(33);
  const KrausList k = random_stinespring(rng, 3);
  const TransferMatrix m = ptm_from_kraus(to_kraus_set(k));
  Eigen::Matrix2cd x;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng.complex_normal();
  const ComplexMat2 ours = apply_map(m.matrix(), from_eigen(x));
  CHECK((to_eigen(ours) - apply_kraus(k, x)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("svd3 matches Eigen") {
  Rng rng(35);
  for (int n = 0; n < 200; ++n) {
    RealMat3 m;
    Eigen::Matrix3d e;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) e(i, j) = m(i, j) = rng.normal();
    const Svd3 s = svd3(m);
    const Eigen::Vector3d ref = Eigen::JacobiSVD<Eigen::Matrix3d>(e).singularValues();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s.s[i] - ref(i)) < 1e-12);
    CHECK(max_abs_diff(s.u * RealMat3::diagonal(s.s) * transpose(s.v), m) < 1e-12);
  }
}

TEST_CASE("canonical_form") {
  const auto diag = DiagonalChannel{{0.8, 0.5, 0.2}, {0.0, 0.1, 0.05}};
  const CanonicalForm d = canonical_form(diag.to_transfer());
  CHECK(max_abs_diff(d.rotation_out, RealMat3::identity()) < 1e-15);
  CHECK(max_abs_diff(d.rotation_in, RealMat3::identity()) < 1e-15);

  Rng rng(37);
  const ComplexMat2 u = from_eigen(random_unitary(rng));
  const CanonicalForm rot = canonical_form(ptm_from_kraus({{u}}));
  for (double l : rot.channel.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));

  for (int n = 0; n < 1000; ++n) {
    const TransferMatrix m = random_cp(rng);
    const CanonicalForm cf = canonical_form(m);
    CHECK(is_rotation(cf.rotation_out));
    CHECK(is_rotation(cf.rotation_in));
    const RealMat4 back =
        assemble(cf.rotation_out * RealMat3::diagonal(cf.channel.lambda) * cf.rotation_in,
                 cf.rotation_out * cf.channel.shift);
    CHECK(max_abs_diff(back, m.matrix()) < 1e-10);
    Eigen::Matrix3d e;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e(i, j) = m(i + 1, j + 1);
    const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(e).singularValues();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(std::abs(cf.channel.lambda[i]) - sv(i)) < 1e-10);
    CHECK(cf.channel.lambda[0] >= 0.0);
    CHECK(cf.channel.lambda[1] >= 0.0);
  }
}

TEST_CASE("su2_from_rotation inverts rotation_from_su2") {
  Rng rng(39);
  for (int n = 0; n < 200; ++n) {
    const ComplexMat2 u = from_eigen(random_unitary(rng));
    const RealMat3 q = rotation_from_su2(u);
    CHECK(is_rotation(q));
    const ComplexMat2 v = su2_from_rotation(q);
    CHECK(max_abs_diff(rotation_from_su2(v), q) < 1e-12);
    CHECK(std::abs(determinant(v) - 1.0) < 1e-12);
    // u s_j u^dagger = sum_i q_ij s_i.
    for (std::size_t j = 0; j < 3; ++j) {
      ComplexMat2 rhs;
      for (std::size_t i = 0; i < 3; ++i) rhs += Complex(q(i, j)) * pauli()[i + 1];
      CHECK(max_abs_diff(v * pauli()[j + 1] * adjoint(v), rhs) < 1e-12);
    }
  }
}

TEST_CASE("apply_pair on fixed inputs") {
  Rng rng(41);
  const TwoQubitDensity rho = TwoQubitDensity::from_matrix(random_density_matrix(rng));
  const TransferMatrix id = TransferMatrix::identity();
  CHECK(max_abs_diff(apply_pair(id, id, rho).matrix(), rho.matrix()) < 1e-14);

  const TransferMatrix dep = TransferMatrix::from_matrix(RealMat4::diagonal({1.0, 0.0, 0.0, 0.0}));
  const auto out = apply_pair(dep, id, bell_state().projector());
  CHECK(max_abs_diff(out.matrix(), Complex(0.25) * ComplexMat4::identity()) < 1e-15);
}

TEST_CASE("apply_pair reproduces the Bell-diagonal partial-transpose spectrum") {
  Rng rng(43);
  for (int n = 0; n < 200; ++n) {
    const Vec3 l = random_unital_lambda(rng), r = random_unital_lambda(rng);
    const auto out = apply_pair(DiagonalChannel{l, {}}.to_transfer(),
                                DiagonalChannel{r, {}}.to_transfer(), bell_state().projector());
    std::array<double, 4> expected{};
    int k = 0;
    for (double s3 : {1.0, -1.0})
      for (double s12 : {1.0, -1.0}) {
        const double a = l[0] * r[0], b = l[1] * r[1];
        expected[k++] = (1.0 + s3 * l[2] * r[2] + s12 * (a - s3 * b)) / 4.0;
      }
    std::sort(expected.begin(), expected.end());
    const auto ev = hermitian_eigenvalues(partial_transpose(out));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-13);
  }
}

TEST_CASE("apply_pair matches the Kraus tensor product and is linear") {
  Rng rng(45);
  for (int n = 0; n < 100; ++n) {
    const KrausList kl = random_stinespring(rng, 2), kr = random_stinespring(rng, 3);
    const TransferMatrix l = ptm_from_kraus(to_kraus_set(kl));
    const TransferMatrix r = ptm_from_kraus(to_kraus_set(kr));
    const ComplexMat4 a = random_density_matrix(rng), b = random_density_matrix(rng);
    const auto oa = apply_pair(l, r, TwoQubitDensity::from_matrix(a));
    CHECK((to_eigen(oa.matrix()) - apply_pair(kl, kr, to_eigen(a))).cwiseAbs().maxCoeff() <
          1e-13);
    const double p = rng.uniform();
    const ComplexMat4 mix = Complex(p) * a + Complex(1.0 - p) * b;
    const ComplexMat4 lhs = apply_pair(l, r, TwoQubitDensity::from_matrix(mix)).matrix();
    const ComplexMat4 rhs =
        Complex(p) * oa.matrix() +
        Complex(1.0 - p) * apply_pair(l, r, TwoQubitDensity::from_matrix(b)).matrix();
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("transfer matrix validation") {
  RealMat4 m = RealMat4::identity();
  m(0, 1) = 0.1;
  CHECK_ERRC(TransferMatrix::from_matrix(m), Errc::InvalidChannel);
}
