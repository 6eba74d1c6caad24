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

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qrobust/cli.hpp"
#include "qrobust/dynamics.hpp"
#include "qrobust/sinkhorn.hpp"
#include "support/reference.hpp"

using namespace qrobust;
using namespace qrobust::testing;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("qrobust_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ComplexMat2 matrix_from(const json& j) {
  ComplexMat2 m;
  for (std::size_t i = 0; i < 4; ++i) m.a[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
  return m;
}

PureTwoQubit::Amplitudes amplitudes_from(const json& j) {
  PureTwoQubit::Amplitudes a;
  for (std::size_t i = 0; i < 4; ++i) a[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
  return a;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse_channel") {
  const TransferMatrix d = cli::parse_channel(R"({"lambda":[0.5,0.4,0.3],"t":[0,0,0.2]})");
  CHECK(d(1, 1) == 0.5);
  CHECK(d(3, 0) == 0.2);
  CHECK(cli::parse_channel(R"({"lambda":[0.5,0.4,0.3]})")(3, 0) == 0.0);
  const TransferMatrix k = cli::parse_channel(
      R"({"kraus":[[[1,0],[0,0],[0,0],[0.5,0]],[[0,0],[0.8660254037844386,0],[0,0],[0,0]]]})");
  CHECK(k(1, 1) == doctest::Approx(0.5));
  CHECK(k(3, 3) == doctest::Approx(0.25));
  CHECK(k(3, 0) == doctest::Approx(0.75));

  CHECK_THROWS_AS(cli::parse_channel(R"({"lambda":[1,1,1],"kraus":[]})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel(R"({"t":[0,0,0]})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel(R"({"lambda":[1,1]})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel(R"({"lambda":[1,1,1],"extra":1})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel(R"({"kraus":[[[1,0]]]})"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel("{not json"), cli::InputError);
  CHECK_THROWS_AS(cli::parse_channel("[1,2,3]"), cli::InputError);
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"trace", "--steps", "1"}).code == 2);
  CHECK(run({"trace", "--tmax", "-1"}).code == 2);
  CHECK(run({"lifetime", "--family", "thermal"}).code == 2);
  CHECK(run({"decompose", "/nonexistent/channel.json"}).code == 2);

  TempDir dir;
  const std::string bad = dir.write("bad.json", R"({"lambda":[1,1,1],"t":[0.5,0,0]})");
  const Run r = run({"decompose", bad});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("BoundaryChannel") != std::string::npos);
  const std::string schema = dir.write("schema.json", R"({"lambda":[1,1,1],"kraus":[]})");
  CHECK(run({"decompose", schema}).code == 2);
  CHECK(run({"lifetime", "--w", "0.01", "--tmax", "0.5"}).code == 1);
}

TEST_CASE("decompose output re-validates") {
  TempDir dir;
  const std::string text = R"({"lambda":[0.6,0.5,0.4],"t":[0.1,0.2,0.15]})";
  const Run r = run({"decompose", dir.write("c.json", text)});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const ComplexMat2 a = matrix_from(j["A"]), b = matrix_from(j["B"]);
  const RealMat4 reduced =
      conjugation_matrix(a) * cli::parse_channel(text).matrix() * conjugation_matrix(b);
  Vec3 lt;
  for (std::size_t i = 0; i < 3; ++i) lt[i] = j["lambda_tilde"][i].get<double>();
  CHECK(max_abs_diff(reduced, assemble(RealMat3::diagonal(lt), {0.0, 0.0, 0.0})) < 1e-10);
  CHECK(j["residual"].get<double>() < 1e-9);
}

TEST_CASE("ea-check") {
  TempDir dir;
  const std::string dep = dir.write("dep.json", R"({"lambda":[0,0,0]})");
  const Run r = run({"ea-check", dep, dep});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["annihilating"] == true);
  CHECK(j["max_value"] == 0.0);
  CHECK(j["method"] == "unital");
  CHECK(j["sampled"]["refuted"] == false);

  const std::string id = dir.write("id.json", R"({"lambda":[1,1,1]})");
  const json k = json::parse(run({"ea-check", id, id, "--samples", "50"}).out);
  CHECK(k["annihilating"] == false);
  CHECK(k["max_value"] == 3.0);
  CHECK(k["sampled"]["refuted"] == true);
  CHECK(k["sampled"]["witness_index"] == 0);
  CHECK(k["argmax"]["perm"] == json::array({1, 2, 3}));

  const std::string ad = dir.write("ad.json", R"({"lambda":[0.6,0.6,0.36],"t":[0,0,-0.3]})");
  const json s = json::parse(run({"ea-check", ad, ad}).out);
  CHECK(s["method"] == "sinkhorn");
  CHECK(s["annihilating"] == !s["sampled"]["refuted"].get<bool>());
  CHECK(run({"ea-check", ad}).code == 2);
}

TEST_CASE("lifetime and robust-state") {
  const Run r = run({"lifetime", "--family", "gad", "--gamma", "1", "--w", "0.01", "--state", "bell"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["tau"].get<double>() == doctest::Approx(1.0464).epsilon(1e-4));
  CHECK(j["method"] == "numeric");
  CHECK(overlap(PureTwoQubit::from_amplitudes(amplitudes_from(j["state"])), bell_state()) ==
        doctest::Approx(1.0));

  const json rb = json::parse(run({"lifetime", "--w", "0.01", "--state", "robust"}).out);
  CHECK(rb["tau"].get<double>() ==
        doctest::Approx(gad_tau_tilde(NoiseFamily::gad(1.0, 0.01))).epsilon(1e-9));

  const json rs = json::parse(run({"robust-state", "--w", "0.01"}).out);
  CHECK(rs["method"] == "closed_form");
  const PureTwoQubit psi = PureTwoQubit::normalized(amplitudes_from(rs["state"]));
  CHECK(overlap(psi, gad_robust_state(NoiseFamily::gad(1.0, 0.01))) == doctest::Approx(1.0));

  const json ex4 = json::parse(run({"robust-state", "--w", "0.01", "--family2", "depolarizing"}).out);
  CHECK(ex4["method"] == "numeric");
  CHECK(ex4["tau_tilde"].get<double>() == doctest::Approx(0.850236871976).epsilon(1e-9));

  TempDir dir;
  const std::string sf = dir.write("s.json", R"({"state":[[0,0],[1,0],[1,0],[0,0]]})");
  const json fl = json::parse(
      run({"lifetime", "--family", "inftemp-ad", "--state", "file", "--state-file", sf}).out);
  CHECK(fl["tau"].get<double>() == doctest::Approx(std::log(std::sqrt(2.0) + 1.0) / 2.0).epsilon(1e-8));
  const std::string bad = dir.write("b.json", R"({"state":[[0,0]]})");
  CHECK(run({"lifetime", "--state", "file", "--state-file", bad}).code == 2);
  CHECK(run({"lifetime", "--state", "file"}).code == 2);
  CHECK(run({"lifetime", "--state", "sideways"}).code == 2);
}

TEST_CASE("examples") {
  const Run r = run({"examples"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["examples"].size() == 5);
  for (const auto& line : j["examples"])
    CHECK(line["abs_diff"].get<double>() <= 1e-8 * line["closed_form"].get<double>());
  CHECK(j["examples"][0]["closed_form"].get<double>() ==
        doctest::Approx(std::log(std::sqrt(2.0) + 1.0) / 2.0).epsilon(1e-11));
  CHECK(j["examples"][1]["approximation"].get<double>() ==
        doctest::Approx(3.0 * std::log(3.0) / 7.0).epsilon(1e-11));
}

TEST_CASE("trace CSV") {
  const std::vector<std::string> args{"trace", "--w", "0.01", "--tmax", "2", "--steps", "41",
                                      "--state", "bell,robust,interp-envelope"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(a.out == slurp(std::string(QROBUST_GOLDEN_DIR) + "/trace_gad_w0.01.csv"));

  std::string header;
  const auto rows = parse_csv(a.out, &header);
  CHECK(header == "t,bell,robust,interp-envelope");
  REQUIRE(rows.size() == 41);
  CHECK(rows[0][1] == 0.5);
  CHECK(rows[0][2] == doctest::Approx(0.36483).epsilon(1e-5));
  CHECK(rows[0][3] == 0.5);
  CHECK(rows[40][0] == 2.0);
  // Bell dies at 1.0463, the robust state at 1.5650; grid step 0.05.
  CHECK(rows[20][1] > 0.0);
  CHECK(rows[21][1] == 0.0);
  CHECK(rows[31][2] > 0.0);
  CHECK(rows[32][2] == 0.0);

  TempDir dir;
  const std::string path = dir.file("trace.csv");
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--out", path});
  const Run f = run(to_file);
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  CHECK(slurp(path) == a.out);
}

TEST_CASE("golden trace agrees with the Kraus oracle") {
  std::string header;
  const auto rows =
      parse_csv(slurp(std::string(QROBUST_GOLDEN_DIR) + "/trace_gad_w0.01.csv"), &header);
  const NoiseFamily f = NoiseFamily::gad(1.0, 0.01);
  const double tau = gad_tau_tilde(f);
  const double e = std::exp(-2.0 * tau);
  const double g = 0.01 * (1.0 - 0.01 * (1.0 - e)), x = 0.99 * (1.0 - 0.99 * (1.0 - e));
  const auto state = [&](double s) {
    return PureTwoQubit::normalized({std::pow(g, s / 2.0), 0.0, 0.0, std::pow(x, s / 2.0)});
  };
  for (const auto& row : rows) {
    const double t = row[0];
    const KrausList k = gad_kraus(0.01, -std::expm1(-2.0 * t));
    const auto n = [&](const PureTwoQubit& psi) {
      const double v = ::qrobust::testing::negativity(apply_pair(k, k, projector(psi)));
      return v > 1e-12 ? v : 0.0;
    };
    CHECK(std::abs(row[1] - n(bell_state())) < 1e-11);
    CHECK(std::abs(row[2] - n(state(1.0))) < 1e-11);
    CHECK(std::abs(row[3] - n(state(std::min(t, tau) / tau))) < 1e-11);
  }
}

TEST_CASE("asymmetric trace") {
  const Run r = run({"trace", "--w", "0.01", "--family2", "depolarizing", "--steps", "5", "--state",
                     "bell,robust,interp,interp-envelope", "--t0", "0.4"});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == "t,bell,robust,interp,interp-envelope");
  CHECK(rows.size() == 5);
  CHECK(rows[0][4] == doctest::Approx(0.5));
}
