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

#include "qrobust/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qrobust/error.hpp"
#include "qrobust/oracle.hpp"
#include "qrobust/scan.hpp"
#include "qrobust/sinkhorn.hpp"
#include "qrobust/unital_ea.hpp"

namespace qrobust::cli {

namespace {

using json = nlohmann::json;

constexpr double kNegativityZero = 1e-12;

std::string format12(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  return std::strtod(format12(x).c_str(), nullptr);
}

json complex_json(Complex z) { return json::array({round12(z.real()), round12(z.imag())}); }

json matrix_json(const ComplexMat2& m) {
  json a = json::array();
  for (const auto& z : m.a) a.push_back(complex_json(z));
  return a;
}

json state_json(const PureTwoQubit& psi) {
  json a = json::array();
  for (const auto& z : psi.amplitudes()) a.push_back(complex_json(z));
  return a;
}

json vec_json(const Vec3& v) {
  return json::array({round12(v[0]), round12(v[1]), round12(v[2])});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out_path);
  f << text;
}

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 parse_vec3(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3)
    throw InputError(std::string(key) + " must hold three numbers");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw InputError(std::string(key) + " must hold numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

struct Pair {
  NoiseFamily left;
  NoiseFamily right;
  bool symmetric_gad;
};

Pair make_pair(const RunConfig& cfg) {
  const FamilySpec second = cfg.family2.value_or(cfg.family);
  const auto is_ad = [](const FamilySpec& s) {
    return s.kind == "gad" || s.kind == "inftemp-ad";
  };
  const auto w_of = [](const FamilySpec& s) { return s.kind == "gad" ? s.w : 0.5; };
  const bool symmetric = is_ad(cfg.family) && is_ad(second) &&
                         cfg.family.gamma == second.gamma &&
                         w_of(cfg.family) == w_of(second);
  return {make_family(cfg.family), make_family(second), symmetric};
}

double horizon_for(const RunConfig& cfg, const Pair& p) {
  const double cap = cfg.t_max.value_or(
      100.0 / std::min(p.left.gamma(), p.right.gamma()));
  return entanglement_breaking_horizon(p.left, p.right, cap);
}

PureTwoQubit read_state_file(const std::string& path) {
  const json j = parse_json(read_file(path));
  if (!j.is_object() || !j.contains("state") || !j["state"].is_array() ||
      j["state"].size() != 4)
    throw InputError("state file must hold {\"state\": [[re, im] x 4]}");
  PureTwoQubit::Amplitudes a;
  for (std::size_t i = 0; i < 4; ++i) a[i] = parse_complex(j["state"][i]);
  return PureTwoQubit::normalized(a);
}

PureTwoQubit robust_state(const Pair& p, double horizon) {
  if (p.symmetric_gad) return gad_robust_state(p.left);
  return pair_ea_lifetime(p.left, p.right, horizon).state_used;
}

PureTwoQubit select_state(const std::string& sel, const RunConfig& cfg,
                          const Pair& p, double horizon) {
  if (sel == "bell") return bell_state();
  if (sel == "robust") return robust_state(p, horizon);
  if (sel == "interp") {
    if (p.symmetric_gad) return gad_interpolated_state(p.left, cfg.t0);
    return interpolated_state(p.left, p.right, cfg.t0, horizon);
  }
  if (sel == "file") {
    if (cfg.state_file.empty()) throw InputError("--state file needs --state-file");
    return read_state_file(cfg.state_file);
  }
  throw InputError("unknown state selector '" + sel + "'");
}

double evolved_negativity(const Pair& p, const PureTwoQubit& psi, double t) {
  const double n = negativity(
      apply_pair(transfer_at(p.left, t), transfer_at(p.right, t), psi.projector()));
  return n > kNegativityZero ? n : 0.0;
}

std::string run_decompose(const RunConfig& cfg) {
  if (cfg.channel_paths.size() != 1) throw InputError("decompose takes one channel file");
  const UnitalReduction r = decompose(parse_channel(read_file(cfg.channel_paths[0])));
  json j;
  j["A"] = matrix_json(r.a_op);
  j["B"] = matrix_json(r.b_op);
  j["lambda_tilde"] = vec_json(r.lambda_tilde);
  j["residual"] = round12(r.residual);
  return j.dump(2) + "\n";
}

std::string run_ea_check(const RunConfig& cfg) {
  if (cfg.channel_paths.size() != 2) throw InputError("ea-check takes two channel files");
  const TransferMatrix left = parse_channel(read_file(cfg.channel_paths[0]));
  const TransferMatrix right = parse_channel(read_file(cfg.channel_paths[1]));
  const DiagonalChannel cl = canonical_form(left).channel;
  const DiagonalChannel cr = canonical_form(right).channel;
  EaVerdict v;
  std::string method;
  if (cl.is_unital(1e-12) && cr.is_unital(1e-12)) {
    v = is_ea_pair(DiagonalChannel{cl.lambda, {}}, DiagonalChannel{cr.lambda, {}});
    method = "unital";
  } else {
    v = signed_permutation_max(decompose(left).lambda_tilde,
                               decompose(right).lambda_tilde);
    method = "sinkhorn";
  }
  const SampledVerdict s = ea_sampled_verdict(left, right, cfg.samples, cfg.seed);
  json j;
  j["annihilating"] = v.annihilating;
  j["max_value"] = round12(v.max_value);
  j["argmax"] = {{"perm", {v.argmax.perm[0] + 1, v.argmax.perm[1] + 1, v.argmax.perm[2] + 1}},
                 {"signs", v.argmax.signs}};
  j["method"] = method;
  j["sampled"] = {{"refuted", s.refuted},
                  {"samples", cfg.samples},
                  {"min_pt_eigenvalue", round12(s.min_pt_eigenvalue)},
                  {"witness_index", s.witness_index ? json(*s.witness_index) : json(nullptr)}};
  if (s.witness) j["sampled"]["witness"] = state_json(*s.witness);
  return j.dump(2) + "\n";
}

std::string run_lifetime(const RunConfig& cfg) {
  const Pair p = make_pair(cfg);
  const double horizon = horizon_for(cfg, p);
  if (cfg.states.size() != 1) throw InputError("lifetime takes one --state");
  const PureTwoQubit psi = select_state(cfg.states[0], cfg, p, horizon);
  const LifetimeReport r = lifetime_of_state(p.left, p.right, psi, horizon);
  json j;
  j["tau"] = round12(r.tau);
  j["method"] = "numeric";
  j["state"] = state_json(r.state_used);
  j["horizon"] = round12(horizon);
  return j.dump(2) + "\n";
}

std::string run_robust_state(const RunConfig& cfg) {
  const Pair p = make_pair(cfg);
  json j;
  if (p.symmetric_gad) {
    j["tau_tilde"] = round12(gad_tau_tilde(p.left));
    j["method"] = "closed_form";
    j["state"] = state_json(gad_robust_state(p.left));
  } else {
    const PairLifetime a = pair_ea_analysis(p.left, p.right, horizon_for(cfg, p));
    j["tau_tilde"] = round12(a.report.tau);
    j["method"] = "numeric";
    j["state"] = state_json(a.report.state_used);
    j["unital_state"] = state_json(a.unital_state);
    j["lambda_tilde"] = {vec_json(a.left.lambda_tilde), vec_json(a.right.lambda_tilde)};
  }
  return j.dump(2) + "\n";
}

json example_line(const std::string& name, const std::string& quantity,
                  double closed, double numeric) {
  return {{"name", name},
          {"quantity", quantity},
          {"closed_form", round12(closed)},
          {"numeric", round12(numeric)},
          {"abs_diff", round12(std::abs(closed - numeric))}};
}

std::string run_examples() {
  json lines = json::array();
  const auto horizon = [](const NoiseFamily& l, const NoiseFamily& r) {
    return entanglement_breaking_horizon(l, r, 100.0);
  };
  {
    const auto ad = NoiseFamily::inf_temp_ad(1.0);
    const double numeric = pair_ea_lifetime(ad, ad, horizon(ad, ad)).tau;
    lines.push_back(example_line("example-1", "tau_tilde",
                                 std::log(std::numbers::sqrt2 + 1.0) / 2.0, numeric));
  }
  {
    const auto ad = NoiseFamily::inf_temp_ad(1.0);
    const auto dep = NoiseFamily::depolarizing(1.0);
    const double numeric = pair_ea_lifetime(ad, dep, horizon(ad, dep)).tau;
    json line = example_line("example-2", "tau_tilde",
                             std::log((1.0 + std::sqrt(5.0)) / 2.0), numeric);
    line["approximation"] = round12(3.0 * std::log(3.0) / 7.0);
    lines.push_back(line);
  }
  {
    const auto gad = NoiseFamily::gad(1.0, 0.01);
    const double h = horizon(gad, gad);
    lines.push_back(example_line("example-3", "tau_tilde", gad_tau_tilde(gad),
                                 pair_ea_lifetime(gad, gad, h).tau));
    lines.push_back(example_line("example-3", "tau_bell", gad_tau_bell(gad),
                                 lifetime_of_state(gad, gad, bell_state(), h).tau));
  }
  {
    const auto gad = NoiseFamily::gad(1.0, 0.01);
    const auto dep = NoiseFamily::depolarizing(1.0);
    const double h = horizon(gad, dep);
    const auto excess = [&](double t) {
      const double l = gad_reduced_lambda(gad, t);
      return (1.0 + l) * (1.0 + l) - 1.0 - std::exp(dep.gamma() * t) > 0.0;
    };
    const double closed = last_crossing(excess, h).time;
    lines.push_back(example_line("example-4", "tau_tilde", closed,
                                 pair_ea_lifetime(gad, dep, h).tau));
  }
  return json{{"examples", lines}}.dump(2) + "\n";
}

}  // namespace

TransferMatrix parse_channel(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw InputError("channel JSON must be an object");
  const bool has_lambda = j.contains("lambda");
  const bool has_kraus = j.contains("kraus");
  if (has_lambda == has_kraus)
    throw InputError("channel JSON needs exactly one of \"lambda\" or \"kraus\"");
  for (const auto& item : j.items())
    if (item.key() != "lambda" && item.key() != "t" && item.key() != "kraus")
      throw InputError("unknown channel key '" + item.key() + "'");
  if (has_lambda) {
    DiagonalChannel c;
    c.lambda = parse_vec3(j["lambda"], "lambda");
    if (j.contains("t")) c.shift = parse_vec3(j["t"], "t");
    return c.to_transfer();
  }
  if (j.contains("t")) throw InputError("\"t\" only accompanies \"lambda\"");
  const json& ks = j["kraus"];
  if (!ks.is_array() || ks.empty()) throw InputError("kraus must be a nonempty list");
  KrausSet k;
  for (const auto& op : ks) {
    if (!op.is_array() || op.size() != 4)
      throw InputError("each Kraus operator needs four [re, im] entries");
    ComplexMat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.a[i] = parse_complex(op[i]);
    k.operators.push_back(m);
  }
  return ptm_from_kraus(k);
}

NoiseFamily make_family(const FamilySpec& spec) {
  if (spec.kind == "gad") return NoiseFamily::gad(spec.gamma, spec.w);
  if (spec.kind == "inftemp-ad") return NoiseFamily::inf_temp_ad(spec.gamma);
  if (spec.kind == "depolarizing") return NoiseFamily::depolarizing(spec.gamma);
  throw InputError("unknown family '" + spec.kind + "'");
}

std::string trace_csv(const RunConfig& cfg) {
  if (cfg.steps < 2) throw InputError("--steps must be at least 2");
  if (cfg.t_max && !(*cfg.t_max > 0.0)) throw InputError("--tmax must be positive");
  const Pair p = make_pair(cfg);
  const double horizon = horizon_for(cfg, p);
  const double t_max = cfg.t_max.value_or(horizon);

  struct Column {
    std::optional<PureTwoQubit> fixed;
  };
  std::vector<Column> columns;
  std::optional<PairLifetime> analysis;
  double tau = 0.0;
  for (const auto& sel : cfg.states) {
    if (sel == "interp-envelope") {
      if (p.symmetric_gad) {
        tau = gad_tau_tilde(p.left);
      } else {
        analysis = pair_ea_analysis(p.left, p.right, horizon);
        tau = analysis->report.tau;
      }
      columns.push_back({std::nullopt});
    } else {
      columns.push_back({select_state(sel, cfg, p, horizon)});
    }
  }

  std::string csv = "t";
  for (const auto& sel : cfg.states) csv += "," + sel;
  csv += "\n";
  for (int k = 0; k < cfg.steps; ++k) {
    const double t = t_max * k / (cfg.steps - 1);
    csv += format12(t);
    for (const auto& col : columns) {
      PureTwoQubit psi = bell_state();
      if (col.fixed) {
        psi = *col.fixed;
      } else {
        const double t0 = std::min(t, tau);
        psi = p.symmetric_gad ? gad_interpolated_state(p.left, t0)
                              : interpolated_state(*analysis, t0);
      }
      csv += "," + format12(evolved_negativity(p, psi, t));
    }
    csv += "\n";
  }
  return csv;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Entanglement lifetimes of two qubits under local qubit noise"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::string> kind2;
  std::optional<double> gamma2, w2;
  std::vector<std::string> states;

  const auto add_family = [&](CLI::App* s) {
    s->add_option("--family", cfg.family.kind, "noise family")
        ->check(CLI::IsMember({"gad", "inftemp-ad", "depolarizing"}));
    s->add_option("--gamma", cfg.family.gamma, "decay rate")->check(CLI::PositiveNumber);
    s->add_option("--w", cfg.family.w, "ground-state population (gad)");
    s->add_option("--family2", kind2, "noise family of the second qubit")
        ->check(CLI::IsMember({"gad", "inftemp-ad", "depolarizing"}));
    s->add_option("--gamma2", gamma2, "decay rate of the second qubit");
    s->add_option("--w2", w2, "ground-state population of the second qubit");
    s->add_option("--tmax", cfg.t_max, "time horizon");
    s->add_option("--out", cfg.out_path, "output file");
  };

  auto* dec = app.add_subcommand("decompose", "reduce a channel to a unital one");
  dec->add_option("channel", cfg.channel_paths, "channel JSON file")->required()->expected(1);
  dec->add_option("--out", cfg.out_path, "output file");

  auto* ea = app.add_subcommand("ea-check", "entanglement annihilation of a channel pair");
  ea->add_option("channels", cfg.channel_paths, "two channel JSON files")->required()->expected(2);
  ea->add_option("--samples", cfg.samples, "sampled states")->check(CLI::PositiveNumber);
  ea->add_option("--seed", cfg.seed, "sampling offset");
  ea->add_option("--out", cfg.out_path, "output file");

  auto* life = app.add_subcommand("lifetime", "entanglement lifetime of a state");
  add_family(life);
  life->add_option("--state", states, "bell, robust, interp or file");
  life->add_option("--t0", cfg.t0, "interpolation time for --state interp");
  life->add_option("--state-file", cfg.state_file, "state JSON for --state file");

  auto* robust = app.add_subcommand("robust-state", "initial state with the longest lifetime");
  add_family(robust);

  auto* trace = app.add_subcommand("trace", "negativity over time as CSV");
  add_family(trace);
  trace->add_option("--steps", cfg.steps, "grid points");
  trace->add_option("--state", states, "columns: bell, robust, interp, interp-envelope, file")
      ->delimiter(',');
  trace->add_option("--t0", cfg.t0, "interpolation time for the interp column");
  trace->add_option("--state-file", cfg.state_file, "state JSON for the file column");

  auto* examples = app.add_subcommand("examples", "closed forms against numerics");
  examples->add_option("--out", cfg.out_path, "output file");

  std::vector<std::string> argv_store{"qrobust"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (kind2 || gamma2 || w2)
    cfg.family2 = FamilySpec{kind2.value_or(cfg.family.kind),
                             gamma2.value_or(cfg.family.gamma),
                             w2.value_or(cfg.family.w)};
  if (!states.empty()) cfg.states = states;

  try {
    std::string text;
    if (dec->parsed()) {
      text = run_decompose(cfg);
    } else if (ea->parsed()) {
      text = run_ea_check(cfg);
    } else if (life->parsed()) {
      text = run_lifetime(cfg);
    } else if (robust->parsed()) {
      text = run_robust_state(cfg);
    } else if (trace->parsed()) {
      if (states.empty()) cfg.states = {"bell", "robust"};
      text = trace_csv(cfg);
    } else {
      text = run_examples();
    }
    emit(cfg, text, out);
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qrobust::cli
