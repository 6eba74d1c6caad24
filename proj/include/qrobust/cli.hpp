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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrobust/channels.hpp"
#include "qrobust/dynamics.hpp"

namespace qrobust::cli {

enum class Command { Decompose, EaCheck, Lifetime, RobustState, Trace, Examples };

struct FamilySpec {
  std::string kind = "gad";  ///< gad, inftemp-ad or depolarizing
  double gamma = 1.0;
  double w = 0.5;
};

struct RunConfig {
  Command command = Command::Examples;
  std::vector<std::string> channel_paths;
  FamilySpec family;
  std::optional<FamilySpec> family2;
  std::optional<double> t_max;
  int steps = 201;
  /** bell, robust, interp, interp-envelope or file */
  std::vector<std::string> states{"bell"};
  double t0 = 0.0;
  std::string state_file;
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
};

/** Input files that do not follow the documented schema. */
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Parses channel JSON text; throws InputError on schema violations. */
TransferMatrix parse_channel(const std::string& json_text);

NoiseFamily make_family(const FamilySpec& spec);

/** Negativity table for the configured families and states. */
std::string trace_csv(const RunConfig& config);

/**
 * Runs one command line (without the program name). Returns 0 on success,
 * 1 on a domain error and 2 on a usage or input error.
 */
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace qrobust::cli
