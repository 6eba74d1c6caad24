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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrobust {

/** Failure categories reported by the library. */
enum class Errc {
  NonHermitian,
  NonUnitary,
  InvalidState,
  InvalidChannel,
  InvalidParameter,
  IncompleteKraus,
  NotCompletelyPositive,
  NotUnital,
  NotPositive,
  NoThreshold,
  AlreadyAnnihilating,
  NoValidRoot,
  PoleHit,
  DegenerateScaling,
  BoundaryChannel,
  VerificationFailed,
  NoConvergence,
  OutOfTable,
  NeverAnnihilating,
  OutOfRange,
  StillEntangled,
};

std::string_view to_string(Errc code) noexcept;

/** Exception carrying an Errc. Every library failure is reported this way. */
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qrobust
