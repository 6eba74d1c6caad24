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

#include "qrobust/error.hpp"

namespace qrobust {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::NonUnitary: return "NonUnitary";
    case Errc::InvalidState: return "InvalidState";
    case Errc::InvalidChannel: return "InvalidChannel";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::IncompleteKraus: return "IncompleteKraus";
    case Errc::NotCompletelyPositive: return "NotCompletelyPositive";
    case Errc::NotUnital: return "NotUnital";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NoThreshold: return "NoThreshold";
    case Errc::AlreadyAnnihilating: return "AlreadyAnnihilating";
    case Errc::NoValidRoot: return "NoValidRoot";
    case Errc::PoleHit: return "PoleHit";
    case Errc::DegenerateScaling: return "DegenerateScaling";
    case Errc::BoundaryChannel: return "BoundaryChannel";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::OutOfTable: return "OutOfTable";
    case Errc::NeverAnnihilating: return "NeverAnnihilating";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::StillEntangled: return "StillEntangled";
  }
  return "Unknown";
}

DomainError::DomainError(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace qrobust
