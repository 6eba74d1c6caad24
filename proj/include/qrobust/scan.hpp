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

#include <functional>

namespace qrobust {

enum class CrossingStatus { Found, NegativeAtStart, PositiveAtHorizon };

struct Crossing {
  CrossingStatus status = CrossingStatus::Found;
  double time = 0.0;
};

/**
 * Locates the last time at which `positive(t)` switches from true to false
 * on [0, horizon]. The interval is scanned in `steps` uniform steps and the
 * last bracketing step is bisected until its width is below `tol`.
 *
 * Reports NegativeAtStart if the predicate is false at t = 0 and
 * PositiveAtHorizon if it is still true at the horizon.
 */
Crossing last_crossing(const std::function<bool(double)>& positive,
                       double horizon, int steps = 1000, double tol = 1e-10);

}  // namespace qrobust
