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

#include "qrobust/scan.hpp"

#include <vector>

namespace qrobust {

Crossing last_crossing(const std::function<bool(double)>& positive,
                       double horizon, int steps, double tol) {
  if (!positive(0.0)) return {CrossingStatus::NegativeAtStart, 0.0};
  const double h = horizon / steps;
  std::vector<bool> sign(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k)
    sign[static_cast<std::size_t>(k)] = k == 0 ? true : positive(k * h);
  if (sign.back()) return {CrossingStatus::PositiveAtHorizon, horizon};

  int last = steps - 1;
  while (!sign[static_cast<std::size_t>(last)]) --last;
  double lo = last * h;
  double hi = (last + 1 == steps) ? horizon : (last + 1) * h;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (positive(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {CrossingStatus::Found, 0.5 * (lo + hi)};
}

}  // namespace qrobust
