// Copyright 2026 The collcert Authors
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

#include "collcert/stats.h"

#include <cmath>
#include <string>

#include "boost/math/special_functions/beta.hpp"
#include "collcert/errors.h"

namespace collcert {

double ClopperPearsonLower(std::int64_t successes, std::int64_t trials,
                           double alpha) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw InputError("clopper-pearson: need 0 <= k <= n and n >= 1, got k=" +
                     std::to_string(successes) +
                     " n=" + std::to_string(trials));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("clopper-pearson: alpha must lie in (0, 1)");
  }
  if (successes == 0) return 0.0;
  const double n = static_cast<double>(trials);
  if (successes == trials) return std::pow(alpha, 1.0 / n);

  // Pr[Bin(n, p) >= k] = I_p(k, n - k + 1), increasing in p.
  const double a = static_cast<double>(successes);
  const double b = n - a + 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (boost::math::ibeta(a, b, mid) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace collcert
