/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
// Closed-form bounds for C(m, n), the largest cb norm of a norm-one right
// D_n-module map on M_{m,n}, and per-map checks of the norm inequalities.
#ifndef CBNORM_BOUNDS_HPP_
#define CBNORM_BOUNDS_HPP_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cbnorm/norms.hpp"

namespace cbnorm {

// A dimension that may be infinite (a separable infinite-dimensional space).
class Extent {
 public:
  Extent(int value);  // NOLINT: implicit from int on purpose
  static Extent infinite();

  bool is_infinite() const { return infinite_; }
  // Throws DomainError on an infinite extent.
  int value() const;
  std::string to_string() const;

  friend bool operator==(const Extent& a, const Extent& b) = default;

 private:
  Extent() = default;
  int value_ = 0;
  bool infinite_ = false;
};

struct CBounds {
  Extent m = 1;
  Extent n = 1;
  double lower = 1.0;
  double upper = 1.0;
  std::optional<double> exact;
  std::vector<std::string> provenance;  // "rule-i" .. "rule-iv", in firing order
};

// Rules, in order: (i) m = 1 or n <= 2 gives 1; (ii) m > n reduces to (n, n);
// (iii) n >= m^2 gives sqrt(m); (iv) otherwise
// sqrt(max(floor(sqrt n), n / ceil(sqrt n))) <= C <= sqrt(min(m, n / 2)),
// exact when the two sides agree.  Throws DomainError for dims < 1.
CBounds c_bounds(Extent m, Extent n);

// Row-major over 1 <= m <= max_m, 1 <= n <= max_n.
std::vector<CBounds> c_bounds_table(int max_m, int max_n);

// c_bounds(m, n).lower * c_bounds(s, t).lower, a lower bound for C(ms, nt).
double product_bound(int m, int n, int s, int t);
// product_bound(m, n, s, t) <= c_bounds(ms, nt).upper up to rounding.
bool check_consistency(int m, int n, int s, int t);

std::string bounds_csv(const std::vector<CBounds>& rows);
Json bounds_to_json(const CBounds& b);

struct InequalityCheck {
  std::string rule;
  bool satisfied = true;
  double slack = 0.0;  // right side minus left side; negative on violation
};

struct InequalityOptions {
  double tol = 1e-8;
  // Engine settings for the intermediate amplification levels.
  EngineOptions engine;
};

// Checks hs <= ||T||, ||T|| <= sqrt(min(m,n)) hs, ||T_{k,1}|| <= sqrt(k) ||T||
// and monotonicity in k for 1 <= k <= min(m, n), cb <= sqrt(min(m^2, n)) hs,
// cb <= sqrt(min(m, n/2)) ||T|| for n >= 2 and cb <= C(m, n) ||T||.  Lower
// bounds stand on the left and certified upper bounds on the right, so a
// failure is a genuine contradiction.
std::vector<InequalityCheck> check_map_inequalities(
    const RightModuleMap& t, const NormReport& report,
    const InequalityOptions& options = {});

}  // namespace cbnorm

#endif  // CBNORM_BOUNDS_HPP_
