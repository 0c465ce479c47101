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
// Named verification cases: each runs the engine on a known construction and
// compares against its closed-form targets.
#ifndef CBNORM_TOOLS_VERIFY_HPP_
#define CBNORM_TOOLS_VERIFY_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cbnorm/modmap.hpp"
#include "cbnorm/norms.hpp"

namespace cbnorm::cli {

enum class Relation { kNear, kAtLeast, kAtMost };

struct Check {
  std::string description;
  Relation relation = Relation::kNear;
  double target = 0.0;
  double achieved = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyCase {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
};

struct VerifyOptions {
  double tol = 1e-6;
  int seeds = 100;  // random maps in the two-column case
  EngineOptions engine;
  int refine_restarts = 256;
  // Replaces the construction's map in cases with matching dimensions.
  std::optional<RightModuleMap> map_override;
};

// The case names "all" expands to, in order.
std::vector<std::string> all_case_names();

// Throws DomainError on an unknown selector.
std::vector<VerifyCase> run_verify(std::string_view selector,
                                   const VerifyOptions& options);

void print_cases(const std::vector<VerifyCase>& cases, std::ostream& out);

// Largest real root of 18 t^3 - 72 t^2 + 33 t - 2, by bisection.
double p34_cubic_root();

}  // namespace cbnorm::cli

#endif  // CBNORM_TOOLS_VERIFY_HPP_
