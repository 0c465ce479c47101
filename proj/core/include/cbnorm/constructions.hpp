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
// Explicit extremal maps together with their witnesses and exact targets.
#ifndef CBNORM_CONSTRUCTIONS_HPP_
#define CBNORM_CONSTRUCTIONS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbnorm/modmap.hpp"

namespace cbnorm {

// Closed-form target values.  An unset op/cb means only the witness-based
// lower bound is known.
struct ExpectedNorms {
  double hs = 0.0;
  std::optional<double> op;
  std::optional<double> cb;
  std::optional<double> op_upper;  // known upper bound when op is unknown
  std::optional<double> cb_lower;  // known lower bound when cb is unknown
};

struct NamedConstruction {
  std::string name;
  RightModuleMap map;
  std::vector<Witness> witnesses;  // witnesses[0] is at level 1 when present
  ExpectedNorms expected;
};

// A permutation of {0, ..., m-1}; entry i is the image of i.
using Permutation = std::vector<int>;

// g = diag(1, rho, ..., rho^{m-1}) with rho = exp(2 pi i / m).
CMatrix clock_matrix(int m);
// h e_i = e_{i+1 mod m}: the m-cycle (1 2 ... m).
CMatrix shift_matrix(int m);

// u e_i = e_{alpha(i)}.  Throws DomainError unless alpha is a bijection.
CMatrix perm_unitary(const Permutation& alpha);

// Parses 1-based cycle notation such as "(1)", "(1 2)" or "(1 3)(2 4)".
Permutation parse_cycles(std::string_view text, int m);

Permutation compose(const Permutation& alpha, const Permutation& beta);  // alpha o beta
Permutation inverse(const Permutation& alpha);

// Column operators a_j = g^{-(s-1)} h^{-r} for j = m r + s; the witness
// stacks x^1..x^m with columns v_j^i = rho^{(i-1)(s-1)} e_{alpha^r(i)},
// divided by sqrt(m) so that it lies in the unit ball.
NamedConstruction thm_eg_map(int m);

// v_j^i with 1-based i in [1, m] and j in [1, m^2].
CVector thm_eg_vector(int m, int i, int j);

// The unnormalized stacked witness [x^1; ...; x^m] (norm sqrt(m)).
CMatrix thm_eg_witness_unnormalized(int m);

// The first n column operators of thm_eg_map(m) with the first n columns of
// its witness.  Requires 2 <= n <= m^2.
NamedConstruction truncated_eg_map(int m, int n);

NamedConstruction example_2x3();
NamedConstruction example_2x4();

// Permutation columns u_(1), u_(1 2), u_(1 3), u_(2 3) on M_{3,4}.
NamedConstruction p34_example();

RightModuleMap perm_map(const std::vector<Permutation>& alphas);

// Names: "2x3", "2x4", "msq:<m>", "trunc:<m>:<n>", "p34".  Throws
// DomainError on an unknown name.
NamedConstruction construction_by_name(std::string_view name);

}  // namespace cbnorm

#endif  // CBNORM_CONSTRUCTIONS_HPP_
