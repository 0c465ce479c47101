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
#include "cbnorm/constructions.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "cbnorm/error.hpp"

namespace cbnorm {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

// rho^k for rho = exp(2 pi i / m), exact at the four axis points.
Complex root_of_unity(int k, int m) {
  const int r = mod(k, m);
  if ((4 * r) % m == 0) {
    switch ((4 * r) / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * r / m);
}

CMatrix real_matrix(int rows, int cols, std::initializer_list<double> entries) {
  CMatrix out(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = *it++;
  }
  return out;
}

void require_m(int m, int min, const char* what) {
  if (m < min) {
    throw DomainError(std::string(what) + ": m must be >= " +
                      std::to_string(min));
  }
}

int parse_int(std::string_view s, std::string_view name) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("unknown construction '" + std::string(name) + "'");
  }
  return v;
}

}  // namespace

CMatrix clock_matrix(int m) {
  require_m(m, 1, "clock_matrix");
  CMatrix g = CMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) g(i, i) = root_of_unity(i, m);
  return g;
}

CMatrix shift_matrix(int m) {
  require_m(m, 1, "shift_matrix");
  CMatrix h = CMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) h(mod(i + 1, m), i) = 1.0;
  return h;
}

CMatrix perm_unitary(const Permutation& alpha) {
  const int m = static_cast<int>(alpha.size());
  if (m < 1) throw DomainError("perm_unitary: empty permutation");
  std::vector<bool> seen(m, false);
  CMatrix u = CMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int j = alpha[i];
    if (j < 0 || j >= m || seen[j]) {
      throw DomainError("perm_unitary: not a permutation");
    }
    seen[j] = true;
    u(j, i) = 1.0;
  }
  return u;
}

Permutation compose(const Permutation& alpha, const Permutation& beta) {
  if (alpha.size() != beta.size()) {
    throw DomainError("compose: permutations of different degree");
  }
  Permutation out(alpha.size());
  for (std::size_t i = 0; i < beta.size(); ++i) out[i] = alpha[beta[i]];
  return out;
}

Permutation inverse(const Permutation& alpha) {
  Permutation out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out[alpha[i]] = static_cast<int>(i);
  }
  return out;
}

Permutation parse_cycles(std::string_view text, int m) {
  require_m(m, 1, "parse_cycles");
  Permutation result(m);
  for (int i = 0; i < m; ++i) result[i] = i;
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw DomainError("parse_cycles: '" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == ' ') {
      ++pos;
      continue;
    }
    if (c != '(') fail("expected '('");
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) fail("missing ')'");
    std::vector<int> cycle;
    std::size_t p = pos + 1;
    while (p < close) {
      if (text[p] == ' ' || text[p] == ',') {
        ++p;
        continue;
      }
      std::size_t q = p;
      while (q < close && text[q] != ' ' && text[q] != ',') ++q;
      int v = 0;
      const auto [ptr, ec] = std::from_chars(text.data() + p, text.data() + q, v);
      if (ec != std::errc() || ptr != text.data() + q) fail("bad number");
      if (v < 1 || v > m) fail("point out of range");
      cycle.push_back(v - 1);
      p = q;
    }
    if (cycle.empty()) fail("empty cycle");
    std::vector<bool> seen(m, false);
    for (const int v : cycle) {
      if (seen[v]) fail("repeated point in a cycle");
      seen[v] = true;
    }
    cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  if (cycles.empty()) fail("no cycles");
  // Products compose right to left, as functions.
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Permutation c(m);
    for (int i = 0; i < m; ++i) c[i] = i;
    const auto& cyc = *it;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      c[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    result = compose(c, result);
  }
  return result;
}

CVector thm_eg_vector(int m, int i, int j) {
  require_m(m, 1, "thm_eg_vector");
  if (i < 1 || i > m || j < 1 || j > m * m) {
    throw DomainError("thm_eg_vector: index out of range");
  }
  const int r = (j - 1) / m;
  const int s = (j - 1) % m + 1;
  CVector v = CVector::Zero(m);
  v(mod(i - 1 + r, m)) = root_of_unity((i - 1) * (s - 1), m);
  return v;
}

CMatrix thm_eg_witness_unnormalized(int m) {
  require_m(m, 1, "thm_eg_witness_unnormalized");
  const int n = m * m;
  CMatrix x = CMatrix::Zero(m * m, n);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      x.block((i - 1) * m, j - 1, m, 1) = thm_eg_vector(m, i, j);
    }
  }
  return x;
}

NamedConstruction thm_eg_map(int m) {
  require_m(m, 2, "thm_eg_map");
  const int n = m * m;
  std::vector<CMatrix> cols;
  cols.reserve(n);
  for (int j = 1; j <= n; ++j) {
    const int r = (j - 1) / m;
    const int s = (j - 1) % m + 1;
    // g^{-(s-1)} h^{-r}: h^{-r} e_q = e_{q-r}, then scale row p by rho^{-(s-1)p}.
    CMatrix a = CMatrix::Zero(m, m);
    for (int q = 0; q < m; ++q) {
      const int p = mod(q - r, m);
      a(p, q) = root_of_unity(-(s - 1) * p, m);
    }
    cols.push_back(std::move(a));
  }
  RightModuleMap map(m, n, std::move(cols));

  // Norm sqrt(m) at level one: e_{1+r} in column m r + 1, mapped to e_1.
  CMatrix x1 = CMatrix::Zero(m, n);
  for (int r = 0; r < m; ++r) x1(r, m * r) = 1.0;
  Witness op_w = make_witness(map, 1, std::move(x1));

  CMatrix xm = thm_eg_witness_unnormalized(m) / std::sqrt(static_cast<double>(m));
  Witness cb_w = make_witness(map, m, std::move(xm));

  ExpectedNorms expected;
  expected.hs = 1.0;
  expected.op = std::sqrt(static_cast<double>(m));
  expected.cb = static_cast<double>(m);
  return NamedConstruction{"msq:" + std::to_string(m), std::move(map),
                           {std::move(op_w), std::move(cb_w)}, expected};
}

NamedConstruction truncated_eg_map(int m, int n) {
  require_m(m, 2, "truncated_eg_map");
  if (n < 2 || n > m * m) {
    throw DomainError("truncated_eg_map: n must lie in [2, m^2]");
  }
  const NamedConstruction full = thm_eg_map(m);
  RightModuleMap map = truncate(full.map, n);
  CMatrix y = full.witnesses[1].x.leftCols(n);
  Witness cb_w = make_witness(map, m, std::move(y));
  ExpectedNorms expected;
  expected.hs = 1.0;
  expected.op_upper = std::sqrt(static_cast<double>(m));
  expected.cb_lower = std::sqrt(static_cast<double>(n));
  return NamedConstruction{
      "trunc:" + std::to_string(m) + ":" + std::to_string(n), std::move(map),
      {std::move(cb_w)}, expected};
}

NamedConstruction example_2x3() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix z = real_matrix(2, 2, {1, 0, 0, -1});
  const CMatrix swap = real_matrix(2, 2, {0, 1, 1, 0});
  RightModuleMap map(2, 3, {id, z, swap});

  Witness op_w = make_witness(map, 1, real_matrix(2, 3, {1, 0, 0, 0, 0, 1}));
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix x = r * real_matrix(4, 3, {1, 1, 0,  //
                                     0, 0, 1,  //
                                     0, 0, 1,  //
                                     1, -1, 0});
  Witness cb_w = make_witness(map, 2, std::move(x));
  ExpectedNorms expected;
  expected.hs = 1.0;
  expected.op = std::sqrt(2.0);
  expected.cb = std::sqrt(3.0);
  return NamedConstruction{"2x3", std::move(map),
                           {std::move(op_w), std::move(cb_w)}, expected};
}

NamedConstruction example_2x4() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix z = real_matrix(2, 2, {1, 0, 0, -1});
  const CMatrix swap = real_matrix(2, 2, {0, 1, 1, 0});
  // (g, h) -> (h, -g) in the fourth column.
  const CMatrix twist = real_matrix(2, 2, {0, 1, -1, 0});
  RightModuleMap map(2, 4, {id, z, swap, twist});

  Witness op_w =
      make_witness(map, 1, real_matrix(2, 4, {1, 0, 0, 0, 0, 0, 1, 0}));
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix x = r * real_matrix(4, 4, {1, 1, 0, 0,  //
                                     0, 0, 1, 1,  //
                                     0, 0, 1, -1,  //
                                     1, -1, 0, 0});
  Witness cb_w = make_witness(map, 2, std::move(x));
  ExpectedNorms expected;
  expected.hs = 1.0;
  expected.op = std::sqrt(2.0);
  expected.cb = 2.0;
  return NamedConstruction{"2x4", std::move(map),
                           {std::move(op_w), std::move(cb_w)}, expected};
}

RightModuleMap perm_map(const std::vector<Permutation>& alphas) {
  if (alphas.empty()) throw DomainError("perm_map: no permutations");
  const int m = static_cast<int>(alphas.front().size());
  std::vector<CMatrix> cols;
  cols.reserve(alphas.size());
  for (const Permutation& a : alphas) {
    if (static_cast<int>(a.size()) != m) {
      throw DomainError("perm_map: permutations of different degree");
    }
    cols.push_back(perm_unitary(a));
  }
  return RightModuleMap(m, static_cast<int>(alphas.size()), std::move(cols));
}

NamedConstruction p34_example() {
  RightModuleMap map = perm_map({parse_cycles("(1)", 3),
                                 parse_cycles("(1 2)", 3),
                                 parse_cycles("(1 3)", 3),
                                 parse_cycles("(2 3)", 3)});
  Witness op_w = make_witness(
      map, 1, real_matrix(3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0}));
  const double r = 1.0 / std::sqrt(2.0);
  const double t1 = 1.0 / 3.0;
  const double t2 = 2.0 / 3.0;
  CMatrix x = real_matrix(6, 4, {-t2, 0, 0,  t2,   //
                                 0,   1, 0,  0,    //
                                 0,   0, r,  0,    //
                                 0,   0, r,  0,    //
                                 t1,  0, 0,  t2,   //
                                 -t2, 0, 0,  -t1});
  Witness cb_w = make_witness(map, 2, std::move(x));
  ExpectedNorms expected;
  expected.hs = 1.0;
  expected.op = std::sqrt(3.0);
  expected.cb_lower = cb_w.value;
  return NamedConstruction{"p34", std::move(map),
                           {std::move(op_w), std::move(cb_w)}, expected};
}

NamedConstruction construction_by_name(std::string_view name) {
  if (name == "2x3") return example_2x3();
  if (name == "2x4") return example_2x4();
  if (name == "p34") return p34_example();
  if (name.starts_with("msq:")) {
    return thm_eg_map(parse_int(name.substr(4), name));
  }
  if (name.starts_with("trunc:")) {
    const std::string_view rest = name.substr(6);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw DomainError("unknown construction '" + std::string(name) + "'");
    }
    return truncated_eg_map(parse_int(rest.substr(0, colon), name),
                            parse_int(rest.substr(colon + 1), name));
  }
  throw DomainError("unknown construction '" + std::string(name) + "'");
}

}  // namespace cbnorm
