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
#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cbnorm/bounds.hpp"
#include "cbnorm/constructions.hpp"
#include "cbnorm/error.hpp"
#include "cbnorm/search.hpp"

namespace cbnorm::cli {

namespace {

Check make_check(std::string description, Relation rel, double target,
                 double achieved, double tol) {
  bool pass = false;
  switch (rel) {
    case Relation::kNear: pass = std::abs(achieved - target) <= tol; break;
    case Relation::kAtLeast: pass = achieved >= target - tol; break;
    case Relation::kAtMost: pass = achieved <= target + tol; break;
  }
  return {std::move(description), rel, target, achieved, tol, pass};
}

const char* relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::kNear: return "==";
    case Relation::kAtLeast: return ">=";
    case Relation::kAtMost: return "<=";
  }
  return "?";
}

// Swaps in the override map when its shape fits, re-evaluating witnesses.
NamedConstruction load_case(std::string_view name, const VerifyOptions& opts) {
  NamedConstruction c = construction_by_name(name);
  if (opts.map_override && opts.map_override->rows() == c.map.rows() &&
      opts.map_override->cols() == c.map.cols()) {
    c.map = *opts.map_override;
    for (Witness& w : c.witnesses) w = make_witness(c.map, w.k, w.x);
  }
  return c;
}

NormReport seeded_report(const NamedConstruction& c, const VerifyOptions& o) {
  EngineOptions eo = o.engine;
  eo.starts.insert(eo.starts.end(), c.witnesses.begin(), c.witnesses.end());
  return norm_report(c.map, eo);
}

void add_core_checks(VerifyCase& vc, const NamedConstruction& c,
                     const NormReport& r, double tol) {
  vc.checks.push_back(
      make_check("hs", Relation::kNear, c.expected.hs, r.hs, tol));
  if (c.expected.op) {
    vc.checks.push_back(
        make_check("op lower", Relation::kNear, *c.expected.op, r.op_lower, tol));
    vc.checks.push_back(make_check("op certified upper", Relation::kAtMost,
                                   *c.expected.op, r.op_upper_best(), tol));
  }
  if (c.expected.cb) {
    vc.checks.push_back(
        make_check("cb lower", Relation::kNear, *c.expected.cb, r.cb_lower, tol));
  }
  if (c.expected.op && c.expected.cb) {
    vc.checks.push_back(make_check("cb/op certified", Relation::kAtLeast,
                                   *c.expected.cb / *c.expected.op,
                                   r.ratio_lower, tol));
  }
}

VerifyCase example_case(std::string_view name, const VerifyOptions& o) {
  const NamedConstruction c = load_case(name, o);
  VerifyCase vc{c.name, {}};
  add_core_checks(vc, c, seeded_report(c, o), o.tol);
  return vc;
}

VerifyCase msq_case(int m, const VerifyOptions& o) {
  const NamedConstruction c = load_case("msq:" + std::to_string(m), o);
  VerifyCase vc{c.name, {}};
  const NormReport r = seeded_report(c, o);
  add_core_checks(vc, c, r, o.tol);

  double identity_err = 0.0;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m * m; ++j) {
      CVector e = CVector::Zero(m);
      e(i - 1) = 1.0;
      const CVector d = c.map.column(j - 1) * thm_eg_vector(m, i, j) - e;
      identity_err = std::max(identity_err, d.cwiseAbs().maxCoeff());
    }
  }
  vc.checks.push_back(make_check("a_j v_j^i = e_i", Relation::kNear, 0.0,
                                 identity_err, 1e-12));
  const CMatrix x = thm_eg_witness_unnormalized(m);
  const CMatrix gram = x * x.adjoint();
  const double gram_err =
      (gram - m * CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  vc.checks.push_back(make_check("rows orthogonal with norm sqrt(m)",
                                 Relation::kNear, 0.0, gram_err, 1e-10));
  vc.checks.push_back(make_check("witness value", Relation::kNear,
                                 static_cast<double>(m),
                                 c.witnesses.back().value, o.tol));
  if (m >= 2) {
    EngineOptions eo = o.engine;
    eo.starts.push_back(r.op_witness);
    const double below = amplified_norm_lower(c.map, m - 1, eo).value;
    vc.checks.push_back(make_check(
        "level m-1 <= sqrt(m-1) op", Relation::kAtMost,
        std::sqrt(m - 1.0) * r.op_lower, below, o.tol));
  }
  return vc;
}

VerifyCase trunc_case(int m, int n, const VerifyOptions& o) {
  const NamedConstruction c =
      load_case("trunc:" + std::to_string(m) + ":" + std::to_string(n), o);
  VerifyCase vc{c.name, {}};
  const NormReport r = seeded_report(c, o);
  vc.checks.push_back(make_check("hs", Relation::kNear, 1.0, r.hs, o.tol));
  vc.checks.push_back(make_check("witness value", Relation::kAtLeast,
                                 std::sqrt(static_cast<double>(n)),
                                 c.witnesses.front().value, o.tol));
  vc.checks.push_back(make_check("op certified upper", Relation::kAtMost,
                                 std::sqrt(static_cast<double>(m)),
                                 r.op_upper_best(), 1e-9));
  vc.checks.push_back(make_check(
      "cb/op certified", Relation::kAtLeast,
      std::sqrt(static_cast<double>(n) / m), r.ratio_lower, 1e-5));
  return vc;
}

VerifyCase p34_case(const VerifyOptions& o) {
  const NamedConstruction c = load_case("p34", o);
  VerifyCase vc{c.name, {}};
  const Witness& w = c.witnesses.back();
  vc.checks.push_back(
      make_check("witness norm", Relation::kNear, 1.0, op_norm_matrix(w.x), 1e-10));
  const NormReport r = seeded_report(c, o);
  vc.checks.push_back(
      make_check("op lower", Relation::kNear, std::sqrt(3.0), r.op_lower, o.tol));
  vc.checks.push_back(make_check("op certified upper", Relation::kAtMost,
                                 std::sqrt(3.0), r.op_upper_best(), o.tol));
  vc.checks.push_back(make_check("witness value^2 vs cubic root",
                                 Relation::kNear, p34_cubic_root(),
                                 w.value * w.value, 1e-9));
  const Witness refined =
      refine_witness(c.map, w, o.refine_restarts, o.engine.seed);
  vc.checks.push_back(make_check("refined cb/op", Relation::kAtLeast, 1.13,
                                 refined.value / r.op_upper_best(), 0.0));
  return vc;
}

VerifyCase twocol_case(const VerifyOptions& o) {
  VerifyCase vc{"twocol", {}};
  double worst = -1.0;
  for (int s = 0; s < o.seeds; ++s) {
    const int m = 2 + s % 4;
    Rng rng = make_rng(static_cast<std::uint64_t>(s), 0x74776f63ULL);
    RightModuleMap t(m, 2, {gaussian_matrix(m, m, rng), gaussian_matrix(m, m, rng)});
    const NormReport r = norm_report(t, o.engine);
    worst = std::max(worst, r.cb_lower - r.op_lower);
  }
  vc.checks.push_back(make_check(
      "max cb_lower - op_lower over " + std::to_string(o.seeds) + " maps",
      Relation::kAtMost, 0.0, worst, 1e-5));
  return vc;
}

struct Expected {
  double lower;
  double upper;
};

// The four table rules in floating point, independent of c_bounds.
Expected rule_bounds(int m, int n) {
  if (m == 1 || n <= 2) return {1.0, 1.0};
  const int mm = std::min(m, n);
  if (n >= mm * mm) return {std::sqrt(mm * 1.0), std::sqrt(mm * 1.0)};
  const double root = std::sqrt(static_cast<double>(n));
  const double lo = std::max(std::floor(root), n / std::ceil(root));
  const double hi = std::min(static_cast<double>(mm), n / 2.0);
  return {std::sqrt(lo), std::sqrt(hi)};
}

VerifyCase bounds_case() {
  VerifyCase vc{"bounds-sweep", {}};
  const auto spot = [&](int m, int n, double lo, double hi) {
    const CBounds b = c_bounds(m, n);
    const std::string at = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    vc.checks.push_back(make_check("C" + at + " lower", Relation::kNear, lo, b.lower, 1e-12));
    vc.checks.push_back(make_check("C" + at + " upper", Relation::kNear, hi, b.upper, 1e-12));
  };
  spot(2, 3, std::sqrt(1.5), std::sqrt(1.5));
  spot(2, 4, std::sqrt(2.0), std::sqrt(2.0));
  spot(3, 9, std::sqrt(3.0), std::sqrt(3.0));
  spot(1, 7, 1.0, 1.0);
  spot(3, 5, std::sqrt(2.0), std::sqrt(2.5));
  const CBounds c33 = c_bounds(3, 3);
  spot(5, 3, c33.lower, c33.upper);

  int mismatches = 0;
  int inverted = 0;
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      const CBounds b = c_bounds(m, n);
      const Expected e = rule_bounds(m, n);
      if (std::abs(b.lower - e.lower) > 1e-12 || std::abs(b.upper - e.upper) > 1e-12) {
        ++mismatches;
      }
      if (b.lower > b.upper) ++inverted;
      if (b.exact && (b.lower != *b.exact || b.upper != *b.exact)) ++inverted;
    }
  }
  vc.checks.push_back(make_check("table mismatches, m,n <= 12", Relation::kNear,
                                 0.0, mismatches, 0.0));
  vc.checks.push_back(make_check("inverted intervals", Relation::kNear, 0.0,
                                 inverted, 0.0));

  int monotone = 0;
  int product = 0;
  const auto table = c_bounds_table(12, 12);
  const auto at = [&](int m, int n) -> const CBounds& {
    return table[static_cast<std::size_t>(m - 1) * 12 + (n - 1)];
  };
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      for (int m2 = m; m2 <= 12; ++m2) {
        for (int n2 = n; n2 <= 12; ++n2) {
          if (at(m, n).lower > at(m2, n2).upper * (1.0 + 1e-12)) ++monotone;
        }
      }
    }
  }
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      for (int s = 1; s <= 12; ++s) {
        for (int t = 1; t <= 12; ++t) {
          if (!check_consistency(m, n, s, t)) ++product;
        }
      }
    }
  }
  vc.checks.push_back(make_check("monotonicity violations", Relation::kNear,
                                 0.0, monotone, 0.0));
  vc.checks.push_back(make_check("product bound violations", Relation::kNear,
                                 0.0, product, 0.0));
  return vc;
}

int parse_positive(std::string_view s, std::string_view selector) {
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(std::string(s), &used);
    if (used != s.size()) v = 0;
  } catch (const std::exception&) {
    v = 0;
  }
  if (v < 1) throw DomainError("unknown case '" + std::string(selector) + "'");
  return v;
}

}  // namespace

bool VerifyCase::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

std::vector<std::string> all_case_names() {
  std::vector<std::string> names = {"2x3", "2x4", "msq:2", "msq:3"};
  for (int m = 2; m <= 3; ++m) {
    for (int n = 2; n <= m * m; ++n) {
      names.push_back("trunc:" + std::to_string(m) + ":" + std::to_string(n));
    }
  }
  names.insert(names.end(), {"p34", "twocol", "bounds-sweep"});
  return names;
}

std::vector<VerifyCase> run_verify(std::string_view selector,
                                   const VerifyOptions& options) {
  if (selector == "all") {
    std::vector<VerifyCase> out;
    for (const std::string& name : all_case_names()) {
      auto part = run_verify(name, options);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (selector == "2x3" || selector == "2x4") return {example_case(selector, options)};
  if (selector == "p34") return {p34_case(options)};
  if (selector == "twocol") return {twocol_case(options)};
  if (selector == "bounds-sweep") return {bounds_case()};
  if (selector.starts_with("msq:")) {
    const int m = parse_positive(selector.substr(4), selector);
    if (m < 2) throw DomainError("msq:<m> needs m >= 2");
    return {msq_case(m, options)};
  }
  if (selector.starts_with("trunc:")) {
    const std::string_view rest = selector.substr(6);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw DomainError("unknown case '" + std::string(selector) + "'");
    }
    const int m = parse_positive(rest.substr(0, colon), selector);
    const int n = parse_positive(rest.substr(colon + 1), selector);
    if (m < 2 || n < 2 || n > m * m) {
      throw DomainError("trunc:<m>:<n> needs m >= 2 and 2 <= n <= m^2");
    }
    return {trunc_case(m, n, options)};
  }
  throw DomainError("unknown case '" + std::string(selector) + "'");
}

void print_cases(const std::vector<VerifyCase>& cases, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-40s %2s %18s %18s %9s  %s\n",
                "case", "check", "", "target", "achieved", "tol", "result");
  out << line;
  int failed = 0;
  for (const VerifyCase& vc : cases) {
    for (const Check& c : vc.checks) {
      std::snprintf(line, sizeof line, "%-14s %-40s %2s %18.12f %18.12f %9.2e  %s\n",
                    vc.name.c_str(), c.description.c_str(),
                    relation_symbol(c.relation), c.target, c.achieved,
                    c.tolerance, c.pass ? "PASS" : "FAIL");
      out << line;
    }
    if (!vc.passed()) ++failed;
  }
  out << (failed == 0 ? "PASS" : "FAIL") << ": " << cases.size() - failed << "/"
      << cases.size() << " cases passed\n";
}

double p34_cubic_root() {
  // f(3) < 0 < f(4), and f > 0 beyond 4 since f' > 0 there.
  const auto f = [](double t) { return ((18.0 * t - 72.0) * t + 33.0) * t - 2.0; };
  double lo = 3.0;
  double hi = 4.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cbnorm::cli
