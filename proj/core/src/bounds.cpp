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
#include "cbnorm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cbnorm/error.hpp"

namespace cbnorm {

namespace {

using Int = long long;

Int isqrt_floor(Int n) {
  Int r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Int isqrt_ceil(Int n) {
  const Int r = isqrt_floor(n);
  return r * r == n ? r : r + 1;
}

// p / q with q > 0.
struct Fraction {
  Int p;
  Int q;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

int compare(const Fraction& a, const Fraction& b) {
  const Int l = a.p * b.q;
  const Int r = b.p * a.q;
  return l < r ? -1 : (l > r ? 1 : 0);
}

void set_exact(CBounds& b, double v) {
  b.lower = v;
  b.upper = v;
  b.exact = v;
}

std::string format12(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json bound_value(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

Extent::Extent(int value) : value_(value) {}

Extent Extent::infinite() {
  Extent e;
  e.infinite_ = true;
  return e;
}

int Extent::value() const {
  if (infinite_) throw DomainError("infinite extent has no finite value");
  return value_;
}

std::string Extent::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

CBounds c_bounds(Extent m, Extent n) {
  if ((!m.is_infinite() && m.value() < 1) ||
      (!n.is_infinite() && n.value() < 1)) {
    throw DomainError("c_bounds: dimensions must be >= 1");
  }
  CBounds b;
  b.m = m;
  b.n = n;
  auto finite_eq = [](const Extent& e, int v) {
    return !e.is_infinite() && e.value() == v;
  };
  if (finite_eq(m, 1) || finite_eq(n, 1) || finite_eq(n, 2)) {
    set_exact(b, 1.0);
    b.provenance.push_back("rule-i");
    return b;
  }
  Extent mm = m;
  const bool m_larger =
      !n.is_infinite() && (m.is_infinite() || m.value() > n.value());
  if (m_larger) {
    mm = n;
    b.provenance.push_back("rule-ii");
  }
  if (mm.is_infinite()) {
    // Both infinite: C(k, k^2) = sqrt(k) grows without bound.
    set_exact(b, std::numeric_limits<double>::infinity());
    b.provenance.push_back("rule-iii");
    return b;
  }
  const Int mv = mm.value();
  if (n.is_infinite() || n.value() >= mv * mv) {
    set_exact(b, std::sqrt(static_cast<double>(mv)));
    b.provenance.push_back("rule-iii");
    return b;
  }
  const Int nv = n.value();
  const Fraction a{isqrt_floor(nv), 1};
  const Int c = isqrt_ceil(nv);
  const Fraction d{nv, c};
  const Fraction lower2 = compare(a, d) >= 0 ? a : d;
  const Fraction m_frac{mv, 1};
  const Fraction half_n{nv, 2};
  const Fraction upper2 = compare(m_frac, half_n) <= 0 ? m_frac : half_n;
  b.provenance.push_back("rule-iv");
  if (compare(lower2, upper2) == 0) {
    set_exact(b, std::sqrt(lower2.value()));
  } else {
    b.lower = std::sqrt(lower2.value());
    b.upper = std::sqrt(upper2.value());
  }
  return b;
}

std::vector<CBounds> c_bounds_table(int max_m, int max_n) {
  if (max_m < 1 || max_n < 1) {
    throw DomainError("c_bounds_table: dimensions must be >= 1");
  }
  std::vector<CBounds> rows;
  rows.reserve(static_cast<std::size_t>(max_m) * max_n);
  for (int m = 1; m <= max_m; ++m) {
    for (int n = 1; n <= max_n; ++n) rows.push_back(c_bounds(m, n));
  }
  return rows;
}

double product_bound(int m, int n, int s, int t) {
  return c_bounds(m, n).lower * c_bounds(s, t).lower;
}

bool check_consistency(int m, int n, int s, int t) {
  const double target = c_bounds(m * s, n * t).upper;
  return product_bound(m, n, s, t) <= target * (1.0 + 1e-12);
}

std::string bounds_csv(const std::vector<CBounds>& rows) {
  std::string out = "m,n,lower,upper,exact,provenance\n";
  for (const CBounds& b : rows) {
    std::string prov;
    for (const auto& tag : b.provenance) {
      if (!prov.empty()) prov += ';';
      prov += tag;
    }
    out += b.m.to_string() + ',' + b.n.to_string() + ',' + format12(b.lower) +
           ',' + format12(b.upper) + ',' +
           (b.exact ? format12(*b.exact) : std::string()) + ',' + prov + '\n';
  }
  return out;
}

Json bounds_to_json(const CBounds& b) {
  Json j;
  j["m"] = b.m.is_infinite() ? Json("inf") : Json(b.m.value());
  j["n"] = b.n.is_infinite() ? Json("inf") : Json(b.n.value());
  j["lower"] = bound_value(b.lower);
  j["upper"] = bound_value(b.upper);
  j["exact"] = b.exact ? bound_value(*b.exact) : Json(nullptr);
  j["provenance"] = b.provenance;
  return j;
}

std::vector<InequalityCheck> check_map_inequalities(
    const RightModuleMap& t, const NormReport& report,
    const InequalityOptions& options) {
  const int m = t.rows();
  const int n = t.cols();
  const double tol = options.tol;
  const double op_up = report.op_upper_best();
  std::vector<InequalityCheck> out;
  auto add = [&](std::string rule, double lhs, double rhs) {
    const double slack = rhs - lhs;
    out.push_back({std::move(rule), slack >= -tol, slack});
  };

  add("hs<=op", report.hs, op_up);
  add("hs<=op_lower", report.hs, report.op_lower);
  add("op<=sqrt(min(m,n))*hs", report.op_lower,
      std::sqrt(static_cast<double>(std::min(m, n))) * report.hs);

  const int kmax = std::min(m, n);
  std::vector<double> level(kmax + 1, 0.0);
  level[1] = report.op_lower;
  // Each level is seeded with the one below so the engine values stay
  // ordered; the top level also gets the report's witness.
  Witness prev = report.op_witness;
  for (int k = 2; k <= kmax; ++k) {
    EngineOptions eo = options.engine;
    eo.starts.push_back(prev);
    if (k == kmax && report.cb_witness.k == kmax) eo.starts.push_back(report.cb_witness);
    AmplifiedResult r = amplified_norm_lower(t, k, eo);
    level[k] = r.value;
    prev = std::move(r.witness);
  }
  level[kmax] = std::max(level[kmax], report.cb_lower);
  for (int k = 1; k <= kmax; ++k) {
    add("amp" + std::to_string(k) + "<=sqrt(k)*op", level[k],
        std::sqrt(static_cast<double>(k)) * op_up);
    if (k < kmax) {
      add("amp" + std::to_string(k) + "<=amp" + std::to_string(k + 1),
          level[k], level[k + 1]);
    }
  }

  add("cb<=sqrt(min(m^2,n))*hs", report.cb_lower,
      std::sqrt(static_cast<double>(std::min(m * m, n))) * report.hs);
  if (n >= 2) {
    add("cb<=sqrt(min(m,n/2))*op", report.cb_lower,
        std::sqrt(std::min(static_cast<double>(m), n / 2.0)) * op_up);
  }
  add("cb<=C(m,n)*op", report.cb_lower, c_bounds(m, n).upper * op_up);
  add("cb<=cb_upper", report.cb_lower, report.cb_upper);
  return out;
}

}  // namespace cbnorm
