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
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Values are recomputed here with plain Eigen where that is cheap,
// rather than trusting the library's own evaluators.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "cbnorm/bounds.hpp"
#include "cbnorm/constructions.hpp"
#include "cbnorm/norms.hpp"
#include "cbnorm/ranges.hpp"
#include "cbnorm/search.hpp"

namespace {

using namespace cbnorm;

double top_sv(const CMatrix& y) {
  return Eigen::JacobiSVD<CMatrix>(y).singularValues()(0);
}

// ||T_{k,1}(x)|| computed column by column.
double image_norm(const RightModuleMap& t, int k, const CMatrix& x) {
  const int m = t.rows();
  CMatrix y = CMatrix::Zero(k * m, t.cols());
  for (int j = 0; j < t.cols(); ++j) {
    for (int b = 0; b < k; ++b) {
      y.block(b * m, j, m, 1) = t.column(j) * x.block(b * m, j, m, 1);
    }
  }
  return top_sv(y);
}

double max_column_norm(const RightModuleMap& t) {
  double h = 0.0;
  for (const CMatrix& a : t.columns()) h = std::max(h, top_sv(a));
  return h;
}

// Largest root of 18t^3 - 72t^2 + 33t - 2, which lies in (3, 4).
double cubic_root() {
  auto f = [](double t) { return 18 * t * t * t - 72 * t * t + 33 * t - 2; };
  double lo = 3.0, hi = 4.0;
  while (hi - lo > 1e-15) {
    const double mid = (lo + hi) / 2;
    if (f(mid) > 0) hi = mid; else lo = mid;
  }
  return (lo + hi) / 2;
}

CMatrix gaussian(int r, int c, std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  CMatrix x(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) x(i, j) = {nd(g), nd(g)};
  return x;
}

RightModuleMap random_map(int m, int n, std::mt19937_64& g) {
  std::vector<CMatrix> cols;
  for (int j = 0; j < n; ++j) cols.push_back(gaussian(m, m, g));
  return RightModuleMap(m, n, cols);
}

struct Gate {
  int failed = 0;
  void run(int id, const std::string& what, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = body();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", problem.empty() ? "PASS" : "FAIL", id,
                what.c_str(), s, problem.empty() ? "" : " -- ", problem.c_str());
    std::fflush(stdout);
    if (!problem.empty()) ++failed;
  }
};

std::string fmt(const char* f, double a, double b = 0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Criteria 1 and 2 share a shape.
std::string example_check(const NamedConstruction& c, double op, double cb) {
  EngineOptions eo;
  eo.starts = c.witnesses;
  const NormReport r = norm_report(c.map, eo);
  if (std::abs(max_column_norm(c.map) - 1.0) > 1e-12) return "hs != 1";
  if (std::abs(r.hs - 1.0) > 1e-12) return "reported hs != 1";
  if (!within(r.op_lower, op - 1e-6, op + 1e-12)) return fmt("op_lower %.12f", r.op_lower);
  if (r.op_upper_best() > op + 1e-9) return fmt("op upper %.12f", r.op_upper_best());
  if (!within(r.cb_lower, cb - 1e-6, cb + 1e-12)) return fmt("cb_lower %.12f", r.cb_lower);
  const Witness& w = r.cb_witness;
  if (top_sv(w.x) > 1 + 1e-12) return "cb witness outside ball";
  if (std::abs(image_norm(c.map, w.k, w.x) - r.cb_lower) > 1e-9) return "cb witness value";
  if (r.ratio_lower < cb / op - 1e-6) return fmt("ratio %.12f", r.ratio_lower);
  return "";
}

}  // namespace

int main() {
  Gate gate;

  gate.run(1, "2x3 example: op sqrt2, cb sqrt3, ratio sqrt1.5", [] {
    return example_check(example_2x3(), std::sqrt(2.0), std::sqrt(3.0));
  });

  gate.run(2, "2x4 example: op sqrt2, cb 2", [] {
    return example_check(example_2x4(), std::sqrt(2.0), 2.0);
  });

  gate.run(3, "m^2-column family at m=2,3", []() -> std::string {
    for (int m = 2; m <= 3; ++m) {
      const NamedConstruction c = thm_eg_map(m);
      const std::string base = example_check(c, std::sqrt(m), m);
      if (!base.empty()) return "m=" + std::to_string(m) + ": " + base;
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m * m; ++j) {
          CVector e = CVector::Zero(m);
          e(i - 1) = 1.0;
          if ((c.map.column(j - 1) * thm_eg_vector(m, i, j) - e).cwiseAbs().maxCoeff() > 1e-12)
            return "a_j v_j^i != e_i";
        }
      }
      const CMatrix x = thm_eg_witness_unnormalized(m);
      const CMatrix g = x * x.adjoint();
      if ((g - m * CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > 1e-10)
        return "witness rows not orthogonal of norm sqrt(m)";
      if (std::abs(image_norm(c.map, m, x / std::sqrt(m)) - m) > 1e-9) return "witness value";
      EngineOptions eo;
      eo.starts = {c.witnesses.front()};
      const double below = amplified_norm_lower(c.map, m - 1, eo).value;
      if (below > std::sqrt(m - 1.0) * std::sqrt(m) + 1e-6)
        return fmt("level m-1 value %.9f", below);
    }
    return "";
  });

  gate.run(4, "truncations m=2,3, 2<=n<=m^2", []() -> std::string {
    for (int m = 2; m <= 3; ++m) {
      for (int n = 2; n <= m * m; ++n) {
        const NamedConstruction c = truncated_eg_map(m, n);
        const Witness& w = c.witnesses.back();
        if (top_sv(w.x) > 1 + 1e-12) return "witness outside ball";
        const double v = image_norm(c.map, w.k, w.x);
        if (v < std::sqrt(n) - 1e-6) return fmt("witness %.9f", v);
        EngineOptions eo;
        eo.restarts = 8;
        eo.starts = c.witnesses;
        const NormReport r = norm_report(c.map, eo);
        if (r.op_upper_best() > std::sqrt(m) + 1e-9) return fmt("op upper %.12f", r.op_upper_best());
        if (r.ratio_lower < std::sqrt(double(n) / m) - 1e-5) return fmt("ratio %.9f", r.ratio_lower);
      }
    }
    return "";
  });

  gate.run(5, "3x4 permutation example, refined ratio >= 1.13", []() -> std::string {
    const NamedConstruction c = p34_example();
    const Witness& w = c.witnesses.back();
    if (std::abs(top_sv(w.x) - 1.0) > 1e-10) return fmt("||x|| = %.12f", top_sv(w.x));
    const NormReport r = norm_report(c.map);
    if (std::abs(r.op_lower - std::sqrt(3.0)) > 1e-6) return fmt("op_lower %.12f", r.op_lower);
    if (r.op_upper_best() > std::sqrt(3.0) + 1e-6) return "op upper";
    const double v = image_norm(c.map, w.k, w.x);
    if (std::abs(v * v - cubic_root()) > 1e-9) return fmt("value^2 %.12f vs %.12f", v * v, cubic_root());
    const Witness refined = refine_witness(c.map, w, 64, 0);
    if (top_sv(refined.x) > 1 + 1e-12) return "refined witness outside ball";
    const double rv = image_norm(c.map, refined.k, refined.x);
    if (rv / std::sqrt(3.0) < 1.13) return fmt("refined ratio %.9f", rv / std::sqrt(3.0));
    return "";
  });

  gate.run(6, "random two-column maps: cb equals op", []() -> std::string {
    std::mt19937_64 g(6);
    EngineOptions eo;
    eo.restarts = 8;
    for (int s = 0; s < 100; ++s) {
      const int m = 2 + s % 4;
      const NormReport r = norm_report(random_map(m, 2, g), eo);
      if (r.cb_lower - r.op_lower >= 1e-5) return fmt("gap %.3e at sample %g", r.cb_lower - r.op_lower, s);
    }
    return "";
  });

  gate.run(7, "exhaustive permutation classes P(2,n<=4), P(3,3)", []() -> std::string {
    for (const auto [m, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 3}}) {
      const SearchResult res = search_perm(m, n);
      if (!res.best) return "no records";
      // Every tuple must reduce to an enumerated representative.
      const auto reps = enumerate_perm_class(m, n, true);
      for (const auto& t : enumerate_perm_class(m, n, false)) {
        if (std::find(reps.begin(), reps.end(), canonical_perm_tuple(t)) == reps.end())
          return "representative missing";
      }
      for (const SearchRecord& rec : res.records) {
        const double v = image_norm(rec.map, rec.report.cb_witness.k, rec.report.cb_witness.x);
        if (v / rec.report.op_upper_best() > 1 + 1e-5 || rec.ratio_lower > 1 + 1e-5)
          return fmt("ratio %.9f at m=%g", rec.ratio_lower, m);
      }
    }
    return "";
  });

  gate.run(8, "inequality sweep over 500 random maps", []() -> std::string {
    std::mt19937_64 g(8);
    std::uniform_int_distribution<int> dim(1, 4);
    InequalityOptions io;
    io.engine.restarts = 4;
    for (int s = 0; s < 500; ++s) {
      const int m = dim(g), n = dim(g);
      const RightModuleMap t = random_map(m, n, g);
      const NormReport r = norm_report(t, io.engine);
      const double hs = max_column_norm(t);
      if (hs > r.op_lower + 1e-8) return "hs > op";
      if (r.op_lower > std::sqrt(std::min(m, n)) * hs + 1e-8) return "op bound";
      if (r.cb_lower > std::sqrt(std::min(m * m, n)) * hs + 1e-8) return "cb hs bound";
      if (n >= 2 && r.cb_lower > std::sqrt(std::min(double(m), n / 2.0)) * r.op_upper_best() + 1e-8)
        return "cb op bound";
      for (const InequalityCheck& c : check_map_inequalities(t, r, io)) {
        if (!c.satisfied) return c.rule + fmt(" slack %.3e", c.slack);
      }
    }
    return "";
  });

  gate.run(9, "diagonal tuples: vertex formula vs sampled traces", []() -> std::string {
    std::mt19937_64 g(9);
    std::normal_distribution<double> nd;
    for (int s = 0; s < 100; ++s) {
      const int d = 2 + s % 4, l = 1 + s % 3;
      std::vector<CMatrix> diag;
      for (int i = 0; i < l; ++i) {
        CMatrix b = CMatrix::Zero(d, d);
        for (int p = 0; p < d; ++p) b(p, p) = {nd(g), nd(g)};
        diag.push_back(b);
      }
      const OperatorTuple b(diag, Orientation::kColumn);
      const auto vertices = wme_diagonal(b);
      if (vertices.empty()) return "no vertices";
      double vmax = 0.0;
      for (const RangePoint& v : vertices) vmax = std::max(vmax, v.q.trace().real());
      double direct = 0.0;
      for (int p = 0; p < d; ++p) {
        double tr = 0.0;
        for (const CMatrix& e : diag) tr += std::norm(e(p, p));
        direct = std::max(direct, tr);
      }
      if (std::abs(vmax - direct) > 1e-12 * std::max(1.0, direct)) return "vertex max != norm^2";
      for (int k = 0; k < 10000; ++k) {
        CVector xi(d);
        for (int p = 0; p < d; ++p) xi(p) = {nd(g), nd(g)};
        xi.normalize();
        double tr = 0.0;
        for (const CMatrix& e : diag) tr += (e * xi).squaredNorm();
        if (tr > vmax + 1e-8) return fmt("sampled trace %.12f > %.12f", tr, vmax);
      }
    }
    return "";
  });

  gate.run(10, "bounds table 12x12: rules, spot values, monotonicity", []() -> std::string {
    const auto table = c_bounds_table(12, 12);
    if (table.size() != 144) return "table size";
    for (const CBounds& b : table) {
      const int m = b.m.value(), n = b.n.value();
      const int mm = std::min(m, n);
      double lo, hi;
      if (mm == 1 || n <= 2) {
        lo = hi = 1.0;
      } else if (n >= mm * mm) {
        lo = hi = std::sqrt(mm);
      } else {
        const int r = static_cast<int>(std::floor(std::sqrt(n)));
        const int c = static_cast<int>(std::ceil(std::sqrt(n)));
        lo = std::sqrt(std::max(double(r), double(n) / c));
        hi = std::sqrt(std::min(double(mm), n / 2.0));
      }
      if (std::abs(b.lower - lo) > 1e-12 || std::abs(b.upper - hi) > 1e-12)
        return fmt("mismatch at (%g,%g)", m, n);
      if (b.exact.has_value() != (std::abs(lo - hi) < 1e-15)) return fmt("exact flag at (%g,%g)", m, n);
    }
    auto at = [&](int m, int n) { return table[(m - 1) * 12 + n - 1]; };
    if (!at(2, 3).exact || std::abs(*at(2, 3).exact - std::sqrt(1.5)) > 1e-15) return "(2,3)";
    if (!at(3, 9).exact || std::abs(*at(3, 9).exact - std::sqrt(3.0)) > 1e-15) return "(3,9)";
    if (at(3, 5).exact || std::abs(at(3, 5).lower - std::sqrt(2.0)) > 1e-15 ||
        std::abs(at(3, 5).upper - std::sqrt(2.5)) > 1e-15)
      return "(3,5)";
    if (at(5, 3).lower != at(3, 3).lower || at(5, 3).upper != at(3, 3).upper) return "(5,3)";
    for (int m = 1; m <= 12; ++m)
      for (int n = 1; n <= 12; ++n)
        for (int m2 = m; m2 <= 12; ++m2)
          for (int n2 = n; n2 <= 12; ++n2)
            if (at(m, n).lower > at(m2, n2).upper + 1e-12) return "not monotone";
    return "";
  });

  std::printf("%s: %d/10 criteria passed\n", gate.failed ? "FAIL" : "PASS", 10 - gate.failed);
  return gate.failed ? 1 : 0;
}
