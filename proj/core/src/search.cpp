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
#include "cbnorm/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "cbnorm/error.hpp"
#include "cbnorm/parallel.hpp"
#include "cbnorm/serialization.hpp"

namespace cbnorm {

namespace {

constexpr std::uint64_t kUnitaryStream = 0x756e6974ULL << 32;

double certified_op_upper(const RightModuleMap& t) {
  const int m = t.rows();
  const int n = t.cols();
  const double hs = hs_norm(t);
  const double op = std::sqrt(static_cast<double>(std::min(m, n))) * hs;
  if (std::min(m, n) == 1) return std::min(op, hs);
  const double cb =
      std::min({std::sqrt(static_cast<double>(std::min(m * m, n))) * hs,
                cb_row_bound(t), cb_factorization_bound(t)});
  return std::min(op, cb);
}

bool is_permutation_matrix(const CMatrix& a) {
  const Eigen::Index m = a.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    int row_ones = 0;
    int col_ones = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      for (const Complex v : {a(i, j), a(j, i)}) {
        if (v == Complex(1.0, 0.0)) continue;
        if (v != Complex(0.0, 0.0)) return false;
      }
      row_ones += a(i, j) == Complex(1.0, 0.0);
      col_ones += a(j, i) == Complex(1.0, 0.0);
    }
    if (row_ones != 1 || col_ones != 1) return false;
  }
  return true;
}

bool is_unitary(const CMatrix& a, double tol) {
  const CMatrix d = a.adjoint() * a - CMatrix::Identity(a.rows(), a.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

NormReport report_from_json(const Json& j) {
  try {
    NormReport r;
    r.m = j.at("m").get<int>();
    r.n = j.at("n").get<int>();
    r.hs = j.at("hs").get<double>();
    r.op_lower = j.at("op_lower").get<double>();
    r.op_upper = j.at("op_upper").get<double>();
    r.op_tgm = j.at("op_tgm").get<double>();
    r.cb_lower = j.at("cb_lower").get<double>();
    r.cb_upper = j.at("cb_upper").get<double>();
    r.ratio_lower = j.at("ratio_lower").get<double>();
    r.restarts = j.at("restarts").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.iterations = j.at("iterations").get<int>();
    r.op_witness = witness_from_json(j.at("op_witness"));
    r.cb_witness = witness_from_json(j.at("cb_witness"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
}

// Larger ratio wins; exact ties go to the smaller map serialization.
bool better(const SearchRecord& a, const SearchRecord& b) {
  if (a.ratio_lower != b.ratio_lower) return a.ratio_lower > b.ratio_lower;
  return dump_json(map_to_json(a.map)) < dump_json(map_to_json(b.map));
}

int rank_of(const Permutation& p) {
  // Lehmer code.
  const int m = static_cast<int>(p.size());
  int rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j) smaller += p[j] < p[i];
    rank = rank * (m - i) + smaller;
  }
  return rank;
}

struct PermTables {
  std::vector<Permutation> perms;
  std::vector<std::vector<int>> mul;  // mul[a][b] = rank(a o b)
  std::vector<int> inv;
};

PermTables make_tables(int m) {
  PermTables t;
  t.perms = all_permutations(m);
  const std::size_t count = t.perms.size();
  t.mul.assign(count, std::vector<int>(count));
  t.inv.resize(count);
  for (std::size_t a = 0; a < count; ++a) {
    t.inv[a] = rank_of(inverse(t.perms[a]));
    for (std::size_t b = 0; b < count; ++b) {
      t.mul[a][b] = rank_of(compose(t.perms[a], t.perms[b]));
    }
  }
  return t;
}

std::vector<int> canonical_ranks(const PermTables& t,
                                 const std::vector<int>& tuple) {
  std::vector<int> best;
  std::vector<int> cur(tuple.size());
  for (const int pivot : tuple) {
    const int pinv = t.inv[pivot];
    for (std::size_t g = 0; g < t.perms.size(); ++g) {
      const int ginv = t.inv[g];
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        cur[i] = t.mul[t.mul[g][t.mul[pinv][tuple[i]]]][ginv];
      }
      std::sort(cur.begin(), cur.end());
      if (best.empty() || cur < best) best = cur;
    }
  }
  return best;
}

std::uint64_t checked_factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) {
    if (f > std::numeric_limits<std::uint64_t>::max() / i) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    f *= i;
  }
  return f;
}

// Runs `compute` for every shard not in `previous`, batching so that records
// reach on_record in shard order while shards run concurrently.
SearchResult run_shards(int shard_count,
                        const std::function<SearchRecord(int)>& compute,
                        const SearchOptions& options) {
  std::map<int, SearchRecord> done;
  for (const SearchRecord& r : options.previous) {
    if (r.shard >= 0 && r.shard < shard_count) done.emplace(r.shard, r);
  }
  std::vector<int> todo;
  for (int s = 0; s < shard_count; ++s) {
    if (!done.contains(s)) todo.push_back(s);
  }
  const int threads = resolve_threads(options.engine.threads);
  const std::size_t batch = std::max<std::size_t>(16, 4 * threads);
  SearchResult result;
  for (std::size_t start = 0; start < todo.size(); start += batch) {
    const std::size_t count = std::min(batch, todo.size() - start);
    std::vector<std::optional<SearchRecord>> slots(count);
    parallel_for(count, threads, [&](std::size_t i) {
      slots[i] = compute(todo[start + i]);
    });
    for (auto& slot : slots) {
      if (options.on_record) options.on_record(*slot);
      const int shard = slot->shard;
      done.emplace(shard, std::move(*slot));
      ++result.computed;
    }
  }
  for (auto& [shard, record] : done) {
    if (!result.best || better(record, *result.best)) result.best = record;
    result.records.push_back(std::move(record));
  }
  return result;
}

std::vector<CMatrix> unitary_a_step(const RightModuleMap& t, int k,
                                    const AmplifiedResult& r) {
  const int m = t.rows();
  const Eigen::Map<const CMatrix> z(r.left.data(), m, k);
  std::vector<CMatrix> cols;
  cols.reserve(t.cols());
  for (int j = 0; j < t.cols(); ++j) {
    const Eigen::Map<const CMatrix> xj(r.witness.x.col(j).data(), m, k);
    const CMatrix mj = r.right(j) * (xj * z.adjoint());
    if (mj.isZero(0.0)) {
      cols.push_back(t.column(j));
    } else {
      cols.push_back(polar_factor(mj).adjoint());
    }
  }
  return cols;
}

std::vector<CMatrix> haar_tuple(int m, int n, Rng& rng) {
  std::vector<CMatrix> cols;
  cols.reserve(n);
  for (int j = 0; j < n; ++j) cols.push_back(haar_unitary(m, rng));
  return cols;
}

struct ChainOutcome {
  RightModuleMap map;
  Witness witness;
  int steps = 0;
};

ChainOutcome run_unitary_chain(int m, int n, int steps, int shard,
                               std::uint64_t seed) {
  constexpr int kInner = 200;
  constexpr double kInnerTol = 1e-12;
  constexpr double kFloor = 1e-4;
  constexpr int kStallLimit = 24;
  const int k = std::min(m, n);
  Rng rng = make_rng(seed, kUnitaryStream | static_cast<std::uint32_t>(shard));

  auto fresh = [&](std::vector<CMatrix> cols) {
    RightModuleMap t(m, n, std::move(cols));
    EngineOptions eo;
    eo.restarts = 2;
    eo.max_iter = kInner;
    eo.seed = rng();
    eo.threads = 1;
    AmplifiedResult r = amplified_norm_lower(t, k, eo);
    return std::make_pair(std::move(t), std::move(r));
  };

  auto [map, cur] = fresh(haar_tuple(m, n, rng));
  ChainOutcome best{map, cur.witness, 0};
  double eps = 0.5;
  int stalled = 0;
  std::normal_distribution<double> normal;
  for (int step = 0; step < steps; ++step) {
    ++best.steps;
    // Alternating move on the column operators first; it never decreases
    // the value.
    RightModuleMap moved(m, n, unitary_a_step(map, k, cur));
    AmplifiedResult r = ascend(moved, k, cur.witness.x, kInner, kInnerTol);
    if (r.value > cur.value * (1.0 + 1e-10)) {
      map = std::move(moved);
      cur = std::move(r);
    } else {
      std::vector<CMatrix> cols = map.columns();
      for (CMatrix& a : cols) {
        CMatrix g(m, m);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
          g(i) = Complex(normal(rng), normal(rng));
        }
        const CMatrix skew = 0.5 * eps * (g - g.adjoint());
        a = polar_factor(a * unitary_exp(skew));
      }
      RightModuleMap perturbed(m, n, std::move(cols));
      AmplifiedResult p =
          ascend(perturbed, k, cur.witness.x, kInner, kInnerTol);
      if (p.value > cur.value * (1.0 + 1e-10)) {
        map = std::move(perturbed);
        cur = std::move(p);
        stalled = 0;
      } else {
        eps = std::max(eps * 0.5, kFloor);
        if (eps == kFloor && ++stalled >= kStallLimit) {
          std::tie(map, cur) = fresh(haar_tuple(m, n, rng));
          eps = 0.5;
          stalled = 0;
        }
      }
    }
    if (cur.value > best.witness.value) {
      best.map = map;
      best.witness = cur.witness;
    }
  }
  return best;
}

}  // namespace

std::string class_tag(MapClass c) {
  return c == MapClass::kPerm ? "perm" : "unitary";
}

MapClass parse_class(std::string_view tag) {
  if (tag == "perm") return MapClass::kPerm;
  if (tag == "unitary") return MapClass::kUnitary;
  throw DomainError("unknown map class '" + std::string(tag) + "'");
}

SearchRecord make_record(MapClass c, RightModuleMap map, NormReport report,
                         int shard, std::uint64_t seed, int iterations) {
  SearchRecord r;
  r.map_class = c;
  r.m = map.rows();
  r.n = map.cols();
  r.shard = shard;
  r.seed = seed;
  r.iterations = iterations;
  r.map = std::move(map);
  r.report = std::move(report);
  r.ratio_lower = r.report.ratio_lower;
  r.ratio_estimate =
      r.report.op_lower > 0.0 ? r.report.cb_lower / r.report.op_lower : 0.0;
  const double up = r.report.op_upper_best();
  r.heuristic_denominator = up - r.report.op_lower > 1e-6 * std::max(1.0, up);
  return r;
}

Json record_to_json(const SearchRecord& r) {
  return Json{{"class", class_tag(r.map_class)},
              {"m", r.m},
              {"n", r.n},
              {"shard", r.shard},
              {"seed", r.seed},
              {"iterations", r.iterations},
              {"ratio_lower", r.ratio_lower},
              {"ratio_estimate", r.ratio_estimate},
              {"heuristic_denominator", r.heuristic_denominator},
              {"map", map_to_json(r.map)},
              {"report", report_to_json(r.report)}};
}

SearchRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("record: expected an object");
  SearchRecord r;
  try {
    r.map_class = parse_class(j.at("class").get<std::string>());
    r.m = j.at("m").get<int>();
    r.n = j.at("n").get<int>();
    r.shard = j.at("shard").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.iterations = j.at("iterations").get<int>();
    r.ratio_lower = j.at("ratio_lower").get<double>();
    r.ratio_estimate = j.at("ratio_estimate").get<double>();
    r.heuristic_denominator = j.at("heuristic_denominator").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("record: ") + e.what());
  } catch (const DomainError& e) {
    throw SchemaError(std::string("record.class: ") + e.what());
  }
  r.map = map_from_json(j.at("map"));
  r.report = report_from_json(j.at("report"));
  if (r.map.rows() != r.m || r.map.cols() != r.n) {
    throw SchemaError("record.map: dimensions disagree with m, n");
  }
  return r;
}

bool verify_record(const SearchRecord& r, double tol, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  for (int j = 0; j < r.map.cols(); ++j) {
    const CMatrix& a = r.map.column(j);
    const bool ok = r.map_class == MapClass::kPerm ? is_permutation_matrix(a)
                                                   : is_unitary(a, 1e-10);
    if (!ok) {
      return fail("column " + std::to_string(j) + " is not in class " +
                  class_tag(r.map_class));
    }
  }
  const Witness& w = r.report.cb_witness;
  if (w.x.rows() != static_cast<Eigen::Index>(w.k) * r.map.rows() ||
      w.x.cols() != r.map.cols()) {
    return fail("witness shape does not match the map");
  }
  if (op_norm_matrix(w.x) > 1.0 + 1e-12) {
    return fail("witness lies outside the unit ball");
  }
  const double value = evaluate_witness(r.map, w);
  if (std::abs(value - r.report.cb_lower) > tol * std::max(1.0, value)) {
    return fail("witness value " + format_double(value) +
                " differs from cb_lower " + format_double(r.report.cb_lower));
  }
  const double denom = certified_op_upper(r.map);
  const double ratio = denom > 0.0 ? value / denom : 0.0;
  if (std::abs(ratio - r.ratio_lower) > tol * std::max(1.0, ratio)) {
    return fail("recomputed ratio " + format_double(ratio) +
                " differs from ratio_lower " + format_double(r.ratio_lower));
  }
  return true;
}

std::vector<SearchRecord> read_records(const std::filesystem::path& path) {
  std::vector<SearchRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(record_from_json(
        parse_json(line, path.string() + ":" + std::to_string(line_no))));
  }
  return out;
}

void append_record(const std::filesystem::path& path, const SearchRecord& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open " + path.string() + " for appending");
  out << dump_json(record_to_json(r)) << '\n';
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::vector<Permutation> all_permutations(int m) {
  if (m < 1) throw DomainError("all_permutations: m must be >= 1");
  Permutation p(m);
  for (int i = 0; i < m; ++i) p[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Permutation> canonical_perm_tuple(
    const std::vector<Permutation>& alphas) {
  if (alphas.empty()) throw DomainError("canonical_perm_tuple: empty tuple");
  const int m = static_cast<int>(alphas.front().size());
  const PermTables t = make_tables(m);
  std::vector<int> ranks;
  for (const Permutation& a : alphas) {
    if (static_cast<int>(a.size()) != m) {
      throw DomainError("canonical_perm_tuple: mixed degrees");
    }
    perm_unitary(a);  // validates
    ranks.push_back(rank_of(a));
  }
  std::vector<Permutation> out;
  for (const int r : canonical_ranks(t, ranks)) out.push_back(t.perms[r]);
  return out;
}

std::uint64_t perm_class_size(int m, int n, bool normalize) {
  if (m < 1 || n < 1) throw DomainError("perm_class_size: dims must be >= 1");
  const std::uint64_t f = checked_factorial(m);
  const int power = normalize ? n - 1 : n;
  std::uint64_t total = 1;
  for (int i = 0; i < power; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / f) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= f;
  }
  return total;
}

std::vector<std::vector<Permutation>> enumerate_perm_class(
    int m, int n, bool normalize, std::uint64_t cap) {
  const std::uint64_t size = perm_class_size(m, n, normalize);
  if (size > cap) {
    throw CapExceeded("enumeration of P(" + std::to_string(m) + "," +
                      std::to_string(n) + ") needs " + std::to_string(size) +
                      " iterations, above the cap of " + std::to_string(cap));
  }
  const PermTables t = make_tables(m);
  const int count = static_cast<int>(t.perms.size());
  std::vector<std::vector<Permutation>> out;
  std::vector<int> idx(n, 0);
  auto emit = [&] {
    std::vector<Permutation> tuple;
    tuple.reserve(n);
    for (const int r : idx) tuple.push_back(t.perms[r]);
    out.push_back(std::move(tuple));
  };
  if (!normalize) {
    while (true) {
      emit();
      int pos = n - 1;
      while (pos >= 0 && ++idx[pos] == count) idx[pos--] = 0;
      if (pos < 0) break;
    }
    return out;
  }
  // Sorted tuples starting at the identity; keep those already canonical.
  while (true) {
    if (canonical_ranks(t, idx) == idx) emit();
    int pos = n - 1;
    while (pos >= 1 && idx[pos] == count - 1) --pos;
    if (pos < 1) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[pos];
  }
  return out;
}

SearchResult search_perm(int m, int n, const SearchOptions& options) {
  const auto tuples = enumerate_perm_class(m, n, true, options.cap);
  EngineOptions eo = options.engine;
  if (resolve_threads(eo.threads) > 1) eo.threads = 1;
  SearchOptions so = options;
  return run_shards(
      static_cast<int>(tuples.size()),
      [&](int shard) {
        RightModuleMap t = perm_map(tuples[shard]);
        NormReport rep = norm_report(t, eo);
        const int iterations = rep.iterations;
        return make_record(MapClass::kPerm, std::move(t), std::move(rep),
                           shard, eo.seed, iterations);
      },
      so);
}

SearchResult search_unitary(int m, int n, int iters, int restarts,
                            std::uint64_t seed, const SearchOptions& options) {
  if (m < 1 || n < 1) throw DomainError("search_unitary: dims must be >= 1");
  if (iters < 1) throw DomainError("search_unitary: iters must be >= 1");
  if (restarts < 1) throw DomainError("search_unitary: restarts must be >= 1");
  EngineOptions eo = options.engine;
  eo.seed = seed;
  if (resolve_threads(eo.threads) > 1) eo.threads = 1;
  const int steps = std::max(1, iters / restarts);
  return run_shards(
      restarts,
      [&](int shard) {
        ChainOutcome c = run_unitary_chain(m, n, steps, shard, seed);
        EngineOptions local = eo;
        local.starts.push_back(c.witness);
        NormReport rep = norm_report(c.map, local);
        return make_record(MapClass::kUnitary, std::move(c.map),
                           std::move(rep), shard, seed, c.steps);
      },
      options);
}

Witness refine_witness(const RightModuleMap& t, const Witness& start,
                       int restarts, std::uint64_t seed) {
  const int k = std::max(start.k, std::min(t.rows(), t.cols()));
  EngineOptions eo;
  eo.restarts = restarts;
  eo.seed = seed;
  eo.starts.push_back(start);
  AmplifiedResult r = amplified_norm_lower(t, k, eo);
  return std::move(r.witness);
}

std::vector<TensorPowerEntry> tensor_power_ratio(const RightModuleMap& t,
                                                 int k_max,
                                                 const EngineOptions& options) {
  if (k_max < 1) throw DomainError("tensor_power_ratio: k_max must be >= 1");
  double entries = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    entries *= static_cast<double>(t.rows()) * t.cols();
    if (entries > 1e6) {
      throw CapExceeded("tensor power " + std::to_string(k) +
                        " exceeds 10^6 matrix entries");
    }
  }
  std::vector<TensorPowerEntry> out;
  const NormReport base = norm_report(t, options);
  out.push_back({1, base.ratio_lower, base.cb_lower, base.op_upper_best(), true});
  RightModuleMap cur = t;
  Witness cur_w = base.cb_witness;
  for (int k = 2; k <= k_max; ++k) {
    Witness start = tensor_witness(cur, cur_w, t, base.cb_witness);
    cur = tensor(cur, t);
    EngineOptions eo = options;
    eo.starts.push_back(std::move(start));
    const NormReport rep = norm_report(cur, eo);
    const bool ok = rep.ratio_lower >= std::pow(base.ratio_lower, k) - 1e-9;
    out.push_back({k, rep.ratio_lower, rep.cb_lower, rep.op_upper_best(), ok});
    cur_w = rep.cb_witness;
  }
  return out;
}

}  // namespace cbnorm
