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
// Searches over the structured classes of right module maps whose column
// operators are permutation matrices or unitaries, looking for large
// cb-to-operator norm ratios.
#ifndef CBNORM_SEARCH_HPP_
#define CBNORM_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cbnorm/constructions.hpp"
#include "cbnorm/norms.hpp"

namespace cbnorm {

enum class MapClass { kPerm, kUnitary };

std::string class_tag(MapClass c);
// Throws DomainError on anything but "perm" or "unitary".
MapClass parse_class(std::string_view tag);

struct SearchRecord {
  MapClass map_class = MapClass::kPerm;
  int m = 0;
  int n = 0;
  int shard = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  RightModuleMap map = RightModuleMap::zero(1, 1);
  NormReport report;
  // cb_lower over the certified bound op_upper_best().
  double ratio_lower = 0.0;
  // cb_lower over the engine's op_lower.
  double ratio_estimate = 0.0;
  // Set when op_lower and op_upper_best disagree, so the estimate rests on
  // an uncertified denominator.
  bool heuristic_denominator = false;
};

SearchRecord make_record(MapClass c, RightModuleMap map, NormReport report,
                         int shard, std::uint64_t seed, int iterations);

Json record_to_json(const SearchRecord& r);
SearchRecord record_from_json(const Json& j);

// Recomputes ratio_lower from the serialized map and cb witness alone and
// checks the column operators against the class.  On failure `why` (if
// given) says what disagreed.
bool verify_record(const SearchRecord& r, double tol = 1e-9,
                   std::string* why = nullptr);

// Reads a JSON-lines file of records.  A missing file gives no records.
std::vector<SearchRecord> read_records(const std::filesystem::path& path);
void append_record(const std::filesystem::path& path, const SearchRecord& r);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// All permutations of {0, ..., m-1} in lexicographic order.
std::vector<Permutation> all_permutations(int m);

// Lexicographically least tuple equivalent to `alphas` under left
// multiplication by some alpha_j^{-1}, simultaneous conjugation and column
// reordering.  Each of these preserves both norms.
std::vector<Permutation> canonical_perm_tuple(
    const std::vector<Permutation>& alphas);

// m!^(n-1) when normalized, m!^n otherwise; saturates at UINT64_MAX.
std::uint64_t perm_class_size(int m, int n, bool normalize);

// Every n-tuple of permutations of degree m, or one representative per
// symmetry class (first entry the identity) when normalized, in a fixed
// order.  Throws CapExceeded if perm_class_size exceeds `cap`.
std::vector<std::vector<Permutation>> enumerate_perm_class(
    int m, int n, bool normalize, std::uint64_t cap = kDefaultEnumerationCap);

struct SearchOptions {
  EngineOptions engine;
  std::uint64_t cap = kDefaultEnumerationCap;
  // Records from an earlier session; their shards are not recomputed.
  std::vector<SearchRecord> previous;
  // Called once per newly computed record, in shard order.
  std::function<void(const SearchRecord&)> on_record;
};

struct SearchResult {
  std::optional<SearchRecord> best;
  std::vector<SearchRecord> records;  // previous and new, sorted by shard
  std::size_t computed = 0;
};

// One shard per normalized class representative.
SearchResult search_perm(int m, int n, const SearchOptions& options = {});

// `restarts` shards, each a chain from a Haar-random tuple with about
// iters / restarts steps.  A step is an alternating ascent on the column
// operators or a geodesic perturbation a_j exp(eps A_j), accepted when the
// cb lower bound improves; eps halves on rejection down to 1e-4.
SearchResult search_unitary(int m, int n, int iters, int restarts,
                            std::uint64_t seed,
                            const SearchOptions& options = {});

// Engine seeded at `start` plus fresh restarts at level
// max(start.k, min(m, n)); the result is at least start's value.
Witness refine_witness(const RightModuleMap& t, const Witness& start,
                       int restarts, std::uint64_t seed);

struct TensorPowerEntry {
  int k = 1;
  double ratio_lower = 0.0;
  double cb_lower = 0.0;
  double op_upper = 0.0;
  bool consistent = true;  // ratio_lower >= ratio(1)^k - 1e-9
};

// Ratios for the tensor powers T, T (x) T, ... up to k_max.  Power k is
// seeded with the tensor product of the witnesses found so far.  Throws
// CapExceeded when m^k n^k exceeds 10^6.
std::vector<TensorPowerEntry> tensor_power_ratio(
    const RightModuleMap& t, int k_max, const EngineOptions& options = {});

}  // namespace cbnorm

#endif  // CBNORM_SEARCH_HPP_
