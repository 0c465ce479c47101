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
#include <cstdlib>
#include <filesystem>
#include <set>

#include <gtest/gtest.h>

#include "cbnorm/error.hpp"
#include "cbnorm/serialization.hpp"
#include "test_support.hpp"

namespace cbnorm {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const char* env = std::getenv("CBNORM_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "cbnorm_search_test";
  fs::create_directories(dir);
  return dir;
}

std::vector<Permutation> cycles(int m, std::initializer_list<const char*> specs) {
  std::vector<Permutation> out;
  for (const char* s : specs) out.push_back(parse_cycles(s, m));
  return out;
}

TEST(Permutations, CountsAndOrder) {
  const auto p3 = all_permutations(3);
  ASSERT_EQ(p3.size(), 6u);
  EXPECT_EQ(p3.front(), (Permutation{0, 1, 2}));
  EXPECT_EQ(p3.back(), (Permutation{2, 1, 0}));
  EXPECT_TRUE(std::is_sorted(p3.begin(), p3.end()));
  EXPECT_EQ(all_permutations(4).size(), 24u);
  EXPECT_EQ(perm_class_size(3, 4, true), 216u);
  EXPECT_EQ(perm_class_size(3, 4, false), 1296u);
  EXPECT_EQ(perm_class_size(20, 20, false), UINT64_MAX);
}

TEST(Permutations, CanonicalFormIsInvariant) {
  Rng rng = make_rng(5);
  const auto all = all_permutations(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Permutation> tuple;
    for (int j = 0; j < 3; ++j) tuple.push_back(all[rng() % all.size()]);
    const auto canon = canonical_perm_tuple(tuple);
    EXPECT_EQ(canon.front(), (Permutation{0, 1, 2, 3}));

    const Permutation g = all[rng() % all.size()];
    // Left multiplication by an entry of the tuple, not an arbitrary one.
    std::vector<Permutation> shifted;
    for (const auto& a : tuple) shifted.push_back(compose(inverse(tuple[1]), a));
    EXPECT_EQ(canonical_perm_tuple(shifted), canon);
    std::vector<Permutation> conj;
    for (const auto& a : tuple) conj.push_back(compose(compose(g, a), inverse(g)));
    std::reverse(conj.begin(), conj.end());
    EXPECT_EQ(canonical_perm_tuple(conj), canon);
  }
}

TEST(Permutations, EquivalentTuplesHaveEqualNorms) {
  const auto a = cycles(3, {"(1 2)", "(1 2 3)", "(2 3)"});
  std::vector<Permutation> b;
  for (const auto& p : a) b.push_back(compose(inverse(a[2]), p));
  const NormReport ra = norm_report(perm_map(a));
  const NormReport rb = norm_report(perm_map(b));
  EXPECT_NEAR(ra.op_lower, rb.op_lower, 1e-9);
  EXPECT_NEAR(ra.cb_lower, rb.cb_lower, 1e-9);
  EXPECT_NEAR(ra.hs, rb.hs, 1e-12);
}

TEST(Permutations, EnumerationIsCanonicalAndComplete) {
  const auto reps = enumerate_perm_class(3, 3, true);
  std::set<std::vector<Permutation>> seen;
  for (const auto& r : reps) {
    EXPECT_EQ(canonical_perm_tuple(r), r);
    seen.insert(r);
  }
  EXPECT_EQ(seen.size(), reps.size());
  for (const auto& t : enumerate_perm_class(3, 3, false)) {
    EXPECT_EQ(seen.count(canonical_perm_tuple(t)), 1u);
  }
  EXPECT_EQ(enumerate_perm_class(2, 3, false).size(), 8u);
}

TEST(Permutations, CapExceeded) {
  EXPECT_THROW(enumerate_perm_class(4, 6, true), CapExceeded);
  EXPECT_THROW(enumerate_perm_class(3, 4, false, 100), CapExceeded);
  SearchOptions o;
  o.cap = 10;
  EXPECT_THROW(search_perm(3, 4, o), CapExceeded);
}

TEST(SearchPerm, SmallCasesHaveRatioOne) {
  for (const auto [m, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const SearchResult r = search_perm(m, n);
    ASSERT_TRUE(r.best.has_value());
    for (const auto& rec : r.records) {
      EXPECT_LE(rec.ratio_lower, 1.0 + 1e-5) << m << "," << n << " shard " << rec.shard;
    }
    EXPECT_NEAR(r.best->ratio_lower, 1.0, 1e-6);
  }
}

TEST(SearchPerm, ThreeByThreeClassesPresent) {
  const auto reps = enumerate_perm_class(3, 3, true);
  for (const auto& t : {cycles(3, {"(1 2 3)", "(1 3 2)"}), cycles(3, {"(1 2)", "(1 2 3)"}),
                        cycles(3, {"(1 2)", "(1 3)"})}) {
    std::vector<Permutation> tuple{Permutation{0, 1, 2}};
    tuple.insert(tuple.end(), t.begin(), t.end());
    const auto canon = canonical_perm_tuple(tuple);
    EXPECT_NE(std::find(reps.begin(), reps.end(), canon), reps.end());
  }
}

TEST(SearchPerm, ThreeByFourBeatsOne) {
  const auto reps = enumerate_perm_class(3, 4, true);
  const auto target = canonical_perm_tuple(cycles(3, {"(1)", "(1 2)", "(1 3)", "(2 3)"}));
  EXPECT_NE(std::find(reps.begin(), reps.end(), target), reps.end());

  std::size_t seen = 0;
  SearchOptions o;
  o.on_record = [&](const SearchRecord& r) {
    EXPECT_EQ(static_cast<std::size_t>(r.shard), seen);
    ++seen;
  };
  const SearchResult r = search_perm(3, 4, o);
  EXPECT_EQ(seen, reps.size());
  EXPECT_EQ(r.computed, reps.size());
  ASSERT_TRUE(r.best.has_value());
  EXPECT_GE(r.best->ratio_lower, 1.13);
  std::string why;
  EXPECT_TRUE(verify_record(*r.best, 1e-9, &why)) << why;
}

TEST(SearchRecord, JsonRoundTripAndVerify) {
  const NamedConstruction c = p34_example();
  const SearchRecord r = make_record(MapClass::kPerm, c.map, norm_report(c.map), 3, 9, 500);
  EXPECT_EQ(r.map_class, MapClass::kPerm);
  EXPECT_NEAR(r.ratio_lower, r.report.cb_lower / r.report.op_upper_best(), 1e-15);
  const Json j = record_to_json(r);
  EXPECT_EQ(j["class"], "perm");
  const SearchRecord back = record_from_json(parse_json(dump_json(j)));
  EXPECT_EQ(back.map, r.map);
  EXPECT_EQ(back.shard, 3);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_EQ(back.ratio_lower, r.ratio_lower);
  EXPECT_EQ(dump_json(record_to_json(back)), dump_json(j));
  std::string why;
  EXPECT_TRUE(verify_record(back, 1e-9, &why)) << why;

  SearchRecord bad = back;
  bad.report.cb_witness.x(0, 0) += 0.5;
  EXPECT_FALSE(verify_record(bad, 1e-9, &why));
  EXPECT_FALSE(why.empty());

  SearchRecord inflated = back;
  inflated.ratio_lower *= 1.01;
  EXPECT_FALSE(verify_record(inflated));

  SearchRecord not_perm = back;
  std::vector<CMatrix> cols = not_perm.map.columns();
  cols[1](0, 0) = 0.5;
  not_perm.map = RightModuleMap(3, 4, cols);
  EXPECT_FALSE(verify_record(not_perm));

  Json wrong_class = j;
  wrong_class["class"] = "banana";
  EXPECT_THROW(record_from_json(wrong_class), Error);
}

TEST(SearchRecord, ResumeSkipsShards) {
  const fs::path file = scratch_dir() / "resume_test.jsonl";
  fs::remove(file);
  EXPECT_TRUE(read_records(file).empty());

  SearchOptions first;
  first.on_record = [&](const SearchRecord& r) {
    if (r.shard < 2) append_record(file, r);
  };
  const SearchResult full = search_perm(3, 3, first);

  SearchOptions second;
  second.previous = read_records(file);
  ASSERT_EQ(second.previous.size(), 2u);
  const SearchResult resumed = search_perm(3, 3, second);
  EXPECT_EQ(resumed.computed, full.records.size() - 2);
  ASSERT_EQ(resumed.records.size(), full.records.size());
  for (std::size_t i = 0; i < full.records.size(); ++i) {
    EXPECT_EQ(resumed.records[i].shard, full.records[i].shard);
    EXPECT_EQ(resumed.records[i].map, full.records[i].map);
  }
  EXPECT_EQ(dump_json(record_to_json(*resumed.best)), dump_json(record_to_json(*full.best)));
}

TEST(SearchUnitary, TwoByFourReachesCliffordValue) {
  const SearchResult r = search_unitary(2, 4, 1000, 4, 1);
  ASSERT_TRUE(r.best.has_value());
  EXPECT_EQ(r.records.size(), 4u);
  EXPECT_GE(r.best->ratio_lower, std::sqrt(2.0) - 1e-3);
  EXPECT_LE(r.best->ratio_lower, std::sqrt(2.0) + 1e-9);
  std::string why;
  EXPECT_TRUE(verify_record(*r.best, 1e-9, &why)) << why;
}

TEST(SearchUnitary, SingleColumnRatioOne) {
  const SearchResult r = search_unitary(3, 1, 40, 2, 0);
  ASSERT_TRUE(r.best.has_value());
  EXPECT_NEAR(r.best->ratio_lower, 1.0, 1e-9);
}

TEST(SearchUnitary, Deterministic) {
  const SearchResult a = search_unitary(2, 3, 120, 2, 11);
  const SearchResult b = search_unitary(2, 3, 120, 2, 11);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(dump_json(record_to_json(a.records[i])), dump_json(record_to_json(b.records[i])));
  }
  EXPECT_LE(a.best->ratio_lower, std::sqrt(1.5) + 1e-9);
}

TEST(RefineWitness, ImprovesOrKeeps) {
  const NamedConstruction p = p34_example();
  const Witness w = refine_witness(p.map, p.witnesses.back(), 16, 0);
  EXPECT_GE(w.value, p.witnesses.back().value - 1e-12);
  EXPECT_GE(w.value / std::sqrt(3.0), 1.13);

  const NamedConstruction e = example_2x3();
  const Witness w2 = refine_witness(e.map, e.witnesses.back(), 4, 0);
  EXPECT_NEAR(w2.value, e.witnesses.back().value, 1e-9);

  Witness zero{2, CMatrix::Zero(4, 3), 0.0};
  EXPECT_GT(refine_witness(e.map, zero, 2, 0).value, 1.0);
}

TEST(TensorPower, SmallExampleSquares) {
  EngineOptions o;
  o.restarts = 4;
  const auto entries = tensor_power_ratio(example_2x3().map, 2, o);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_NEAR(entries[0].ratio_lower, std::sqrt(1.5), 1e-7);
  EXPECT_GE(entries[1].ratio_lower, 1.5 - 1e-3);
  EXPECT_TRUE(entries[1].consistent);

  const auto clifford = tensor_power_ratio(thm_eg_map(2).map, 2, o);
  EXPECT_GE(clifford[1].ratio_lower, 2.0 - 1e-6);
  EXPECT_TRUE(clifford[1].consistent);
}

TEST(TensorPower, IdentityAndCap) {
  EngineOptions o;
  o.restarts = 2;
  for (const auto& e : tensor_power_ratio(RightModuleMap::identity(2, 2), 2, o)) {
    EXPECT_NEAR(e.ratio_lower, 1.0, 1e-9);
  }
  EXPECT_THROW(tensor_power_ratio(p34_example().map, 6, o), CapExceeded);
}

}  // namespace
}  // namespace cbnorm
