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
#include "cbnorm/modmap.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cbnorm/constructions.hpp"
#include "cbnorm/error.hpp"
#include "test_support.hpp"

namespace cbnorm {
namespace {

using testing::max_abs_diff;
using testing::random_map;
using testing::real;

TEST(RightModuleMap, ValidatesShapes) {
  EXPECT_THROW(RightModuleMap(2, 3, {CMatrix::Identity(2, 2)}), DomainError);
  EXPECT_THROW(RightModuleMap(2, 1, {CMatrix::Identity(3, 3)}), DomainError);
  EXPECT_THROW(RightModuleMap(0, 0, {}), DomainError);
  EXPECT_NO_THROW(RightModuleMap(2, 1, {CMatrix::Identity(2, 2)}));
}

TEST(Apply, ExampleDisplayedAction) {
  const RightModuleMap t = example_2x3().map;
  Rng rng = make_rng(1);
  const CMatrix x = gaussian_matrix(2, 3, rng);
  const Complex a = x(0, 0), b = x(1, 0), c = x(0, 1), d = x(1, 1), e = x(0, 2), f = x(1, 2);
  CMatrix expected(2, 3);
  expected << a, c, f, b, -d, e;
  EXPECT_EQ(max_abs_diff(cbnorm::apply(t, x), expected), 0.0);
}

TEST(Apply, IdentityMapAndShapeErrors) {
  const RightModuleMap t = RightModuleMap::identity(3, 4);
  Rng rng = make_rng(2);
  const CMatrix x = gaussian_matrix(3, 4, rng);
  EXPECT_EQ(max_abs_diff(cbnorm::apply(t, x), x), 0.0);
  EXPECT_THROW(cbnorm::apply(t, gaussian_matrix(4, 3, rng)), DomainError);
  EXPECT_THROW(apply_amplified(t, 2, gaussian_matrix(3, 4, rng)), DomainError);
}

TEST(Apply, RightModularity) {
  Rng rng = make_rng(3);
  for (int i = 0; i < 200; ++i) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 4);
    const RightModuleMap t = random_map(m, n, rng);
    const CMatrix x = gaussian_matrix(m, n, rng);
    const CVector dv = gaussian_matrix(n, 1, rng).col(0);
    const CMatrix d = dv.asDiagonal();
    EXPECT_LT(frobenius(cbnorm::apply(t, x * d) - cbnorm::apply(t, x) * d), 1e-12);
  }
}

TEST(ApplyAmplified, LevelOneIsApplyAndBlocksAreIndependent) {
  Rng rng = make_rng(4);
  const RightModuleMap t = random_map(3, 4, rng);
  const CMatrix x = gaussian_matrix(3, 4, rng);
  EXPECT_EQ(max_abs_diff(apply_amplified(t, 1, x), cbnorm::apply(t, x)), 0.0);
  const int k = 3;
  const CMatrix big = gaussian_matrix(k * 3, 4, rng);
  const CMatrix y = apply_amplified(t, k, big);
  for (int b = 0; b < k; ++b) {
    EXPECT_LT(max_abs_diff(y.middleRows(3 * b, 3), cbnorm::apply(t, big.middleRows(3 * b, 3))), 1e-14);
  }
}

TEST(ApplyAmplified, KnownWitnesses) {
  const NamedConstruction c3 = example_2x3();
  const CMatrix y3 = apply_amplified(c3.map, 2, c3.witnesses[1].x);
  const double r = 1.0 / std::sqrt(2.0);
  const CMatrix expected3 = r * real(4, 3, {1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1});
  EXPECT_LT(max_abs_diff(y3, expected3), 1e-15);
  EXPECT_NEAR(op_norm_matrix(y3), std::sqrt(3.0), 1e-14);

  const NamedConstruction c4 = example_2x4();
  const CMatrix y4 = apply_amplified(c4.map, 2, c4.witnesses[1].x);
  const CMatrix expected4 =
      r * real(4, 4, {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1});
  EXPECT_LT(max_abs_diff(y4, expected4), 1e-15);
  EXPECT_NEAR(op_norm_matrix(y4), 2.0, 1e-14);
}

TEST(ApplyAmplified, AdjointPairing) {
  Rng rng = make_rng(5);
  for (int i = 0; i < 20; ++i) {
    const RightModuleMap t = random_map(3, 2, rng);
    const CMatrix x = gaussian_matrix(6, 2, rng);
    const CMatrix y = gaussian_matrix(6, 2, rng);
    const Complex lhs = (y.adjoint() * apply_amplified(t, 2, x)).trace();
    const Complex rhs = (apply_amplified_adjoint(t, 2, y).adjoint() * x).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(Witness, MakeEvaluateAndLift) {
  const NamedConstruction c = example_2x3();
  const Witness& w = c.witnesses[1];
  EXPECT_NEAR(w.value, std::sqrt(3.0), 1e-14);
  EXPECT_EQ(evaluate_witness(c.map, w), w.value);
  const Witness lifted = lift_witness(w, 2, 4);
  EXPECT_EQ(lifted.k, 4);
  EXPECT_EQ(lifted.x.rows(), 8);
  EXPECT_NEAR(lifted.value, w.value, 1e-14);
  EXPECT_THROW(lift_witness(w, 2, 1), DomainError);
  EXPECT_THROW(make_witness(c.map, 3, w.x), DomainError);
}

TEST(Embed, PadsAndPreservesColumns) {
  const RightModuleMap t = example_2x3().map;
  EXPECT_EQ(embed(t, 2, 3), t);
  const RightModuleMap e = embed(t, 3, 4);
  EXPECT_EQ(e.rows(), 3);
  EXPECT_EQ(e.cols(), 4);
  EXPECT_EQ(max_abs_diff(e.column(2).topLeftCorner(2, 2), t.column(2)), 0.0);
  EXPECT_TRUE(e.column(3).isZero(0.0));
  EXPECT_THROW(embed(t, 1, 3), DomainError);
  EXPECT_THROW(embed(t, 2, 2), DomainError);
}

TEST(Truncate, MatchesSmallerExampleAndRoundTrips) {
  const RightModuleMap eg = thm_eg_map(2).map;
  const RightModuleMap t3 = truncate(eg, 3);
  const RightModuleMap ref = example_2x3().map;
  for (int j = 0; j < 3; ++j) {
    EXPECT_LT(max_abs_diff(t3.column(j), ref.column(j)), 1e-15);
  }
  EXPECT_EQ(truncate(eg, 4), eg);
  EXPECT_THROW(truncate(eg, 0), DomainError);
  EXPECT_THROW(truncate(eg, 5), DomainError);
  Rng rng = make_rng(6);
  const RightModuleMap r = random_map(3, 2, rng);
  EXPECT_EQ(truncate(embed(r, 3, 5), 2), r);
}

TEST(CompressMap, StandardBasisAndOneDimensional) {
  Rng rng = make_rng(7);
  const RightModuleMap t = random_map(3, 2, rng);
  std::vector<CVector> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(CVector::Unit(3, i));
  EXPECT_EQ(compress_map(t, basis), t);
  const std::vector<CVector> e1 = {CVector::Unit(3, 0)};
  const RightModuleMap c = compress_map(t, e1);
  EXPECT_EQ(c.rows(), 1);
  for (int j = 0; j < 2; ++j) EXPECT_EQ(c.column(j)(0, 0), t.column(j)(0, 0));
  const std::vector<CVector> bad = {CVector::Unit(3, 0), CVector::Unit(3, 0)};
  EXPECT_THROW(compress_map(t, bad), DomainError);
}

TEST(Tensor, IndexOrderAndWitness) {
  const RightModuleMap a = example_2x3().map;
  Rng rng = make_rng(8);
  const RightModuleMap b = random_map(3, 2, rng);
  const RightModuleMap t = tensor(a, b);
  EXPECT_EQ(t.rows(), 6);
  EXPECT_EQ(t.cols(), 6);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(max_abs_diff(t.column(j * 2 + i), kron(a.column(j), b.column(i))), 0.0);
    }
  }
  // T (x) S applied to x (x) y is T(x) (x) S(y).
  const CMatrix x = gaussian_matrix(2, 3, rng);
  const CMatrix y = gaussian_matrix(3, 2, rng);
  EXPECT_LT(max_abs_diff(cbnorm::apply(t, kron(x, y)), kron(cbnorm::apply(a, x), cbnorm::apply(b, y))), 1e-12);

  const NamedConstruction c = example_2x3();
  const Witness w = tensor_witness(c.map, c.witnesses[1], c.map, c.witnesses[1]);
  EXPECT_EQ(w.k, 4);
  EXPECT_NEAR(op_norm_matrix(w.x), 1.0, 1e-12);
  EXPECT_NEAR(w.value, 3.0, 1e-12);
}

TEST(RowConcatenation, Layout) {
  const RightModuleMap t = example_2x3().map;
  const CMatrix r = row_concatenation(t);
  EXPECT_EQ(r.rows(), 2);
  EXPECT_EQ(r.cols(), 6);
  EXPECT_EQ(max_abs_diff(r.middleCols(4, 2), t.column(2)), 0.0);
}

}  // namespace
}  // namespace cbnorm
