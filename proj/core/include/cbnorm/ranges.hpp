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
// Matrix numerical ranges of operator tuples and the tracial geometric mean.
//
// For a column stack b = [b_1; ...; b_l] and a unit vector xi, Q(b, xi) is the
// l x l Gram matrix [<b_i xi, b_j xi>].  W_m(b) collects these over the unit
// sphere and W_m,e(b) keeps the ones of maximal trace ||b||^2, i.e. those
// generated by unit vectors in the top eigenspace of b^* b.
//
// A row tuple a = [a_1 ... a_l] is handled through its adjoint column
// a^* = [a_1^*; ...; a_l^*]: every range routine applied to a row works with
// Q(a^*, xi), which is the form that appears in norm formulas for x -> a x b.
#ifndef CBNORM_RANGES_HPP_
#define CBNORM_RANGES_HPP_

#include <cstdint>
#include <vector>

#include "cbnorm/linalg.hpp"
#include "cbnorm/modmap.hpp"

namespace cbnorm {

enum class Orientation { kRow, kColumn };

class OperatorTuple {
 public:
  // Throws DomainError on an empty list or mismatched square dimensions.
  OperatorTuple(std::vector<CMatrix> entries, Orientation orientation);

  // The row [a_1 ... a_n] of column operators of t.
  static OperatorTuple row_of(const RightModuleMap& t);
  // The column [e_1 e_1^*; ...; e_n e_n^*] of diagonal matrix units of D_n.
  static OperatorTuple diagonal_units(int n);

  int size() const { return static_cast<int>(entries_.size()); }
  int dim() const { return static_cast<int>(entries_.front().rows()); }
  Orientation orientation() const { return orientation_; }
  const std::vector<CMatrix>& entries() const { return entries_; }

  // The column stack whose range is taken (entries, or their adjoints).
  std::vector<CMatrix> stack() const;
  // stack^* stack = sum_i c_i^* c_i; its top eigenvalue is the squared norm.
  CMatrix gram() const;

  OperatorTuple scaled(double factor) const;

 private:
  std::vector<CMatrix> entries_;
  Orientation orientation_;
};

struct RangePoint {
  CMatrix q;   // l x l Hermitian PSD
  CVector xi;  // generating unit vector
};

// Relative threshold for membership of the maximal eigenspace.
inline constexpr double kEigenspaceTolerance = 1e-9;

// Throws DomainError unless ||xi|| = 1 within 1e-10.
RangePoint q_matrix(const OperatorTuple& b, const CVector& xi);

// Vertices Q(b, e_p) of W_m,e(b) for a tuple of diagonal matrices; the range
// is their convex hull.  Throws DomainError on a non-diagonal entry.
std::vector<RangePoint> wme_diagonal(const OperatorTuple& b);

// Q-points of `samples` Haar-random unit vectors in the maximal eigenspace.
std::vector<RangePoint> wme_sample(const OperatorTuple& a, int samples,
                                   std::uint64_t seed);

// tgm(X, Y) = || sqrt(X) sqrt(Y) ||_1.
double tgm(const CMatrix& x, const CMatrix& y);

// tgm(Q(a^*, xi), Q(b, eta)) for the column operators a of t and the diagonal
// units b, where Q(b, eta) = diag(|eta_i|^2).  Always at most ||t||.
double tgm_lower_bound(const RightModuleMap& t, const CVector& xi,
                       const CVector& eta);

// Minimum Frobenius distance between conv(wme_sample(a)) and
// conv(wme_diagonal(b)), computed exactly for the sampled vertex sets by a
// minimum-norm-point method on their Minkowski difference.  Zero suggests the
// two extremal ranges meet; a positive value is evidence only, since the
// samples may miss part of W_m,e(a^*).
double star_distance(const OperatorTuple& a, const OperatorTuple& b,
                     int samples, std::uint64_t seed);

// Minimum Euclidean norm over the convex hull of the columns of `points`.
double min_norm_point(const Eigen::MatrixXd& points);

}  // namespace cbnorm

#endif  // CBNORM_RANGES_HPP_
