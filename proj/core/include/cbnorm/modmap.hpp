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
// Right D_n-module maps on M_{m,n}, stored by their column operators.
//
// A right D_n-module map T acts column by column: column j of T(x) is
// a_j * (column j of x) for fixed m x m matrices a_1..a_n.  The diagonal
// right factors e_j e_j^* of the elementary-operator form are implicit.
#ifndef CBNORM_MODMAP_HPP_
#define CBNORM_MODMAP_HPP_

#include <span>
#include <vector>

#include "cbnorm/linalg.hpp"

namespace cbnorm {

class RightModuleMap {
 public:
  // Throws DomainError unless columns.size() == n and each is m x m.
  RightModuleMap(int m, int n, std::vector<CMatrix> columns);

  static RightModuleMap identity(int m, int n);
  static RightModuleMap zero(int m, int n);

  int rows() const { return m_; }
  int cols() const { return n_; }
  const std::vector<CMatrix>& columns() const { return columns_; }
  const CMatrix& column(int j) const { return columns_.at(j); }

  bool is_zero() const;

  friend bool operator==(const RightModuleMap& a, const RightModuleMap& b);

 private:
  int m_;
  int n_;
  std::vector<CMatrix> columns_;
};

// A point x in the unit ball of M_{k m, n} together with the operator norm of
// its image under the k-fold column amplification T_{k,1}.
struct Witness {
  int k = 1;
  CMatrix x;
  double value = 0.0;
};

CMatrix apply(const RightModuleMap& t, const CMatrix& x);

// Column j of the result is (I_k (x) a_j) times column j of x.
CMatrix apply_amplified(const RightModuleMap& t, int k, const CMatrix& x);

// Adjoint of apply_amplified with respect to the trace inner product.
CMatrix apply_amplified_adjoint(const RightModuleMap& t, int k,
                                const CMatrix& y);

// Evaluates the amplified image norm of x; throws DomainError on bad shapes.
Witness make_witness(const RightModuleMap& t, int k, CMatrix x);

// Recomputes the recorded value of w for t.
double evaluate_witness(const RightModuleMap& t, const Witness& w);

// Pads w with zero blocks so it lives at level k_new >= w.k for maps of
// row dimension m.
Witness lift_witness(const Witness& w, int m, int k_new);

// Zero-padding of every a_j to m2 x m2 plus zero column operators for the
// new columns.  Norms and cb norms are preserved.
RightModuleMap embed(const RightModuleMap& t, int m2, int n2);

// Keeps the first n2 column operators.
RightModuleMap truncate(const RightModuleMap& t, int n2);

// Column operators p a_j |_K written in the given orthonormal basis of K.
RightModuleMap compress_map(const RightModuleMap& t,
                            std::span<const CVector> basis);

// T (x) S on M_{m_T m_S, n_T n_S}; column (j, i) sits at index j * n_S + i
// and equals kron(a_j^T, a_i^S).
RightModuleMap tensor(const RightModuleMap& t, const RightModuleMap& s);

// Witness for T (x) S built from witnesses for T and S: the Kronecker product
// with rows regrouped into the (block, row) order of the tensor map.
Witness tensor_witness(const RightModuleMap& t, const Witness& wt,
                       const RightModuleMap& s, const Witness& ws);

// [a_1 ... a_n] as an m x (m n) matrix.
CMatrix row_concatenation(const RightModuleMap& t);

}  // namespace cbnorm

#endif  // CBNORM_MODMAP_HPP_
