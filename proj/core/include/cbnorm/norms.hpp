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
// The norm engine: Hilbert-Schmidt, operator and cb norms of right module
// maps, as certified upper bounds plus witness-backed lower bounds.
//
// For a right D_n-module map the cb norm is attained at the column
// amplification T_{k,1} with k = min(m, n).  Lower bounds come from an
// alternating ascent on ||T_{k,1}(x)|| over the unit ball: given x, take the
// top singular pair (zeta, eta) of the image; the linearized objective
// Re zeta^* T_{k,1}(x') eta is maximized over ||x'|| <= 1 by the polar factor
// of T_{k,1}^*(zeta eta^*).  Every reported lower bound is the exact value of
// its returned witness.
#ifndef CBNORM_NORMS_HPP_
#define CBNORM_NORMS_HPP_

#include <cstdint>
#include <vector>

#include "cbnorm/modmap.hpp"
#include "cbnorm/serialization.hpp"

namespace cbnorm {

struct EngineOptions {
  int restarts = 32;
  int max_iter = 500;
  double tol = 1e-12;  // relative gain below which an ascent stops
  std::uint64_t seed = 0;
  int threads = 0;  // 0: CBNORM_THREADS or 1
  // Extra starting points, tried before the generated ones.  Witnesses at a
  // lower level are zero-padded to the requested level.
  std::vector<Witness> starts;
};

struct AmplifiedResult {
  double value = 0.0;
  Witness witness;
  CVector left;   // top left singular vector of the image
  CVector right;  // top right singular vector of the image
  int iterations = 0;  // summed over all starts
};

// One monotone ascent from x (scaled into the unit ball if needed).
AmplifiedResult ascend(const RightModuleMap& t, int k, const CMatrix& x,
                       int max_iter, double tol);

// Best ascent over: options.starts, a column start v e_j^* on the largest
// column operator, a polar-factor Gaussian start and options.restarts - 1
// further Gaussian starts.  Ties go to the earliest start.
AmplifiedResult amplified_norm_lower(const RightModuleMap& t, int k,
                                     const EngineOptions& options = {});

// max_j ||a_j||.
double hs_norm(const RightModuleMap& t);

// ||[a_1 ... a_n]||, the cb bound of the canonical representation.
double cb_row_bound(const RightModuleMap& t);

// ||a|| ||b|| for representations built from the SVD of the column operators
// viewed as vectors; the smallest over a few balancings.
double cb_factorization_bound(const RightModuleMap& t);

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  Witness witness;
  CVector left;
  CVector right;
  int iterations = 0;
};

struct OpNormResult : NormBounds {
  // tgm_lower_bound at the engine's extremal pair.
  double tgm_value = 0.0;
};

OpNormResult op_norm(const RightModuleMap& t, const EngineOptions& options = {});
NormBounds cb_norm(const RightModuleMap& t, const EngineOptions& options = {});

struct NormReport {
  int m = 0;
  int n = 0;
  double hs = 0.0;
  double op_lower = 0.0;
  double op_upper = 0.0;  // sqrt(min(m, n)) * hs
  double cb_lower = 0.0;
  double cb_upper = 0.0;
  double op_tgm = 0.0;
  Witness op_witness;
  Witness cb_witness;
  double ratio_lower = 0.0;  // cb_lower / op_upper_best()
  int restarts = 0;
  std::uint64_t seed = 0;
  int iterations = 0;

  // Smallest certified upper bound for ||T||, min(op_upper, cb_upper).
  double op_upper_best() const;
  double cb_gap() const { return cb_upper - cb_lower; }
};

NormReport norm_report(const RightModuleMap& t,
                       const EngineOptions& options = {});

Json report_to_json(const NormReport& r);

}  // namespace cbnorm

#endif  // CBNORM_NORMS_HPP_
