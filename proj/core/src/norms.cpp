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
#include "cbnorm/norms.hpp"

#include <algorithm>
#include <cmath>

#include "cbnorm/error.hpp"
#include "cbnorm/parallel.hpp"
#include "cbnorm/ranges.hpp"

namespace cbnorm {

namespace {

struct TopPair {
  double sigma;
  CVector left;
  CVector right;
};

TopPair top_pair(const CMatrix& y) {
  const Svd s = svd(y);
  return {s.singular_values(0), s.left.col(0), s.right.col(0)};
}

// v e_j^* in the first block, with a_j the largest column operator and v its
// top right singular vector.  Its image has norm exactly hs_norm(t).
CMatrix column_start(const RightModuleMap& t, int k) {
  int best = 0;
  double best_norm = -1.0;
  for (int j = 0; j < t.cols(); ++j) {
    const double v = op_norm_matrix(t.column(j));
    if (v > best_norm) {
      best_norm = v;
      best = j;
    }
  }
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(k) * t.rows(), t.cols());
  x.block(0, best, t.rows(), 1) = svd(t.column(best)).right.col(0);
  return x;
}

CMatrix generated_start(const RightModuleMap& t, int k, std::uint64_t seed,
                        int restart) {
  Rng rng = make_rng(seed, (static_cast<std::uint64_t>(k) << 32) |
                               static_cast<std::uint32_t>(restart));
  const CMatrix g =
      gaussian_matrix(static_cast<Eigen::Index>(k) * t.rows(), t.cols(), rng);
  if (restart == 0) return polar_factor(g);
  return g / op_norm_matrix(g);
}

}  // namespace

AmplifiedResult ascend(const RightModuleMap& t, int k, const CMatrix& x0,
                       int max_iter, double tol) {
  CMatrix x = x0;
  const double start_norm = op_norm_matrix(x);
  if (start_norm > 1.0) x /= start_norm;

  TopPair pair = top_pair(apply_amplified(t, k, x));
  double value = pair.sigma;
  int iterations = 0;
  for (; iterations < max_iter; ++iterations) {
    CMatrix target = pair.left * pair.right.adjoint();
    const CMatrix g = apply_amplified_adjoint(t, k, target);
    if (g.isZero(0.0)) break;
    CMatrix next = polar_factor(g);
    TopPair next_pair = top_pair(apply_amplified(t, k, next));
    if (!(next_pair.sigma > value)) break;
    const double gain = (next_pair.sigma - value) / next_pair.sigma;
    x = std::move(next);
    pair = std::move(next_pair);
    value = pair.sigma;
    if (gain < tol) {
      ++iterations;
      break;
    }
  }
  AmplifiedResult out;
  out.witness = make_witness(t, k, std::move(x));
  out.value = out.witness.value;
  out.left = std::move(pair.left);
  out.right = std::move(pair.right);
  out.iterations = iterations;
  return out;
}

AmplifiedResult amplified_norm_lower(const RightModuleMap& t, int k,
                                     const EngineOptions& options) {
  if (k < 1) throw DomainError("amplified_norm_lower: k must be >= 1");
  std::vector<CMatrix> starts;
  for (const Witness& w : options.starts) {
    if (w.k > k) {
      throw DomainError("amplified_norm_lower: start witness above level k");
    }
    starts.push_back(lift_witness(w, t.rows(), k).x);
    if (starts.back().cols() != t.cols()) {
      throw DomainError("amplified_norm_lower: start witness has wrong shape");
    }
  }
  starts.push_back(column_start(t, k));
  const std::size_t fixed = starts.size();
  const int generated = std::max(options.restarts, 0);

  std::vector<AmplifiedResult> results(fixed + generated);
  parallel_for(results.size(), resolve_threads(options.threads),
               [&](std::size_t i) {
                 const CMatrix x0 =
                     i < fixed ? starts[i]
                               : generated_start(t, k, options.seed,
                                                 static_cast<int>(i - fixed));
                 results[i] = ascend(t, k, x0, options.max_iter, options.tol);
               });

  std::size_t best = 0;
  int iterations = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    iterations += results[i].iterations;
    if (results[i].value > results[best].value) best = i;
  }
  AmplifiedResult out = std::move(results[best]);
  out.iterations = iterations;
  return out;
}

double hs_norm(const RightModuleMap& t) {
  double best = 0.0;
  for (const CMatrix& a : t.columns()) best = std::max(best, op_norm_matrix(a));
  return best;
}

double cb_row_bound(const RightModuleMap& t) {
  return op_norm_matrix(row_concatenation(t));
}

double cb_factorization_bound(const RightModuleMap& t) {
  const int m = t.rows();
  const int n = t.cols();
  const Eigen::Index mm = static_cast<Eigen::Index>(m) * m;
  CMatrix stacked(mm, n);
  for (int p = 0; p < n; ++p) {
    stacked.col(p) = Eigen::Map<const CVector>(t.column(p).data(), mm);
  }
  const Svd s = svd(stacked);
  const double cutoff = s.singular_values(0) * 1e-14;
  if (s.singular_values(0) == 0.0) return 0.0;

  double best = cb_row_bound(t);
  for (const double split : {0.0, 0.5, 1.0}) {
    CMatrix left_gram = CMatrix::Zero(m, m);
    RVector right_diag = RVector::Zero(n);
    for (Eigen::Index r = 0; r < s.singular_values.size(); ++r) {
      const double sigma = s.singular_values(r);
      if (sigma <= cutoff) break;
      const Eigen::Map<const CMatrix> u(s.left.col(r).data(), m, m);
      left_gram.noalias() += std::pow(sigma, 2.0 * split) * (u * u.adjoint());
      right_diag += std::pow(sigma, 2.0 * (1.0 - split)) *
                    s.right.col(r).cwiseAbs2();
    }
    const double left_norm = std::sqrt(std::max(
        0.0, hermitian_eigen(0.5 * (left_gram + left_gram.adjoint()))
                 .values.maxCoeff()));
    const double right_norm = std::sqrt(right_diag.maxCoeff());
    best = std::min(best, left_norm * right_norm);
  }
  return best;
}

OpNormResult op_norm(const RightModuleMap& t, const EngineOptions& options) {
  OpNormResult out;
  const double hs = hs_norm(t);
  out.upper = std::sqrt(static_cast<double>(std::min(t.rows(), t.cols()))) * hs;
  EngineOptions opts = options;
  opts.starts.clear();
  for (const Witness& w : options.starts) {
    if (w.k == 1) opts.starts.push_back(w);
  }
  AmplifiedResult r = amplified_norm_lower(t, 1, opts);
  out.lower = r.value;
  out.witness = std::move(r.witness);
  out.iterations = r.iterations;
  out.tgm_value = r.value > 0.0 ? tgm_lower_bound(t, r.left, r.right) : 0.0;
  out.left = std::move(r.left);
  out.right = std::move(r.right);
  return out;
}

NormBounds cb_norm(const RightModuleMap& t, const EngineOptions& options) {
  NormBounds out;
  const int m = t.rows();
  const int n = t.cols();
  // Every level bounds the cb norm from below, so a start above min(m, n)
  // raises the working level instead of being rejected.
  int k = std::min(m, n);
  for (const Witness& w : options.starts) k = std::max(k, w.k);
  const double hs = hs_norm(t);
  const double ks = std::sqrt(static_cast<double>(std::min(m * m, n)));
  out.upper = std::min({ks * hs, cb_row_bound(t), cb_factorization_bound(t)});
  AmplifiedResult r = amplified_norm_lower(t, k, options);
  out.lower = r.value;
  out.witness = std::move(r.witness);
  out.left = std::move(r.left);
  out.right = std::move(r.right);
  out.iterations = r.iterations;
  return out;
}

double NormReport::op_upper_best() const { return std::min(op_upper, cb_upper); }

NormReport norm_report(const RightModuleMap& t, const EngineOptions& options) {
  NormReport r;
  r.m = t.rows();
  r.n = t.cols();
  r.restarts = options.restarts;
  r.seed = options.seed;
  const int k = std::min(r.m, r.n);

  if (t.is_zero()) {
    CMatrix x1 = CMatrix::Zero(r.m, r.n);
    x1(0, 0) = 1.0;
    CMatrix xk = CMatrix::Zero(static_cast<Eigen::Index>(k) * r.m, r.n);
    xk(0, 0) = 1.0;
    r.op_witness = Witness{1, std::move(x1), 0.0};
    r.cb_witness = Witness{k, std::move(xk), 0.0};
    return r;
  }

  r.hs = hs_norm(t);
  const OpNormResult op = op_norm(t, options);
  r.op_lower = op.lower;
  r.op_upper = op.upper;
  r.op_tgm = op.tgm_value;
  r.op_witness = op.witness;
  r.iterations = op.iterations;

  if (k == 1) {
    // One row or one column: T_{k,1} = T, so the op computation is the cb one.
    r.cb_lower = op.lower;
    r.cb_upper = r.hs;
    r.cb_witness = op.witness;
  } else {
    EngineOptions opts = options;
    // The op witness lifted to level k seeds the cb search.
    opts.starts.push_back(op.witness);
    const NormBounds cb = cb_norm(t, opts);
    r.cb_lower = std::max(cb.lower, r.op_lower);
    r.cb_upper = cb.upper;
    r.cb_witness = cb.witness;
    if (cb.lower < r.op_lower) {
      r.cb_witness = lift_witness(op.witness, r.m, k);
    }
    r.iterations += cb.iterations;
  }
  const double denom = r.op_upper_best();
  r.ratio_lower = denom > 0.0 ? r.cb_lower / denom : 0.0;
  return r;
}

Json report_to_json(const NormReport& r) {
  return Json{{"m", r.m},
              {"n", r.n},
              {"hs", r.hs},
              {"op_lower", r.op_lower},
              {"op_upper", r.op_upper},
              {"op_upper_best", r.op_upper_best()},
              {"op_tgm", r.op_tgm},
              {"cb_lower", r.cb_lower},
              {"cb_upper", r.cb_upper},
              {"cb_gap", r.cb_gap()},
              {"ratio_lower", r.ratio_lower},
              {"restarts", r.restarts},
              {"seed", r.seed},
              {"iterations", r.iterations},
              {"op_witness", witness_to_json(r.op_witness)},
              {"cb_witness", witness_to_json(r.cb_witness)}};
}

}  // namespace cbnorm
