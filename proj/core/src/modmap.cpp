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

#include <string>

#include "cbnorm/error.hpp"

namespace cbnorm {

namespace {

void require_shape(const RightModuleMap& t, int k, const CMatrix& x,
                   const char* what) {
  if (k < 1) throw DomainError(std::string(what) + ": level k must be >= 1");
  if (x.rows() != static_cast<Eigen::Index>(k) * t.rows() ||
      x.cols() != t.cols()) {
    throw DomainError(std::string(what) + ": expected a " +
                      std::to_string(k * t.rows()) + "x" +
                      std::to_string(t.cols()) + " matrix, got " +
                      std::to_string(x.rows()) + "x" +
                      std::to_string(x.cols()));
  }
}

}  // namespace

RightModuleMap::RightModuleMap(int m, int n, std::vector<CMatrix> columns)
    : m_(m), n_(n), columns_(std::move(columns)) {
  if (m < 1 || n < 1) {
    throw DomainError("RightModuleMap: dimensions must be positive");
  }
  if (columns_.size() != static_cast<std::size_t>(n)) {
    throw DomainError("RightModuleMap: expected " + std::to_string(n) +
                      " column operators, got " +
                      std::to_string(columns_.size()));
  }
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].rows() != m || columns_[j].cols() != m) {
      throw DomainError("RightModuleMap: column operator " +
                        std::to_string(j) + " is not " + std::to_string(m) +
                        "x" + std::to_string(m));
    }
    if (!all_finite(columns_[j])) {
      throw DomainError("RightModuleMap: column operator " +
                        std::to_string(j) + " is not finite");
    }
  }
}

RightModuleMap RightModuleMap::identity(int m, int n) {
  return RightModuleMap(
      m, n, std::vector<CMatrix>(n, CMatrix::Identity(m, m)));
}

RightModuleMap RightModuleMap::zero(int m, int n) {
  return RightModuleMap(m, n, std::vector<CMatrix>(n, CMatrix::Zero(m, m)));
}

bool RightModuleMap::is_zero() const {
  for (const CMatrix& a : columns_) {
    if (!a.isZero(0.0)) return false;
  }
  return true;
}

bool operator==(const RightModuleMap& a, const RightModuleMap& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_) return false;
  for (int j = 0; j < a.n_; ++j) {
    if (a.columns_[j] != b.columns_[j]) return false;
  }
  return true;
}

CMatrix apply(const RightModuleMap& t, const CMatrix& x) {
  return apply_amplified(t, 1, x);
}

CMatrix apply_amplified(const RightModuleMap& t, int k, const CMatrix& x) {
  require_shape(t, k, x, "apply_amplified");
  const int m = t.rows();
  CMatrix out(x.rows(), x.cols());
  for (int j = 0; j < t.cols(); ++j) {
    // Column j viewed as an m x k matrix whose columns are the k blocks.
    Eigen::Map<const CMatrix> in_blocks(x.col(j).data(), m, k);
    Eigen::Map<CMatrix> out_blocks(out.col(j).data(), m, k);
    out_blocks.noalias() = t.column(j) * in_blocks;
  }
  return out;
}

CMatrix apply_amplified_adjoint(const RightModuleMap& t, int k,
                                const CMatrix& y) {
  require_shape(t, k, y, "apply_amplified_adjoint");
  const int m = t.rows();
  CMatrix out(y.rows(), y.cols());
  for (int j = 0; j < t.cols(); ++j) {
    Eigen::Map<const CMatrix> in_blocks(y.col(j).data(), m, k);
    Eigen::Map<CMatrix> out_blocks(out.col(j).data(), m, k);
    out_blocks.noalias() = t.column(j).adjoint() * in_blocks;
  }
  return out;
}

Witness make_witness(const RightModuleMap& t, int k, CMatrix x) {
  const double value = op_norm_matrix(apply_amplified(t, k, x));
  return Witness{k, std::move(x), value};
}

double evaluate_witness(const RightModuleMap& t, const Witness& w) {
  return op_norm_matrix(apply_amplified(t, w.k, w.x));
}

Witness lift_witness(const Witness& w, int m, int k_new) {
  if (k_new < w.k) {
    throw DomainError("lift_witness: cannot lower the amplification level");
  }
  if (w.x.rows() != static_cast<Eigen::Index>(w.k) * m) {
    throw DomainError("lift_witness: witness rows do not match k * m");
  }
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(k_new) * m, w.x.cols());
  x.topRows(w.x.rows()) = w.x;
  return Witness{k_new, std::move(x), w.value};
}

RightModuleMap embed(const RightModuleMap& t, int m2, int n2) {
  if (m2 < t.rows() || n2 < t.cols()) {
    throw DomainError("embed: target dimensions must not shrink");
  }
  std::vector<CMatrix> cols(n2, CMatrix::Zero(m2, m2));
  for (int j = 0; j < t.cols(); ++j) {
    cols[j].topLeftCorner(t.rows(), t.rows()) = t.column(j);
  }
  return RightModuleMap(m2, n2, std::move(cols));
}

RightModuleMap truncate(const RightModuleMap& t, int n2) {
  if (n2 < 1 || n2 > t.cols()) {
    throw DomainError("truncate: column count " + std::to_string(n2) +
                      " outside [1, " + std::to_string(t.cols()) + "]");
  }
  return RightModuleMap(
      t.rows(), n2,
      std::vector<CMatrix>(t.columns().begin(), t.columns().begin() + n2));
}

RightModuleMap compress_map(const RightModuleMap& t,
                            std::span<const CVector> basis) {
  if (basis.empty()) throw DomainError("compress_map: empty basis");
  const auto d = static_cast<Eigen::Index>(basis.size());
  CMatrix v(t.rows(), d);
  for (Eigen::Index c = 0; c < d; ++c) {
    if (basis[c].size() != t.rows()) {
      throw DomainError("compress_map: basis vector has wrong length");
    }
    v.col(c) = basis[c];
  }
  const CMatrix gram = v.adjoint() * v;
  if ((gram - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("compress_map: basis is not orthonormal");
  }
  std::vector<CMatrix> cols;
  cols.reserve(t.cols());
  for (const CMatrix& a : t.columns()) cols.push_back(v.adjoint() * a * v);
  return RightModuleMap(static_cast<int>(d), t.cols(), std::move(cols));
}

RightModuleMap tensor(const RightModuleMap& t, const RightModuleMap& s) {
  std::vector<CMatrix> cols;
  cols.reserve(static_cast<std::size_t>(t.cols()) * s.cols());
  for (int j = 0; j < t.cols(); ++j) {
    for (int i = 0; i < s.cols(); ++i) {
      cols.push_back(kron(t.column(j), s.column(i)));
    }
  }
  return RightModuleMap(t.rows() * s.rows(), t.cols() * s.cols(),
                        std::move(cols));
}

Witness tensor_witness(const RightModuleMap& t, const Witness& wt,
                       const RightModuleMap& s, const Witness& ws) {
  const int mt = t.rows();
  const int ms = s.rows();
  if (wt.x.rows() != wt.k * mt || wt.x.cols() != t.cols() ||
      ws.x.rows() != ws.k * ms || ws.x.cols() != s.cols()) {
    throw DomainError("tensor_witness: witness shapes do not match maps");
  }
  const CMatrix prod = kron(wt.x, ws.x);
  CMatrix x(prod.rows(), prod.cols());
  // Source row (b*mt + i, c*ms + p) -> target row (b*ks + c, i*ms + p).
  for (int b = 0; b < wt.k; ++b) {
    for (int i = 0; i < mt; ++i) {
      for (int c = 0; c < ws.k; ++c) {
        for (int p = 0; p < ms; ++p) {
          const Eigen::Index src =
              static_cast<Eigen::Index>(b * mt + i) * (ws.k * ms) + c * ms + p;
          const Eigen::Index dst =
              static_cast<Eigen::Index>(b * ws.k + c) * (mt * ms) + i * ms + p;
          x.row(dst) = prod.row(src);
        }
      }
    }
  }
  return make_witness(tensor(t, s), wt.k * ws.k, std::move(x));
}

CMatrix row_concatenation(const RightModuleMap& t) {
  const int m = t.rows();
  CMatrix out(m, static_cast<Eigen::Index>(m) * t.cols());
  for (int j = 0; j < t.cols(); ++j) out.middleCols(j * m, m) = t.column(j);
  return out;
}

}  // namespace cbnorm
