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
#include "cbnorm/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbnorm/error.hpp"

namespace cbnorm {

namespace {

constexpr double kUnitTolerance = 1e-10;

void require_unit(const CVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw DomainError(std::string(what) + ": vector is not a unit vector");
  }
}

bool is_diagonal(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j && std::abs(a(i, j)) > 1e-12) return false;
    }
  }
  return true;
}

Eigen::VectorXd flatten_hermitian(const CMatrix& q) {
  const Eigen::Index l = q.rows();
  Eigen::VectorXd out(2 * l * l);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < l; ++i) {
      out(k++) = q(i, j).real();
      out(k++) = q(i, j).imag();
    }
  }
  return out;
}

}  // namespace

OperatorTuple::OperatorTuple(std::vector<CMatrix> entries,
                             Orientation orientation)
    : entries_(std::move(entries)), orientation_(orientation) {
  if (entries_.empty()) throw DomainError("OperatorTuple: empty tuple");
  const Eigen::Index d = entries_.front().rows();
  for (const CMatrix& e : entries_) {
    if (e.rows() != d || e.cols() != d) {
      throw DomainError("OperatorTuple: entries must share a square dimension");
    }
  }
}

OperatorTuple OperatorTuple::row_of(const RightModuleMap& t) {
  return OperatorTuple(t.columns(), Orientation::kRow);
}

OperatorTuple OperatorTuple::diagonal_units(int n) {
  std::vector<CMatrix> units;
  units.reserve(n);
  for (int j = 0; j < n; ++j) {
    CMatrix e = CMatrix::Zero(n, n);
    e(j, j) = 1.0;
    units.push_back(std::move(e));
  }
  return OperatorTuple(std::move(units), Orientation::kColumn);
}

std::vector<CMatrix> OperatorTuple::stack() const {
  if (orientation_ == Orientation::kColumn) return entries_;
  std::vector<CMatrix> out;
  out.reserve(entries_.size());
  for (const CMatrix& e : entries_) out.push_back(e.adjoint());
  return out;
}

CMatrix OperatorTuple::gram() const {
  CMatrix g = CMatrix::Zero(dim(), dim());
  for (const CMatrix& c : stack()) g.noalias() += c.adjoint() * c;
  return 0.5 * (g + g.adjoint());
}

OperatorTuple OperatorTuple::scaled(double factor) const {
  std::vector<CMatrix> out;
  out.reserve(entries_.size());
  for (const CMatrix& e : entries_) out.push_back(factor * e);
  return OperatorTuple(std::move(out), orientation_);
}

RangePoint q_matrix(const OperatorTuple& b, const CVector& xi) {
  if (xi.size() != b.dim()) {
    throw DomainError("q_matrix: vector length does not match tuple dimension");
  }
  require_unit(xi, "q_matrix");
  const std::vector<CMatrix> c = b.stack();
  const auto l = static_cast<Eigen::Index>(c.size());
  CMatrix images(xi.size(), l);
  for (Eigen::Index i = 0; i < l; ++i) images.col(i) = c[i] * xi;
  // Q_ij = <c_i xi, c_j xi> = (c_j xi)^* (c_i xi), i.e. the transpose of the
  // usual Gram matrix of the images.
  CMatrix q = (images.adjoint() * images).transpose();
  q = 0.5 * (q + q.adjoint());
  return RangePoint{std::move(q), xi};
}

std::vector<RangePoint> wme_diagonal(const OperatorTuple& b) {
  for (const CMatrix& e : b.entries()) {
    if (!is_diagonal(e)) {
      throw DomainError("wme_diagonal: tuple entry is not diagonal");
    }
  }
  const CMatrix g = b.gram();
  const RVector diag = g.diagonal().real();
  const double top = diag.maxCoeff();
  std::vector<RangePoint> out;
  for (Eigen::Index p = 0; p < diag.size(); ++p) {
    if (diag(p) >= top * (1.0 - kEigenspaceTolerance)) {
      out.push_back(q_matrix(b, CVector::Unit(b.dim(), p)));
    }
  }
  return out;
}

std::vector<RangePoint> wme_sample(const OperatorTuple& a, int samples,
                                   std::uint64_t seed) {
  if (samples < 1) throw DomainError("wme_sample: samples must be >= 1");
  const HermitianEigen e = hermitian_eigen(a.gram());
  const Eigen::Index d = e.values.size();
  const double top = e.values(d - 1);
  Eigen::Index first = d - 1;
  while (first > 0 && e.values(first - 1) >= top * (1.0 - kEigenspaceTolerance)) {
    --first;
  }
  const CMatrix basis = e.vectors.rightCols(d - first);
  Rng rng = make_rng(seed, 0x72616e676573ULL);
  std::vector<RangePoint> out;
  out.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    const CVector coeff = random_unit_vector(basis.cols(), rng);
    CVector xi = basis * coeff;
    xi /= xi.norm();
    out.push_back(q_matrix(a, xi));
  }
  return out;
}

double tgm(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DomainError("tgm: dimension mismatch");
  }
  return trace_norm(psd_sqrt(x) * psd_sqrt(y));
}

double tgm_lower_bound(const RightModuleMap& t, const CVector& xi,
                       const CVector& eta) {
  if (xi.size() != t.rows() || eta.size() != t.cols()) {
    throw DomainError("tgm_lower_bound: vector lengths do not match the map");
  }
  require_unit(xi, "tgm_lower_bound");
  require_unit(eta, "tgm_lower_bound");
  const RangePoint x = q_matrix(OperatorTuple::row_of(t), xi);
  // Q(b, eta) for the diagonal units is exactly diag(|eta_i|^2).
  const CMatrix y = eta.cwiseAbs2().cast<Complex>().asDiagonal();
  return tgm(x.q, y);
}

double min_norm_point(const Eigen::MatrixXd& points) {
  using Eigen::Index;
  const Index count = points.cols();
  if (count == 0) throw DomainError("min_norm_point: no points");
  const double scale = points.colwise().squaredNorm().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double eps = 1e-14 * scale;

  Index start = 0;
  points.colwise().squaredNorm().minCoeff(&start);
  std::vector<Index> active{start};
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = points.col(start);

  auto combine = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(points.rows());
    for (std::size_t i = 0; i < active.size(); ++i) {
      out += w(static_cast<Index>(i)) * points.col(active[i]);
    }
    return out;
  };

  for (int major = 0; major < 10000; ++major) {
    Index j = 0;
    (points.transpose() * x).minCoeff(&j);
    if (x.squaredNorm() - x.dot(points.col(j)) <= eps) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    weights.conservativeResize(static_cast<Index>(active.size()));
    weights(weights.size() - 1) = 0.0;

    for (int minor = 0; minor < 10000; ++minor) {
      const auto s = static_cast<Index>(active.size());
      Eigen::MatrixXd sub(points.rows(), s);
      for (Index i = 0; i < s; ++i) sub.col(i) = points.col(active[i]);
      // Affine minimizer: [G 1; 1^T 0] [alpha; mu] = [0; 1].
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
      kkt.topLeftCorner(s, s) = sub.transpose() * sub;
      kkt.topRightCorner(s, 1).setOnes();
      kkt.bottomLeftCorner(1, s).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
      rhs(s) = 1.0;
      const Eigen::VectorXd alpha =
          kkt.completeOrthogonalDecomposition().solve(rhs).head(s);
      if ((alpha.array() > 1e-14).all()) {
        weights = alpha;
        break;
      }
      double theta = 1.0;
      for (Index i = 0; i < s; ++i) {
        if (alpha(i) <= 1e-14) {
          const double denom = weights(i) - alpha(i);
          if (denom > 0.0) theta = std::min(theta, weights(i) / denom);
        }
      }
      weights = theta * alpha + (1.0 - theta) * weights;
      std::vector<Index> kept;
      std::vector<double> kept_w;
      for (Index i = 0; i < s; ++i) {
        if (weights(i) > 1e-14) {
          kept.push_back(active[i]);
          kept_w.push_back(weights(i));
        }
      }
      if (kept.empty()) {
        kept.push_back(active.back());
        kept_w.push_back(1.0);
      }
      active = std::move(kept);
      weights = Eigen::Map<Eigen::VectorXd>(kept_w.data(),
                                            static_cast<Index>(kept_w.size()));
      weights /= weights.sum();
    }
    x = combine(weights);
  }
  return x.norm();
}

double star_distance(const OperatorTuple& a, const OperatorTuple& b,
                     int samples, std::uint64_t seed) {
  const std::vector<RangePoint> pa = wme_sample(a, samples, seed);
  const std::vector<RangePoint> pb = wme_diagonal(b);
  if (pa.front().q.rows() != pb.front().q.rows()) {
    throw DomainError("star_distance: tuples have different lengths");
  }
  const Eigen::Index d = 2 * pa.front().q.size();
  Eigen::MatrixXd diff(d, static_cast<Eigen::Index>(pa.size() * pb.size()));
  Eigen::Index col = 0;
  std::vector<Eigen::VectorXd> fb;
  fb.reserve(pb.size());
  for (const RangePoint& q : pb) fb.push_back(flatten_hermitian(q.q));
  for (const RangePoint& p : pa) {
    const Eigen::VectorXd fa = flatten_hermitian(p.q);
    for (const Eigen::VectorXd& v : fb) diff.col(col++) = fa - v;
  }
  return min_norm_point(diff);
}

}  // namespace cbnorm
