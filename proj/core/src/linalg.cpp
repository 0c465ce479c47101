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
#include "cbnorm/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "cbnorm/error.hpp"

namespace cbnorm {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return Rng(seq);
}

bool all_finite(const CMatrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x(i, j).real()) || !std::isfinite(x(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

Svd svd(const CMatrix& x) {
  if (!all_finite(x)) {
    throw DecompositionError("svd: input contains NaN or Inf");
  }
  Eigen::JacobiSVD<CMatrix> dec(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw DecompositionError("svd: Jacobi iteration did not converge");
  }
  Svd out{dec.singularValues(), dec.matrixU(), dec.matrixV()};
  if (!out.singular_values.allFinite() || !all_finite(out.left) ||
      !all_finite(out.right)) {
    throw DecompositionError("svd: non-finite result");
  }
  for (Eigen::Index c = 0; c < out.left.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < out.left.rows(); ++r) {
      const double a = std::abs(out.left(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs > 0.0) {
      const Complex phase = std::conj(out.left(best, c)) / best_abs;
      out.left.col(c) *= phase;
      out.right.col(c) *= phase;
      out.left(best, c) = Complex(best_abs, 0.0);
    }
  }
  return out;
}

double op_norm_matrix(const CMatrix& x) {
  if (x.size() == 0) return 0.0;
  if (!all_finite(x)) {
    throw DecompositionError("op_norm_matrix: input contains NaN or Inf");
  }
  Eigen::JacobiSVD<CMatrix> dec(x);
  if (dec.info() != Eigen::Success) {
    throw DecompositionError("op_norm_matrix: Jacobi iteration did not converge");
  }
  return dec.singularValues()(0);
}

double frobenius(const CMatrix& x) { return x.norm(); }

double trace_norm(const CMatrix& x) {
  if (x.size() == 0) return 0.0;
  if (!all_finite(x)) {
    throw DecompositionError("trace_norm: input contains NaN or Inf");
  }
  Eigen::JacobiSVD<CMatrix> dec(x);
  if (dec.info() != Eigen::Success) {
    throw DecompositionError("trace_norm: Jacobi iteration did not converge");
  }
  return dec.singularValues().sum();
}

CMatrix polar_factor(const CMatrix& x) {
  const Svd s = svd(x);
  return s.left * s.right.adjoint();
}

double hermitian_tolerance(const CMatrix& x) {
  return 1e-10 * std::max(1.0, x.norm());
}

void require_hermitian(const CMatrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw DomainError(std::string(what) + ": matrix is not square");
  }
  if ((x - x.adjoint()).norm() > hermitian_tolerance(x)) {
    throw DomainError(std::string(what) + ": matrix is not Hermitian");
  }
}

HermitianEigen hermitian_eigen(const CMatrix& x) {
  require_hermitian(x, "hermitian_eigen");
  const CMatrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw DecompositionError("hermitian_eigen: solver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix psd_sqrt(const CMatrix& x) {
  require_hermitian(x, "psd_sqrt");
  const HermitianEigen e = hermitian_eigen(x);
  const RVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
  CMatrix out = e.vectors * roots.cast<Complex>().asDiagonal() *
                e.vectors.adjoint();
  // Exact Hermitian symmetry of the result.
  return 0.5 * (out + out.adjoint());
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  CMatrix out(rows, cols);
  // Fixed fill order: column-major, real part drawn before imaginary part.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re * scale, im * scale);
    }
  }
  return out;
}

CVector random_unit_vector(Eigen::Index n, Rng& rng) {
  CVector v = gaussian_matrix(n, 1, rng).col(0);
  const double len = v.norm();
  if (len == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / len;
}

CMatrix haar_unitary(Eigen::Index m, Rng& rng) {
  const CMatrix z = gaussian_matrix(m, m, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

CMatrix haar_unitary(Eigen::Index m, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return haar_unitary(m, rng);
}

CMatrix unitary_exp(const CMatrix& skew) {
  // skew = i h with h Hermitian; exp(skew) = V exp(i diag) V^H.
  const CMatrix h = Complex(0.0, -1.0) * skew;
  const HermitianEigen e = hermitian_eigen(0.5 * (h + h.adjoint()));
  CVector phases(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    phases(i) = std::polar(1.0, e.values(i));
  }
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

}  // namespace cbnorm
