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
// Dense complex linear-algebra kernels shared by every other module.
//
// CMatrix is Eigen's dynamic complex matrix.  All routines here are pure
// functions of their arguments; the only randomness comes from an explicitly
// passed generator, so seeded runs are reproducible on a given platform.
#ifndef CBNORM_LINALG_HPP_
#define CBNORM_LINALG_HPP_

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace cbnorm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

using Rng = std::mt19937_64;

// Generator for the `stream`-th independent sequence derived from `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

struct Svd {
  RVector singular_values;  // descending, nonnegative
  CMatrix left;             // rows x r, orthonormal columns
  CMatrix right;            // cols x r, orthonormal columns
};

// Thin SVD, x = left * diag(singular_values) * right^H with r = min(rows, cols).
// The largest-modulus entry of every left singular vector is real positive.
// Throws DecompositionError on non-finite input or output.
Svd svd(const CMatrix& x);

double op_norm_matrix(const CMatrix& x);
double frobenius(const CMatrix& x);
double trace_norm(const CMatrix& x);

// u * v^H from the SVD; maximizes Re tr(y^H x) over contractions y.
CMatrix polar_factor(const CMatrix& x);

// Hermitian tolerance 1e-10 * max(1, ||x||_F).
double hermitian_tolerance(const CMatrix& x);

// Throws DomainError unless x is square and Hermitian within tolerance.
void require_hermitian(const CMatrix& x, const char* what);

// PSD square root of a Hermitian matrix; negative eigenvalues clamp to zero.
CMatrix psd_sqrt(const CMatrix& x);

// Eigenvalues ascending, with matching orthonormal eigenvectors.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix& x);

CMatrix kron(const CMatrix& x, const CMatrix& y);

// Entries (N(0,1) + i N(0,1)) / sqrt(2).
CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
CVector random_unit_vector(Eigen::Index n, Rng& rng);

// Haar-distributed unitary: QR of a Gaussian matrix with the diagonal of R
// rotated to the positive real axis.
CMatrix haar_unitary(Eigen::Index m, Rng& rng);
CMatrix haar_unitary(Eigen::Index m, std::uint64_t seed);

// exp(a) for skew-Hermitian a, returned exactly unitary up to round-off.
CMatrix unitary_exp(const CMatrix& skew);

bool all_finite(const CMatrix& x);

}  // namespace cbnorm

#endif  // CBNORM_LINALG_HPP_
