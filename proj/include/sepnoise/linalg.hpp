// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Dense complex linear-algebra helpers shared by every module.
///
/// All operators are dense Eigen matrices; vectorization of operators is
/// column-stacking, so vec(A X B) = (B^T kron A) vec(X).

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "sepnoise/errors.hpp"

namespace sepnoise {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

/// max |A - A^dagger|
inline double hermitian_residual(const CMatrix& a) { return max_abs(a - a.adjoint()); }

inline bool is_hermitian(const CMatrix& a, double tol) { return hermitian_residual(a) <= tol; }

/// max |U U^dagger - 1|
inline double unitarity_residual(const CMatrix& u) {
  return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols()));
}

inline void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw InvalidArgument(std::string(what) + ": matrix is not square");
}

inline void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

/// Matrix exponential (scaling and squaring with a Pade approximant).
inline CMatrix expm(const CMatrix& a) {
  require_square(a, "expm");
  return a.exp();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CVector vec(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

inline CMatrix unvec(const CVector& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw InvalidArgument("unvec: size is not a multiple of rows");
  return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows);
}

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

inline HermitianEigen hermitian_eigen(const CMatrix& a) {
  require_square(a, "hermitian_eigen");
  // Symmetrize so round-off in the input does not leak into the solver.
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigen: solver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline RVector hermitian_eigenvalues(const CMatrix& a) {
  require_square(a, "hermitian_eigenvalues");
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: solver did not converge");
  return es.eigenvalues();
}

/// Eigenvalues of a real antisymmetric matrix A, returned as the real numbers
/// w_k such that the spectrum of A is {i w_k}, sorted ascending.
///
/// Householder reduction keeps the matrix antisymmetric, so it ends as a
/// tridiagonal T with subdiagonal b_k. A diagonal phase similarity maps iT onto
/// the real symmetric tridiagonal matrix with zero diagonal and off-diagonal
/// b_k, whose eigenvalues are the w_k. Only the strictly lower triangle is
/// touched, which keeps this about four times cheaper than a complex Hermitian
/// solve of the same size.
inline RVector skew_symmetric_eigenvalues(RMatrix a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidArgument("skew_symmetric_eigenvalues: matrix is not square");
  if (n == 0) return RVector();
  if (n == 1) return RVector::Zero(1);

  RVector sub(n - 1);
  RVector v, w;
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    v = a.col(k).tail(m);
    const double xnorm = v.norm();
    if (xnorm == 0.0) {
      sub(k) = 0.0;
      continue;
    }
    const double alpha = v(0) > 0 ? -xnorm : xnorm;
    v(0) -= alpha;
    const double vv = v.squaredNorm();
    sub(k) = alpha;
    if (vv == 0.0) continue;
    const double tau = 2.0 / vv;

    auto block = a.block(k + 1, k + 1, m, m);
    const auto lower = block.triangularView<Eigen::StrictlyLower>();
    w.noalias() = lower * v;
    w.noalias() -= lower.transpose() * v;
    w *= tau;
    // B <- B + v w^T - w v^T, lower triangle only.
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      block.col(j).tail(m - j - 1) += v.tail(m - j - 1) * w(j) - w.tail(m - j - 1) * v(j);
    }
  }
  sub(n - 2) = a(n - 1, n - 2);

  Eigen::SelfAdjointEigenSolver<RMatrix> es;
  es.computeFromTridiagonal(RVector::Zero(n), sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("skew_symmetric_eigenvalues: solver did not converge");
  return es.eigenvalues();
}

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
inline double trace_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

/// Sorts complex numbers by (imag, real); used to compare spectra as multisets.
inline std::vector<cplx> sorted_spectrum(std::vector<cplx> values) {
  std::sort(values.begin(), values.end(), [](cplx x, cplx y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  return values;
}

}  // namespace sepnoise
