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

/// Traceless operator bases {A_n}, orthonormal under <<A|B>> = (1/D) Tr[A^dagger B],
/// and the structure tensor of the adjoint action on them.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/linalg.hpp"

namespace sepnoise {

enum class BasisFamily { pauli, gell_mann, custom };

inline const char* to_string(BasisFamily f) {
  switch (f) {
    case BasisFamily::pauli: return "pauli";
    case BasisFamily::gell_mann: return "gell_mann";
    case BasisFamily::custom: return "custom";
  }
  return "custom";
}

/// Construction-time tolerance for tracelessness and orthonormality.
inline constexpr double kBasisTolerance = 1e-12;

inline cplx frobenius_inner(const CMatrix& a, const CMatrix& b, int dim) {
  if (a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim)
    throw InvalidArgument("frobenius_inner: operators must be " + std::to_string(dim) + "x" + std::to_string(dim));
  // Tr[A^dagger B] = sum_ij conj(A_ij) B_ij
  return a.conjugate().cwiseProduct(b).sum() / double(dim);
}

struct OperatorBasis {
  int dim = 0;
  std::vector<CMatrix> ops;
  std::vector<std::string> labels;
  BasisFamily family = BasisFamily::custom;

  std::size_t size() const { return ops.size(); }
  std::string label() const { return to_string(family); }

  /// Index of the element with the given label, or -1.
  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return static_cast<int>(i);
    return -1;
  }

  /// sum_p c_p A_p
  CMatrix expand(const CVector& coeffs) const {
    if (static_cast<std::size_t>(coeffs.size()) != ops.size())
      throw InvalidArgument("OperatorBasis::expand: coefficient count does not match basis size");
    CMatrix out = CMatrix::Zero(dim, dim);
    for (std::size_t p = 0; p < ops.size(); ++p)
      if (coeffs(p) != cplx{}) out += coeffs(p) * ops[p];
    return out;
  }

  /// c_p = <<A_p|X>>; the identity component of X is dropped.
  CVector coefficients(const CMatrix& x) const {
    CVector c(ops.size());
    for (std::size_t p = 0; p < ops.size(); ++p) c(p) = frobenius_inner(ops[p], x, dim);
    return c;
  }

  /// Largest violation of tracelessness and of orthonormality.
  std::pair<double, double> validation_residuals() const {
    double trace_res = 0.0, ortho_res = 0.0;
    for (std::size_t m = 0; m < ops.size(); ++m) {
      trace_res = std::max(trace_res, std::abs(ops[m].trace()));
      for (std::size_t n = 0; n < ops.size(); ++n) {
        const cplx ip = frobenius_inner(ops[m], ops[n], dim);
        ortho_res = std::max(ortho_res, std::abs(ip - (m == n ? 1.0 : 0.0)));
      }
    }
    return {trace_res, ortho_res};
  }

  void validate(double tol = kBasisTolerance) const {
    if (dim < 1) throw InvalidArgument("OperatorBasis: dimension must be positive");
    if (ops.size() != static_cast<std::size_t>(dim * dim - 1))
      throw InvalidArgument("OperatorBasis: expected D^2-1 = " + std::to_string(dim * dim - 1) + " elements, got " +
                            std::to_string(ops.size()));
    for (const auto& op : ops)
      if (op.rows() != dim || op.cols() != dim) throw InvalidArgument("OperatorBasis: element has wrong shape");
    const auto [tr, orth] = validation_residuals();
    if (tr > tol) throw InvalidArgument("OperatorBasis: element is not traceless");
    if (orth > tol) throw InvalidArgument("OperatorBasis: elements are not orthonormal under (1/D)Tr[A^dagger B]");
  }

  bool all_hermitian(double tol = kBasisTolerance) const {
    for (const auto& op : ops)
      if (!is_hermitian(op, tol)) return false;
    return true;
  }
};

namespace detail {

inline CMatrix pauli_matrix(int symbol) {
  CMatrix m(2, 2);
  switch (symbol) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace detail

/// Pauli strings on k qubits, identity excluded, in lexicographic order over
/// the per-qubit symbols I < X < Y < Z. The leftmost symbol acts on qubit 0,
/// which is the most significant tensor factor.
inline OperatorBasis pauli_basis(int qubits) {
  if (qubits <= 0) throw InvalidArgument("pauli_basis: qubit count must be >= 1");
  if (qubits > 6) throw InvalidArgument("pauli_basis: more than 6 qubits is outside the dense-matrix scale");
  OperatorBasis basis;
  basis.dim = 1 << qubits;
  basis.family = BasisFamily::pauli;
  const int count = 1 << (2 * qubits);
  static constexpr char kSymbols[] = {'I', 'X', 'Y', 'Z'};
  for (int code = 1; code < count; ++code) {
    CMatrix op = CMatrix::Identity(1, 1);
    std::string label;
    for (int q = 0; q < qubits; ++q) {
      const int symbol = (code >> (2 * (qubits - 1 - q))) & 3;
      op = kron(op, detail::pauli_matrix(symbol));
      label.push_back(kSymbols[symbol]);
    }
    basis.ops.push_back(std::move(op));
    basis.labels.push_back(std::move(label));
  }
  return basis;
}

/// Generalized Gell-Mann matrices scaled by sqrt(D/2) so they are orthonormal
/// under the 1/D product. Ordering follows the standard su(3) numbering: for
/// each new level k = 2..D, the symmetric and antisymmetric pairs (j,k) for
/// j < k, then the k-th diagonal element. D = 3 gives lambda_1..lambda_8 and
/// D = 2 gives X, Y, Z.
inline OperatorBasis gell_mann_basis(int dim) {
  if (dim < 2) throw InvalidArgument("gell_mann_basis: dimension must be >= 2");
  OperatorBasis basis;
  basis.dim = dim;
  basis.family = BasisFamily::gell_mann;
  const double scale = std::sqrt(dim / 2.0);
  int counter = 0;
  auto push = [&](CMatrix m) {
    basis.ops.push_back(scale * m);
    basis.labels.push_back("GM" + std::to_string(++counter));
  };
  for (int k = 1; k < dim; ++k) {
    for (int j = 0; j < k; ++j) {
      CMatrix sym = CMatrix::Zero(dim, dim);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      push(sym);
      CMatrix anti = CMatrix::Zero(dim, dim);
      anti(j, k) = -kI;
      anti(k, j) = kI;
      push(anti);
    }
    CMatrix diag = CMatrix::Zero(dim, dim);
    const double norm = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int m = 0; m < k; ++m) diag(m, m) = norm;
    diag(k, k) = -k * norm;
    push(diag);
  }
  return basis;
}

/// Wraps user-supplied operators; checks orthonormality and tracelessness only
/// (non-Hermitian elements are accepted).
inline OperatorBasis custom_basis(int dim, std::vector<CMatrix> ops, std::vector<std::string> labels = {}) {
  OperatorBasis basis;
  basis.dim = dim;
  basis.family = BasisFamily::custom;
  basis.ops = std::move(ops);
  if (labels.empty())
    for (std::size_t i = 0; i < basis.ops.size(); ++i) labels.push_back("B" + std::to_string(i + 1));
  if (labels.size() != basis.ops.size()) throw InvalidArgument("custom_basis: label count does not match");
  basis.labels = std::move(labels);
  basis.validate();
  return basis;
}

/// g_pmn with (Omega_p)_mn = <<A_m| [A_p, A_n] >> = -i g_pmn, stored as the
/// matrices Omega_p.
struct StructureTensor {
  std::vector<CMatrix> omega_p;

  std::size_t size() const { return omega_p.size(); }
  cplx g(std::size_t p, std::size_t m, std::size_t n) const { return kI * omega_p[p](m, n); }
};

inline StructureTensor structure_tensor(const OperatorBasis& basis) {
  basis.validate();
  const std::size_t n = basis.size();
  const double inv_dim = 1.0 / basis.dim;
  // Tr[A_m^dagger X] = sum_ij conj(A_m)_ij X_ij, so stacking conj(A_m) as rows
  // turns all projections into one matrix-vector product.
  CMatrix projector(n, basis.dim * basis.dim);
  for (std::size_t m = 0; m < n; ++m) projector.row(m) = vec(basis.ops[m].conjugate()).transpose();
  StructureTensor g;
  g.omega_p.assign(n, CMatrix(n, n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t k = 0; k < n; ++k)
      g.omega_p[p].col(k) = inv_dim * (projector * vec(commutator(basis.ops[p], basis.ops[k])));
  return g;
}

}  // namespace sepnoise
