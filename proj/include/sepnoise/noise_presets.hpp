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

/// Rate matrices of the standard single-qubit channels, expressed in an
/// arbitrary operator basis.
///
/// Conventions: dephasing along P contributes gamma/2 to Gamma_PP, damping is
/// the jump operator sigma+ = (X + iY)/2 with rate gamma, and depolarizing
/// noise is alpha times the identity rate matrix.

#include <string>

#include "sepnoise/errors.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/operator_basis.hpp"

namespace sepnoise {

/// Gamma_nm = rate * c_n conj(c_m) with c_n = <<A_n|L>>, for the dissipator
/// rate (L rho L^dagger - 1/2 {L^dagger L, rho}). L must be traceless.
inline CMatrix jump_operator_rates(const OperatorBasis& basis, const CMatrix& jump, double rate) {
  if (jump.rows() != basis.dim || jump.cols() != basis.dim)
    throw InvalidArgument("jump_operator_rates: operator has wrong shape");
  if (std::abs(jump.trace()) > 1e-12 * std::max(1.0, jump.norm()))
    throw InvalidArgument("jump_operator_rates: jump operator must be traceless");
  const CVector c = basis.coefficients(jump);
  return rate * c * c.adjoint();
}

/// Places a single-qubit operator on qubit `q` of an n-qubit register
/// (qubit 0 is the leftmost tensor factor).
inline CMatrix embed_qubit_operator(const CMatrix& op, int qubit, int qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw InvalidArgument("embed_qubit_operator: operator must be 2x2");
  if (qubit < 0 || qubit >= qubits) throw InvalidArgument("embed_qubit_operator: qubit index out of range");
  CMatrix out = CMatrix::Identity(1, 1);
  for (int k = 0; k < qubits; ++k) out = kron(out, k == qubit ? op : CMatrix(CMatrix::Identity(2, 2)));
  return out;
}

namespace detail {
inline int qubit_count(const OperatorBasis& basis) {
  int q = 0;
  while ((1 << q) < basis.dim) ++q;
  if ((1 << q) != basis.dim) throw InvalidArgument("qubit channel requested on a non-qubit dimension");
  return q;
}
}  // namespace detail

/// Gamma_PP = gamma / 2 for the basis element labelled `axis`.
inline CMatrix dephasing_rates(const OperatorBasis& basis, const std::string& axis, double gamma) {
  const int p = basis.index_of(axis);
  if (p < 0) throw InvalidArgument("dephasing_rates: no basis element labelled '" + axis + "'");
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  CMatrix out = CMatrix::Zero(n, n);
  out(p, p) = 0.5 * gamma;
  return out;
}

/// Amplitude damping towards |0> on one qubit: jump sigma+ = (X + iY)/2.
inline CMatrix damping_rates(const OperatorBasis& basis, int qubit, double gamma) {
  CMatrix sigma_plus = CMatrix::Zero(2, 2);
  sigma_plus(0, 1) = 1.0;
  return jump_operator_rates(basis, embed_qubit_operator(sigma_plus, qubit, detail::qubit_count(basis)), gamma);
}

inline CMatrix depolarizing_rates(const OperatorBasis& basis, double alpha) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  return alpha * CMatrix::Identity(n, n);
}

}  // namespace sepnoise
