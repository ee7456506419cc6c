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

/// Fixed-step RK4 integration of the Lindblad master equation on the full
/// density matrix. The dissipator is applied term by term from the rate
/// matrix, independently of the superoperator matrices, so this integrator
/// can serve as the reference for every approximation built on them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/superoperators.hpp"

namespace sepnoise {

inline constexpr double kDensityTolerance = 1e-9;
inline constexpr double kDensityPositivityFloor = -1e-8;
inline constexpr int kStepsPerScale = 1 << 14;

struct DensityMatrix {
  CMatrix rho;

  DensityMatrix() = default;
  explicit DensityMatrix(CMatrix r) : rho(std::move(r)) {}

  /// |psi><psi| for a normalized copy of psi.
  static DensityMatrix pure(const CVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw InvalidArgument("DensityMatrix::pure: zero state vector");
    const CVector v = psi / norm;
    return DensityMatrix(v * v.adjoint());
  }

  static DensityMatrix basis_state(int dim, int k) {
    if (k < 0 || k >= dim) throw InvalidArgument("DensityMatrix::basis_state: index out of range");
    CVector v = CVector::Zero(dim);
    v(k) = 1.0;
    return pure(v);
  }

  static DensityMatrix maximally_mixed(int dim) {
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  int dim() const { return static_cast<int>(rho.rows()); }

  /// Throws InvalidArgument unless rho is Hermitian, unit trace and PSD up to
  /// the drift allowance.
  void validate() const {
    require_square(rho, "DensityMatrix");
    if (rho.rows() == 0) throw InvalidArgument("DensityMatrix: empty matrix");
    if (hermitian_residual(rho) > kDensityTolerance) throw InvalidArgument("DensityMatrix: not Hermitian");
    if (std::abs(rho.trace() - 1.0) > kDensityTolerance) throw InvalidArgument("DensityMatrix: trace is not 1");
    if (hermitian_eigenvalues(rho).minCoeff() < kDensityPositivityFloor)
      throw InvalidArgument("DensityMatrix: negative eigenvalue");
  }

  double purity() const { return (rho * rho).trace().real(); }
};

/// H(t) and Gamma^D(t) over a common operator basis.
struct LindbladGenerator {
  OperatorBasis basis;
  HamiltonianSchedule schedule;
  NoiseSchedule noise;

  CMatrix hamiltonian(double t) const { return basis.expand(schedule.at(t)); }
  CMatrix rates(double t) const { return noise.at(t); }
  double strength(double t) const { return noise.at(t).trace().real(); }
  bool time_dependent() const { return schedule.time_dependent() || !noise.constant_in_time; }
};

/// The dissipator regrouped as sum_a A_a rho C_a - 1/2 {sum_a C_a A_a, rho}
/// with C_a = sum_m Gamma_am A_m^dagger; rows of Gamma that vanish are dropped.
struct DissipatorTerms {
  std::vector<CMatrix> ops;
  std::vector<CMatrix> c;
  CMatrix anti;
};

inline DissipatorTerms dissipator_terms(const CMatrix& gamma, const OperatorBasis& basis) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  if (gamma.rows() != n || gamma.cols() != n) throw InvalidArgument("dissipator: rate matrix has wrong size");
  DissipatorTerms terms;
  terms.anti = CMatrix::Zero(basis.dim, basis.dim);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (gamma.row(a).isZero(0.0)) continue;
    CMatrix c = CMatrix::Zero(basis.dim, basis.dim);
    for (Eigen::Index m = 0; m < n; ++m)
      if (gamma(a, m) != cplx{}) c += gamma(a, m) * basis.ops[static_cast<std::size_t>(m)].adjoint();
    const CMatrix& op = basis.ops[static_cast<std::size_t>(a)];
    terms.anti += c * op;
    terms.ops.push_back(op);
    terms.c.push_back(std::move(c));
  }
  return terms;
}

inline CMatrix dissipator_apply(const DissipatorTerms& terms, const CMatrix& rho) {
  CMatrix out = -0.5 * anticommutator(terms.anti, rho);
  for (std::size_t a = 0; a < terms.ops.size(); ++a) out.noalias() += terms.ops[a] * rho * terms.c[a];
  return out;
}

/// sum_nm Gamma_nm (A_n rho A_m^dagger - 1/2 {A_m^dagger A_n, rho}).
inline CMatrix dissipator_apply(const CMatrix& gamma, const OperatorBasis& basis, const CMatrix& rho) {
  if (rho.rows() != basis.dim || rho.cols() != basis.dim) throw InvalidArgument("dissipator_apply: rho has wrong shape");
  return dissipator_apply(dissipator_terms(gamma, basis), rho);
}

/// L[rho] at time t.
inline CMatrix lindblad_rhs(const LindbladGenerator& gen, double t, const CMatrix& rho) {
  return -kI * commutator(gen.hamiltonian(t), rho) + dissipator_apply(gen.rates(t), gen.basis, rho);
}

namespace detail {

/// L[.] with the Hamiltonian and dissipator terms cached when they are constant.
class CachedGenerator {
 public:
  explicit CachedGenerator(const LindbladGenerator& gen) : gen_(gen) {
    if (!gen.schedule.time_dependent()) h_ = gen.hamiltonian(0.0);
    if (gen.noise.constant_in_time) terms_ = dissipator_terms(gen.rates(0.0), gen.basis);
  }

  CMatrix operator()(double t, const CMatrix& rho) const {
    const CMatrix h = h_ ? *h_ : gen_.hamiltonian(t);
    CMatrix out = -kI * commutator(h, rho);
    out += terms_ ? dissipator_apply(*terms_, rho) : dissipator_apply(gen_.rates(t), gen_.basis, rho);
    return out;
  }

 private:
  const LindbladGenerator& gen_;
  std::optional<CMatrix> h_;
  std::optional<DissipatorTerms> terms_;
};

}  // namespace detail

/// Default RK4 step count for evolving to time t: 2^14 steps per unit of the
/// finer of t_op and 1/strength.
inline int default_evolve_steps(const LindbladGenerator& gen, double t) {
  double scale = gen.schedule.t_op > 0.0 ? gen.schedule.t_op : 1.0;
  const double strength = std::abs(gen.strength(0.0));
  if (strength > 0.0) scale = std::min(scale, 1.0 / strength);
  const double steps = std::ceil(kStepsPerScale * t / scale);
  return static_cast<int>(std::clamp(steps, 1.0, 1e8));
}

using EvolveObserver = std::function<void(int step, double t, const CMatrix& rho)>;

/// RK4 for X' = L[X] on an arbitrary D x D matrix (L is linear, so this also
/// propagates operator bases). The observer, if given, sees the initial
/// matrix and the matrix after every step.
inline CMatrix evolve_matrix(const LindbladGenerator& gen, const CMatrix& x0, double t, int steps,
                             const EvolveObserver& observer = {}) {
  if (x0.rows() != gen.basis.dim || x0.cols() != gen.basis.dim)
    throw InvalidArgument("evolve: initial matrix dimension does not match the basis");
  if (!(t >= 0.0)) throw InvalidArgument("evolve: t must be >= 0");
  if (steps < 1) throw InvalidArgument("evolve: steps must be >= 1");
  if (t > gen.schedule.t_op * (1.0 + 1e-12)) throw DomainError("evolve: t exceeds the schedule duration");
  const detail::CachedGenerator rhs(gen);
  CMatrix x = x0;
  if (observer) observer(0, 0.0, x);
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const double t0 = k * h;
    const CMatrix k1 = rhs(t0, x);
    const CMatrix k2 = rhs(t0 + 0.5 * h, x + (0.5 * h) * k1);
    const CMatrix k3 = rhs(t0 + 0.5 * h, x + (0.5 * h) * k2);
    const CMatrix k4 = rhs(t0 + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(k + 1, t0 + h, x);
  }
  return x;
}

/// Density-matrix evolution from 0 to t with a fixed number of RK4 steps.
inline DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double t, int steps,
                            const EvolveObserver& observer = {}) {
  rho0.validate();
  return DensityMatrix(evolve_matrix(gen, rho0.rho, t, steps, observer));
}

/// Column-stacked matrix of the full noisy map from 0 to t.
inline CMatrix evolution_superop(const LindbladGenerator& gen, double t, int steps) {
  const Eigen::Index d = gen.basis.dim;
  CMatrix phi(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      phi.col(j * d + i) = vec(evolve_matrix(gen, e, t, steps));
    }
  return phi;
}

inline DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double t) {
  return evolve(gen, rho0, t, default_evolve_steps(gen, t));
}

/// Evolution under the Hamiltonian part alone.
inline DensityMatrix coherent_evolve(const HamiltonianSchedule& schedule, const OperatorBasis& basis,
                                     const DensityMatrix& rho0, double t, int steps) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  LindbladGenerator gen{basis, schedule, NoiseSchedule::constant(CMatrix::Zero(n, n))};
  return evolve(gen, rho0, t, steps);
}

/// Tr[obs rho] for Hermitian obs; the imaginary part must vanish to 1e-10.
inline double expectation(const CMatrix& obs, const CMatrix& rho) {
  require_same_shape(obs, rho, "expectation");
  if (!is_hermitian(obs, 1e-12)) throw InvalidArgument("expectation: observable is not Hermitian");
  const cplx value = (obs * rho).trace();
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real())))
    throw NumericalError("expectation: imaginary part " + std::to_string(value.imag()) + " is not negligible");
  return value.real();
}

inline double expectation(const CMatrix& obs, const DensityMatrix& rho) { return expectation(obs, rho.rho); }

}  // namespace sepnoise
