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

/// Adjoint-representation matrices Omega and M, rate-matrix transforms, and
/// explicit superoperator matrices on column-stacked density matrices.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/operator_basis.hpp"

namespace sepnoise {

/// Tolerance on ||Gamma - Gamma^dagger||_max for a rate matrix.
inline constexpr double kRateHermitianTolerance = 1e-10;
/// Tolerance on ||M M^dagger - 1||_max after propagation.
inline constexpr double kUnitarityTolerance = 1e-8;
inline constexpr int kDefaultPropagatorSteps = 4096;

/// Hermitian rate matrix of a dissipator, tagged with the basis it is written in.
struct RateMatrix {
  CMatrix gamma;
  std::string basis_label;

  RateMatrix() = default;
  explicit RateMatrix(CMatrix g, std::string label = {}) : gamma(std::move(g)), basis_label(std::move(label)) {}

  Eigen::Index size() const { return gamma.rows(); }

  /// Noise strength Tr Gamma.
  double strength() const { return gamma.trace().real(); }

  bool hermitian(double tol = kRateHermitianTolerance) const { return is_hermitian(gamma, tol); }

  RVector spectrum() const { return hermitian_eigenvalues(gamma); }

  /// PSD up to -1e-9 * max(1, Tr Gamma).
  bool physical() const {
    if (gamma.size() == 0) return true;
    const double floor = -1e-9 * std::max(1.0, std::abs(strength()));
    return spectrum().minCoeff() >= floor;
  }
};

enum class ScheduleKind { constant, sampled, expression };

/// Coefficients H_p(t) of H(t) = sum_p H_p(t) A_p on [0, t_op].
struct HamiltonianSchedule {
  std::function<CVector(double)> coeffs;
  double t_op = 0.0;
  ScheduleKind kind = ScheduleKind::constant;
  Eigen::Index size = 0;

  static HamiltonianSchedule constant(CVector h, double t_op) {
    HamiltonianSchedule s;
    s.size = h.size();
    s.coeffs = [h = std::move(h)](double) { return h; };
    s.t_op = t_op;
    s.kind = ScheduleKind::constant;
    s.check();
    return s;
  }

  static HamiltonianSchedule expression(std::function<CVector(double)> fn, Eigen::Index size, double t_op) {
    HamiltonianSchedule s;
    s.coeffs = std::move(fn);
    s.size = size;
    s.t_op = t_op;
    s.kind = ScheduleKind::expression;
    s.check();
    return s;
  }

  /// Piecewise-linear interpolation through (times[k], values[k]); times must
  /// start at 0, end at t_op and increase strictly.
  static HamiltonianSchedule sampled(std::vector<double> times, std::vector<CVector> values) {
    if (times.size() < 2 || times.size() != values.size())
      throw InvalidArgument("HamiltonianSchedule::sampled: need at least two samples with matching values");
    if (times.front() != 0.0) throw InvalidArgument("HamiltonianSchedule::sampled: first sample must be at t = 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
      if (!(times[k] > times[k - 1])) throw InvalidArgument("HamiltonianSchedule::sampled: times must increase");
      if (values[k].size() != values[0].size())
        throw InvalidArgument("HamiltonianSchedule::sampled: inconsistent coefficient lengths");
    }
    HamiltonianSchedule s;
    s.size = values[0].size();
    s.t_op = times.back();
    s.kind = ScheduleKind::sampled;
    s.coeffs = [times = std::move(times), values = std::move(values)](double t) -> CVector {
      const auto it = std::upper_bound(times.begin(), times.end(), t);
      if (it == times.begin()) return values.front();
      if (it == times.end()) return values.back();
      const std::size_t k = static_cast<std::size_t>(it - times.begin());
      const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
      return (1.0 - w) * values[k - 1] + w * values[k];
    };
    s.check();
    return s;
  }

  bool time_dependent() const { return kind != ScheduleKind::constant; }

  /// H_p(t); times within a relative 1e-12 of the interval ends are clamped.
  CVector at(double t) const {
    const double slack = 1e-12 * std::max(1.0, t_op);
    if (!(t >= -slack && t <= t_op + slack))
      throw DomainError("HamiltonianSchedule: t = " + std::to_string(t) + " outside [0, " + std::to_string(t_op) + "]");
    CVector h = coeffs(std::clamp(t, 0.0, t_op));
    if (h.size() != size) throw InvalidArgument("HamiltonianSchedule: coefficient vector has the wrong length");
    return h;
  }

 private:
  void check() const {
    if (!(t_op >= 0.0) || !std::isfinite(t_op)) throw InvalidArgument("HamiltonianSchedule: t_op must be finite and >= 0");
    if (size <= 0) throw InvalidArgument("HamiltonianSchedule: empty coefficient vector");
  }
};

/// Rate matrix Gamma^D(t) of the hardware noise.
struct NoiseSchedule {
  std::function<CMatrix(double)> rates;
  bool constant_in_time = true;

  static NoiseSchedule constant(CMatrix gamma) {
    NoiseSchedule n;
    n.rates = [gamma = std::move(gamma)](double) { return gamma; };
    n.constant_in_time = true;
    return n;
  }

  static NoiseSchedule time_dependent(std::function<CMatrix(double)> fn) {
    NoiseSchedule n;
    n.rates = std::move(fn);
    n.constant_in_time = false;
    return n;
  }

  CMatrix at(double t) const { return rates(t); }
};

/// M(s) together with the time it was propagated to.
struct Propagator {
  CMatrix m;
  double s = 0.0;
};

/// Omega = sum_p H_p Omega_p.
inline CMatrix omega_from_coeffs(const CVector& h, const StructureTensor& g) {
  if (static_cast<std::size_t>(h.size()) != g.size())
    throw InvalidArgument("omega: coefficient count does not match the structure tensor");
  const Eigen::Index n = static_cast<Eigen::Index>(g.size());
  CMatrix omega = CMatrix::Zero(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    if (h(p) != cplx{}) omega += h(p) * g.omega_p[static_cast<std::size_t>(p)];
  return omega;
}

/// Omega(t), the matrix of ad_{H(t)} on the traceless space.
inline CMatrix omega_of(const HamiltonianSchedule& schedule, double t, const StructureTensor& g) {
  return omega_from_coeffs(schedule.at(t), g);
}

namespace detail {

/// One fourth-order Magnus step for dY/dt = -i G(t) Y over [t0, t0 + tau]:
/// Gauss-Legendre nodes and the single commutator correction.
template <class Generator>
CMatrix magnus4_step(const Generator& gen, double t0, double tau) {
  static const double kOffset = std::sqrt(3.0) / 6.0;
  const CMatrix a1 = -kI * gen(t0 + tau * (0.5 - kOffset));
  const CMatrix a2 = -kI * gen(t0 + tau * (0.5 + kOffset));
  const CMatrix exponent = (0.5 * tau) * (a1 + a2) + (std::sqrt(3.0) / 12.0 * tau * tau) * commutator(a2, a1);
  return expm(exponent);
}

/// Ordered product of Magnus steps over [0, s]; a constant generator is
/// exponentiated in one shot.
template <class Generator>
CMatrix time_ordered_exp(const Generator& gen, bool constant, double s, int steps, Eigen::Index n) {
  if (s == 0.0) return CMatrix::Identity(n, n);
  if (constant) return expm(-kI * s * gen(0.0));
  const double tau = s / steps;
  CMatrix y = CMatrix::Identity(n, n);
  for (int k = 0; k < steps; ++k) y = magnus4_step(gen, k * tau, tau) * y;
  return y;
}

inline void check_steps(int steps, const char* what) {
  if (steps < 1) throw InvalidArgument(std::string(what) + ": steps must be >= 1");
}

inline void check_unitary(const CMatrix& m, const char* what) {
  const double res = unitarity_residual(m);
  if (!(res <= kUnitarityTolerance))
    throw NumericalError(std::string(what) + ": unitarity residual " + std::to_string(res) + " exceeds tolerance");
}

}  // namespace detail

/// M(s) = T exp(-i int_0^s Omega(t) dt) as an ordered product of
/// fourth-order Magnus steps, `steps` of them across [0, s].
inline Propagator propagate_M(const HamiltonianSchedule& schedule, double s, const StructureTensor& g,
                              int steps = kDefaultPropagatorSteps) {
  detail::check_steps(steps, "propagate_M");
  if (s < 0.0 || s > schedule.t_op * (1.0 + 1e-12))
    throw DomainError("propagate_M: s must lie in [0, t_op]");
  auto gen = [&](double t) { return omega_of(schedule, t, g); };
  Propagator p{detail::time_ordered_exp(gen, !schedule.time_dependent(), s, steps, static_cast<Eigen::Index>(g.size())),
               s};
  detail::check_unitary(p.m, "propagate_M");
  return p;
}

/// M(t_k) on the uniform grid t_k = k t_op / steps, k = 0..steps.
inline std::vector<CMatrix> propagator_path(const HamiltonianSchedule& schedule, const StructureTensor& g, int steps) {
  detail::check_steps(steps, "propagator_path");
  const Eigen::Index n = static_cast<Eigen::Index>(g.size());
  const double tau = schedule.t_op / steps;
  std::vector<CMatrix> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(CMatrix::Identity(n, n));
  auto gen = [&](double t) { return omega_of(schedule, t, g); };
  CMatrix step;
  if (!schedule.time_dependent()) step = expm(-kI * tau * gen(0.0));
  for (int k = 0; k < steps; ++k) {
    if (schedule.time_dependent()) step = detail::magnus4_step(gen, k * tau, tau);
    path.push_back(step * path.back());
  }
  detail::check_unitary(path.back(), "propagator_path");
  return path;
}

/// Schroedinger propagator U(s) for H(t) = sum_p H_p(t) A_p.
inline CMatrix unitary_of(const HamiltonianSchedule& schedule, const OperatorBasis& basis, double s,
                          int steps = kDefaultPropagatorSteps) {
  detail::check_steps(steps, "unitary_of");
  if (s < 0.0 || s > schedule.t_op * (1.0 + 1e-12)) throw DomainError("unitary_of: s must lie in [0, t_op]");
  auto gen = [&](double t) { return basis.expand(schedule.at(t)); };
  CMatrix u = detail::time_ordered_exp(gen, !schedule.time_dependent(), s, steps, basis.dim);
  detail::check_unitary(u, "unitary_of");
  return u;
}

/// M_mn = <<A_m | U A_n U^dagger>>, the matrix of conjugation by U.
inline CMatrix adjoint_matrix(const CMatrix& u, const OperatorBasis& basis) {
  if (u.rows() != basis.dim || u.cols() != basis.dim) throw InvalidArgument("adjoint_matrix: unitary has wrong shape");
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  CMatrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    m.col(k) = basis.coefficients(u * basis.ops[static_cast<std::size_t>(k)] * u.adjoint());
  return m;
}

namespace detail {
inline void check_rate_pair(const CMatrix& gamma, const CMatrix& m, const char* what) {
  require_square(gamma, what);
  require_same_shape(gamma, m, what);
}
}  // namespace detail

/// Gamma^L = M Gamma M^dagger.
inline CMatrix commute_left(const CMatrix& gamma, const CMatrix& m) {
  detail::check_rate_pair(gamma, m, "commute_left");
  return m * gamma * m.adjoint();
}

/// Gamma^R = M^dagger Gamma M.
inline CMatrix commute_right(const CMatrix& gamma, const CMatrix& m) {
  detail::check_rate_pair(gamma, m, "commute_right");
  return m.adjoint() * gamma * m;
}

inline RateMatrix commute_left(const RateMatrix& gamma, const Propagator& m) {
  return RateMatrix(commute_left(gamma.gamma, m.m), gamma.basis_label);
}

inline RateMatrix commute_right(const RateMatrix& gamma, const Propagator& m) {
  return RateMatrix(commute_right(gamma.gamma, m.m), gamma.basis_label);
}

/// xi[Gamma] = -i [Omega, Gamma]; Hermitian but in general not PSD.
inline CMatrix commutator_rate(const CMatrix& omega, const CMatrix& gamma) {
  detail::check_rate_pair(gamma, omega, "commutator_rate");
  return -kI * commutator(omega, gamma);
}

// Superoperators act on vec(rho) with column stacking.

/// -i (1 kron H - H^T kron 1)
inline CMatrix hamiltonian_superop(const CMatrix& h) {
  require_square(h, "hamiltonian_superop");
  const CMatrix id = CMatrix::Identity(h.rows(), h.cols());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

/// Matrix of rho -> sum_nm Gamma_nm (A_n rho A_m^dagger - 1/2 {A_m^dagger A_n, rho}).
inline CMatrix dissipator_superop(const CMatrix& gamma, const OperatorBasis& basis) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  if (gamma.rows() != n || gamma.cols() != n) throw InvalidArgument("dissipator_superop: rate matrix has wrong size");
  const Eigen::Index d = basis.dim;
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix out = CMatrix::Zero(d * d, d * d);
  CMatrix anti = CMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < n; ++a) {
    // C_a = sum_m Gamma_am A_m^dagger
    CMatrix c = CMatrix::Zero(d, d);
    for (Eigen::Index m = 0; m < n; ++m)
      if (gamma(a, m) != cplx{}) c += gamma(a, m) * basis.ops[static_cast<std::size_t>(m)].adjoint();
    const CMatrix& op = basis.ops[static_cast<std::size_t>(a)];
    out += kron(c.transpose(), op);
    anti += c * op;
  }
  out -= 0.5 * (kron(id, anti) + kron(anti.transpose(), id));
  return out;
}

/// Matrix of rho -> U rho U^dagger.
inline CMatrix unitary_superop(const CMatrix& u) {
  require_square(u, "unitary_superop");
  return kron(u.conjugate(), u);
}

struct IdentityCheck {
  bool pass = false;
  double residual = 0.0;
};

/// Compares phi exp(t_op L_D) with exp(t_op L_L) phi, where phi is conjugation
/// by the coherent propagator over the full schedule and Gamma^L = M Gamma^D M^dagger.
inline IdentityCheck superop_commute_identity_check(const HamiltonianSchedule& schedule, const CMatrix& gamma_d,
                                                    const OperatorBasis& basis, double tol,
                                                    int steps = kDefaultPropagatorSteps) {
  if (basis.dim > 4) throw InvalidArgument("superop_commute_identity_check: limited to D <= 4");
  const StructureTensor g = structure_tensor(basis);
  const CMatrix u = unitary_of(schedule, basis, schedule.t_op, steps);
  const CMatrix m = propagate_M(schedule, schedule.t_op, g, steps).m;
  const CMatrix phi = unitary_superop(u);
  const CMatrix lhs = phi * expm(schedule.t_op * dissipator_superop(gamma_d, basis));
  const CMatrix rhs = expm(schedule.t_op * dissipator_superop(commute_left(gamma_d, m), basis)) * phi;
  IdentityCheck out;
  out.residual = max_abs(lhs - rhs);
  out.pass = out.residual <= tol;
  return out;
}

}  // namespace sepnoise
