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

/// Separated noise: the pure-dissipator rate matrix Gamma^S that, applied after
/// the ideal coherent evolution of an operation, reproduces the noisy
/// operation to first order in the noise strength.
///
/// Routes:
///   integral  Gamma^F = (1/t) int_0^t M^dagger(s) Gamma^D(s) M(s) ds, Gamma^S = M Gamma^F M^dagger
///   ode       dQ/ds = -i [Omega(s), Q] + Gamma^D(s), Q(0) = 0, Gamma^S = Q(t) / t
///   spectral  Gamma^S = f(t xi)[Gamma^D], f(x) = (e^x - 1) / x, time-independent only
///   series    the Taylor series of f(t xi), for cross-checks at moderate angles

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/lindblad.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/superoperators.hpp"

namespace sepnoise {

enum class SeparatedRoute { integral, ode, spectral, series };

inline const char* to_string(SeparatedRoute r) {
  switch (r) {
    case SeparatedRoute::integral: return "integral";
    case SeparatedRoute::ode: return "ode";
    case SeparatedRoute::spectral: return "spectral";
    case SeparatedRoute::series: return "series";
  }
  return "integral";
}

inline SeparatedRoute parse_route(const std::string& name) {
  if (name == "integral") return SeparatedRoute::integral;
  if (name == "ode") return SeparatedRoute::ode;
  if (name == "spectral") return SeparatedRoute::spectral;
  if (name == "series") return SeparatedRoute::series;
  throw InvalidArgument("unknown route '" + name + "' (expected integral, ode, spectral or series)");
}

struct SeparatedNoiseResult {
  RateMatrix gamma_s;
  RateMatrix gamma_f;
  double t_op = 0.0;
  SeparatedRoute route = SeparatedRoute::integral;
  double strength = 0.0;  // Tr Gamma^S
};

/// expm1 for complex argument without cancellation in the real part.
inline cplx complex_expm1(cplx z) {
  const double a = z.real(), b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

/// f(x) = (e^x - 1) / x with f(0) = 1; a four-term Taylor series below |x| = 1e-4.
inline cplx relative_expm1(cplx x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  return complex_expm1(x) / x;
}

namespace detail {

inline int even_steps(int steps) {
  if (steps < 2) steps = 2;
  return steps + (steps % 2);
}

inline void check_t_op(const LindbladGenerator& gen, double t_op, const char* what) {
  if (!(t_op > 0.0)) throw InvalidArgument(std::string(what) + ": t_op must be > 0");
  if (t_op > gen.schedule.t_op * (1.0 + 1e-12))
    throw DomainError(std::string(what) + ": t_op exceeds the schedule duration");
}

inline void check_rates(const CMatrix& gamma, Eigen::Index n, const char* what) {
  if (gamma.rows() != n || gamma.cols() != n)
    throw InvalidArgument(std::string(what) + ": rate matrix has wrong size");
}

inline SeparatedNoiseResult make_result(CMatrix gamma_s, CMatrix gamma_f, double t_op, SeparatedRoute route,
                                        const std::string& label) {
  SeparatedNoiseResult r;
  r.strength = gamma_s.trace().real();
  r.gamma_s = RateMatrix(std::move(gamma_s), label);
  r.gamma_f = RateMatrix(std::move(gamma_f), label);
  r.t_op = t_op;
  r.route = route;
  return r;
}

}  // namespace detail

/// (1/t) int_0^t Tr Gamma^D(s) ds by composite Simpson.
inline double time_averaged_strength(const LindbladGenerator& gen, double t_op, int steps = kDefaultPropagatorSteps) {
  detail::check_t_op(gen, t_op, "time_averaged_strength");
  if (gen.noise.constant_in_time) return gen.strength(0.0);
  steps = detail::even_steps(steps);
  const double h = t_op / steps;
  double sum = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * gen.strength(k * h);
  }
  return sum * h / 3.0 / t_op;
}

/// Integral route with composite Simpson on the propagator grid.
inline SeparatedNoiseResult separated_integral(const LindbladGenerator& gen, double t_op,
                                               int steps = kDefaultPropagatorSteps) {
  detail::check_t_op(gen, t_op, "separated_integral");
  steps = detail::even_steps(steps);
  const StructureTensor g = structure_tensor(gen.basis);
  const Eigen::Index n = static_cast<Eigen::Index>(g.size());
  const double h = t_op / steps;
  auto omega = [&](double t) { return omega_of(gen.schedule, t, g); };
  const bool constant = !gen.schedule.time_dependent();
  const CMatrix constant_step = constant ? expm(-kI * h * omega(0.0)) : CMatrix();

  CMatrix m = CMatrix::Identity(n, n);
  CMatrix acc = CMatrix::Zero(n, n);
  for (int k = 0; k <= steps; ++k) {
    const double t = k * h;
    if (k > 0) m = (constant ? constant_step : detail::magnus4_step(omega, t - h, h)) * m;
    const CMatrix gamma = gen.rates(t);
    detail::check_rates(gamma, n, "separated_integral");
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * (m.adjoint() * gamma * m);
  }
  detail::check_unitary(m, "separated_integral");
  CMatrix gamma_f = acc * (h / 3.0 / t_op);
  CMatrix gamma_s = m * gamma_f * m.adjoint();
  return detail::make_result(std::move(gamma_s), std::move(gamma_f), t_op, SeparatedRoute::integral,
                             gen.basis.label());
}

using QObserver = std::function<void(int step, double s, const CMatrix& q)>;

/// RK4 on dQ/ds = -i [Omega(s), Q] + Gamma^D(s) from Q(0) = 0 to s = t_end.
/// The observer sees Q after every step (and Q(0)). A non-empty q0 replaces
/// the zero initial value, which lets piecewise generators be chained.
inline CMatrix separated_q_path(const LindbladGenerator& gen, double t_end, int steps, const QObserver& observer = {},
                                const CMatrix& q0 = CMatrix()) {
  if (steps < 1) throw InvalidArgument("separated_q_path: steps must be >= 1");
  detail::check_t_op(gen, t_end, "separated_q_path");
  const StructureTensor g = structure_tensor(gen.basis);
  const Eigen::Index n = static_cast<Eigen::Index>(g.size());
  const bool constant = !gen.time_dependent();
  const CMatrix omega0 = omega_of(gen.schedule, 0.0, g);
  const CMatrix gamma0 = gen.rates(0.0);
  detail::check_rates(gamma0, n, "separated_q_path");
  auto rhs = [&](double s, const CMatrix& q) -> CMatrix {
    if (constant) return -kI * commutator(omega0, q) + gamma0;
    return -kI * commutator(omega_of(gen.schedule, s, g), q) + gen.rates(s);
  };
  const double h = t_end / steps;
  CMatrix q = q0.size() ? q0 : CMatrix::Zero(n, n);
  detail::check_rates(q, n, "separated_q_path");
  if (observer) observer(0, 0.0, q);
  for (int k = 0; k < steps; ++k) {
    const double s = k * h;
    const CMatrix k1 = rhs(s, q);
    const CMatrix k2 = rhs(s + 0.5 * h, q + (0.5 * h) * k1);
    const CMatrix k3 = rhs(s + 0.5 * h, q + (0.5 * h) * k2);
    const CMatrix k4 = rhs(s + h, q + h * k3);
    q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(k + 1, s + h, q);
  }
  return q;
}

/// ODE route; Gamma^F is recovered as M^dagger Gamma^S M.
inline SeparatedNoiseResult separated_ode(const LindbladGenerator& gen, double t_op,
                                          int steps = kDefaultPropagatorSteps) {
  detail::check_t_op(gen, t_op, "separated_ode");
  const CMatrix q = separated_q_path(gen, t_op, steps);
  CMatrix gamma_s = q / t_op;
  const CMatrix m = propagate_M(gen.schedule, t_op, structure_tensor(gen.basis), steps).m;
  CMatrix gamma_f = m.adjoint() * gamma_s * m;
  return detail::make_result(std::move(gamma_s), std::move(gamma_f), t_op, SeparatedRoute::ode, gen.basis.label());
}

/// Eigen-decomposition of the map xi = -i [Omega, .] on rate matrices, built
/// from the eigenvectors v_i of Omega: each v_i v_j^dagger is an eigenmode with
/// eigenvalue -i (w_i - w_j). Modes are orthonormal under Tr[A^dagger B].
struct XiSpectrum {
  RVector omega_eigs;  // w_i, ascending
  CMatrix vectors;     // columns v_i

  Eigen::Index size() const { return omega_eigs.size(); }

  cplx eigenvalue(Eigen::Index i, Eigen::Index j) const { return -kI * (omega_eigs(i) - omega_eigs(j)); }

  CMatrix mode(Eigen::Index i, Eigen::Index j) const { return vectors.col(i) * vectors.col(j).adjoint(); }

  /// eta for the mode (i, j) when xi[mode] = 2 J i eta mode.
  double eta(Eigen::Index i, Eigen::Index j, double energy_scale) const {
    return -(omega_eigs(i) - omega_eigs(j)) / (2.0 * energy_scale);
  }

  /// All n^2 eigenvalues of xi.
  std::vector<cplx> eigenvalues() const {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(size() * size()));
    for (Eigen::Index i = 0; i < size(); ++i)
      for (Eigen::Index j = 0; j < size(); ++j) out.push_back(eigenvalue(i, j));
    return out;
  }

  /// Coordinates V^dagger Gamma V of a rate matrix in the mode basis.
  CMatrix to_modes(const CMatrix& gamma) const { return vectors.adjoint() * gamma * vectors; }
  CMatrix from_modes(const CMatrix& coords) const { return vectors * coords * vectors.adjoint(); }

  /// Scale-relative cut below which |w_i - w_j| counts as zero.
  double null_tolerance() const {
    const double norm = size() ? omega_eigs.cwiseAbs().maxCoeff() : 0.0;
    return 1e-9 * std::max(1.0, norm);
  }
};

namespace detail {

inline void check_omega(const CMatrix& omega, const char* what) {
  require_square(omega, what);
  if (!is_hermitian(omega, 1e-10)) throw InvalidArgument(std::string(what) + ": Omega is not Hermitian");
}

}  // namespace detail

/// Real antisymmetric matrix of xi restricted to Hermitian rate matrices, in
/// the orthonormal basis {E_kk, (E_kl + E_lk)/sqrt2, i(E_kl - E_lk)/sqrt2}
/// (k < l), ordered as the diagonal entries first and then the pairs.
inline RMatrix xi_matrix_hermitian_basis(const CMatrix& omega) {
  detail::check_omega(omega, "xi_matrix_hermitian_basis");
  const Eigen::Index n = omega.rows();
  const Eigen::Index dim = n * n;
  struct Elem {
    Eigen::Index k, l;
    int kind;  // 0 diagonal, 1 symmetric, 2 antisymmetric
  };
  std::vector<Elem> elems;
  elems.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < n; ++k) elems.push_back({k, k, 0});
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      elems.push_back({k, l, 1});
      elems.push_back({k, l, 2});
    }
  const double r2 = std::sqrt(0.5);
  RMatrix x(dim, dim);
  CMatrix h = CMatrix::Zero(n, n);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Elem& e = elems[static_cast<std::size_t>(b)];
    h.setZero();
    if (e.kind == 0) {
      h(e.k, e.k) = 1.0;
    } else if (e.kind == 1) {
      h(e.k, e.l) = r2;
      h(e.l, e.k) = r2;
    } else {
      h(e.k, e.l) = kI * r2;
      h(e.l, e.k) = -kI * r2;
    }
    const CMatrix y = -kI * commutator(omega, h);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const Elem& f = elems[static_cast<std::size_t>(a)];
      const cplx ykl = y(f.k, f.l);
      // For Hermitian Y: Tr[h Y] is Y_kk, sqrt2 Re Y_kl or sqrt2 Im Y_kl.
      x(a, b) = f.kind == 0 ? ykl.real() : std::sqrt(2.0) * (f.kind == 1 ? ykl.real() : ykl.imag());
    }
  }
  return x;
}

/// Direct route: xi is diagonalized as a (D^2-1)^2-dimensional operator. The
/// returned w satisfy spec(xi) = {i w}, sorted ascending.
inline RVector xi_eigenvalues_direct(const CMatrix& omega) {
  return skew_symmetric_eigenvalues(xi_matrix_hermitian_basis(omega));
}

/// w = -(w_i - w_j) over all pairs, sorted ascending.
inline RVector xi_eigenvalues_from_spectrum(const RVector& omega_eigs) {
  const Eigen::Index n = omega_eigs.size();
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) w.push_back(-(omega_eigs(i) - omega_eigs(j)));
  std::sort(w.begin(), w.end());
  return Eigen::Map<RVector>(w.data(), static_cast<Eigen::Index>(w.size()));
}

inline double max_sorted_difference(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

/// Eigenmodes of xi from the eigenvectors of Omega. For n <= 15 the direct
/// route is also run and must agree to 1e-8.
inline XiSpectrum xi_spectrum(const CMatrix& omega, bool cross_check = true) {
  detail::check_omega(omega, "xi_spectrum");
  const HermitianEigen eig = hermitian_eigen(omega);
  XiSpectrum xs{eig.values, eig.vectors};
  if (cross_check && omega.rows() <= 15) {
    const double res = max_sorted_difference(xi_eigenvalues_direct(omega), xi_eigenvalues_from_spectrum(eig.values));
    if (!(res <= 1e-8))
      throw NumericalError("xi_spectrum: direct and eigenvector routes differ by " + std::to_string(res));
  }
  return xs;
}

/// Traceless basis built from the eigenstates |i> of H: B_ij = sqrt(D)|i><j|
/// for i != j, then B_0k = sqrt(D / (k (k+1))) (sum_{m<=k} |m><m| - k |k+1><k+1|).
/// Orthonormal under the 1/D product; ad_H is diagonal in it.
inline OperatorBasis b_operator_basis(const CMatrix& h) {
  require_square(h, "b_operator_basis");
  if (!is_hermitian(h, 1e-10)) throw InvalidArgument("b_operator_basis: Hamiltonian is not Hermitian");
  const int d = static_cast<int>(h.rows());
  if (d < 2) throw InvalidArgument("b_operator_basis: dimension must be >= 2");
  const HermitianEigen eig = hermitian_eigen(h);
  const CMatrix& v = eig.vectors;
  const double sd = std::sqrt(static_cast<double>(d));
  std::vector<CMatrix> ops;
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      ops.push_back(sd * v.col(i) * v.col(j).adjoint());
      labels.push_back("B" + std::to_string(i) + "," + std::to_string(j));
    }
  for (int k = 1; k < d; ++k) {
    CMatrix b = CMatrix::Zero(d, d);
    for (int m = 0; m < k; ++m) b += v.col(m) * v.col(m).adjoint();
    b -= k * (v.col(k) * v.col(k).adjoint());
    ops.push_back(sd / std::sqrt(k * (k + 1.0)) * b);
    labels.push_back("B0," + std::to_string(k));
  }
  return custom_basis(d, std::move(ops), std::move(labels));
}

struct HamiltonianXiSpectrum {
  RVector w;                        // spec(xi) = {i w}, ascending
  RVector omega_diagonal;           // Omega in the B basis, diagonal part
  double off_diagonal_residual = 0; // max |Omega^B_mn|, m != n
};

/// Spectrum of xi assembled from the energy eigenstates of H, through the
/// matrix of ad_H in the B-operator basis.
inline HamiltonianXiSpectrum xi_eigenvalues_from_hamiltonian(const CMatrix& h) {
  const OperatorBasis b = b_operator_basis(h);
  const Eigen::Index n = static_cast<Eigen::Index>(b.size());
  CMatrix omega_b(n, n);
  for (Eigen::Index k = 0; k < n; ++k) omega_b.col(k) = b.coefficients(commutator(h, b.ops[static_cast<std::size_t>(k)]));
  HamiltonianXiSpectrum out;
  out.omega_diagonal = omega_b.diagonal().real();
  CMatrix off = omega_b;
  off.diagonal().setZero();
  out.off_diagonal_residual = max_abs(off);
  out.w = xi_eigenvalues_from_spectrum(out.omega_diagonal);
  return out;
}

/// xi[Gamma] = -i [Omega, Gamma].
inline CMatrix xi_apply(const CMatrix& omega, const CMatrix& gamma) { return commutator_rate(omega, gamma); }

/// f(t xi)[Gamma] through the mode decomposition.
inline CMatrix apply_K(const XiSpectrum& xs, const CMatrix& gamma, double t_op) {
  CMatrix c = xs.to_modes(gamma);
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    for (Eigen::Index j = 0; j < xs.size(); ++j) c(i, j) *= relative_expm1(t_op * xs.eigenvalue(i, j));
  return xs.from_modes(c);
}

/// Spectral route for a time-independent generator.
inline SeparatedNoiseResult separated_spectral(const CMatrix& gamma_d, const CMatrix& omega, double t_op,
                                               const std::string& basis_label = {}) {
  if (!(t_op > 0.0)) throw InvalidArgument("separated_spectral: t_op must be > 0");
  detail::check_rate_pair(gamma_d, omega, "separated_spectral");
  const XiSpectrum xs = xi_spectrum(omega, false);
  CMatrix gamma_s = apply_K(xs, gamma_d, t_op);
  const CMatrix m = expm(-kI * t_op * omega);
  CMatrix gamma_f = m.adjoint() * gamma_s * m;
  return detail::make_result(std::move(gamma_s), std::move(gamma_f), t_op, SeparatedRoute::spectral, basis_label);
}

inline SeparatedNoiseResult separated_spectral(const LindbladGenerator& gen, double t_op) {
  if (gen.time_dependent())
    throw UnsupportedOperation("separated_spectral: the generator is time-dependent; use the integral or ode route");
  detail::check_t_op(gen, t_op, "separated_spectral");
  const StructureTensor g = structure_tensor(gen.basis);
  return separated_spectral(gen.rates(0.0), omega_of(gen.schedule, 0.0, g), t_op, gen.basis.label());
}

/// sum_m tau^m / (m+1)! xi^m [G], summed until the terms fall below 1e-17
/// of the running sum. Long durations are first halved s times so that
/// ||tau xi|| <= 1, using f(2x) = f(x) (1 + e^x) / 2: G is Gamma^D averaged
/// with its images under e^{2^k tau xi}, k < s.
inline SeparatedNoiseResult separated_series(const CMatrix& gamma_d, const CMatrix& omega, double t_op,
                                             int max_terms = 400, const std::string& basis_label = {}) {
  if (!(t_op > 0.0)) throw InvalidArgument("separated_series: t_op must be > 0");
  detail::check_rate_pair(gamma_d, omega, "separated_series");
  int halvings = 0;
  double tau = t_op;
  const double bound = 2.0 * omega.norm();
  while (tau * bound > 1.0 && halvings < 60) {
    tau *= 0.5;
    ++halvings;
  }
  CMatrix g = gamma_d;
  CMatrix step = expm(-kI * tau * omega);
  for (int k = 0; k < halvings; ++k) {
    g = 0.5 * (g + step * g * step.adjoint());
    step = step * step;
  }
  CMatrix term = g;
  CMatrix sum = g;
  bool converged = false;
  for (int m = 1; m <= max_terms; ++m) {
    term = (tau / (m + 1.0)) * xi_apply(omega, term);
    sum += term;
    const double scale = std::max(max_abs(sum), std::numeric_limits<double>::min());
    if (max_abs(term) <= 1e-17 * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("separated_series: series did not converge");
  const CMatrix m = expm(-kI * t_op * omega);
  CMatrix gamma_f = m.adjoint() * sum * m;
  return detail::make_result(std::move(sum), std::move(gamma_f), t_op, SeparatedRoute::series, basis_label);
}

inline SeparatedNoiseResult separated_series(const LindbladGenerator& gen, double t_op) {
  if (gen.time_dependent())
    throw UnsupportedOperation("separated_series: the generator is time-dependent; use the integral or ode route");
  detail::check_t_op(gen, t_op, "separated_series");
  const StructureTensor g = structure_tensor(gen.basis);
  return separated_series(gen.rates(0.0), omega_of(gen.schedule, 0.0, g), t_op, 400, gen.basis.label());
}

inline SeparatedNoiseResult separate(const LindbladGenerator& gen, double t_op, SeparatedRoute route,
                                     int steps = kDefaultPropagatorSteps) {
  switch (route) {
    case SeparatedRoute::integral: return separated_integral(gen, t_op, steps);
    case SeparatedRoute::ode: return separated_ode(gen, t_op, steps);
    case SeparatedRoute::spectral: return separated_spectral(gen, t_op);
    case SeparatedRoute::series: return separated_series(gen, t_op);
  }
  throw InvalidArgument("separate: unknown route");
}

/// Projection of Gamma^D onto the null space of xi: the modes with
/// |w_i - w_j| <= 1e-9 max(1, ||Omega||_2).
inline RateMatrix steady_state(const CMatrix& gamma_d, const CMatrix& omega, const std::string& basis_label = {}) {
  detail::check_rate_pair(gamma_d, omega, "steady_state");
  const XiSpectrum xs = xi_spectrum(omega, false);
  const double tol = xs.null_tolerance();
  CMatrix c = xs.to_modes(gamma_d);
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    for (Eigen::Index j = 0; j < xs.size(); ++j)
      if (std::abs(xs.omega_eigs(i) - xs.omega_eigs(j)) > tol) c(i, j) = 0.0;
  CMatrix ss = xs.from_modes(c);
  return RateMatrix(0.5 * (ss + ss.adjoint()), basis_label);
}

/// Tr[mode^dagger Gamma], the coupling of a rate matrix to a mode.
inline cplx mode_coupling(const CMatrix& mode, const CMatrix& gamma) {
  require_same_shape(mode, gamma, "mode_coupling");
  return mode.conjugate().cwiseProduct(gamma).sum();
}

/// Residual separated noise restricted to one nonzero eigenvalue 2 J i eta of xi.
struct ResidualComponent {
  double eta = 0.0;
  double coupling = 0.0;   // ||P_eta Gamma^D|| (Frobenius, no 1/D)
  cplx factor{1.0, 0.0};   // gamma_a(theta) / gamma_a(0) = f(i eta theta)
  double amplitude = 0.0;  // |factor| * coupling
  CMatrix initial;         // P_eta Gamma^D
  CMatrix at_theta;        // factor * P_eta Gamma^D
};

/// Groups the non-null modes of xi by eta (energy scale J, angle theta = 2 J t_op)
/// and reports how each projection of Gamma^D is scaled at theta. Summed
/// with the steady state, the components rebuild Gamma^S.
inline std::vector<ResidualComponent> residual_components(const CMatrix& gamma_d, const CMatrix& omega,
                                                          double energy_scale, double theta) {
  detail::check_rate_pair(gamma_d, omega, "residual_components");
  if (!(energy_scale > 0.0)) throw InvalidArgument("residual_components: energy scale must be > 0");
  const XiSpectrum xs = xi_spectrum(omega, false);
  const double tol = xs.null_tolerance();
  const CMatrix coords = xs.to_modes(gamma_d);
  const Eigen::Index n = xs.size();

  struct Entry {
    double diff;
    Eigen::Index i, j;
  };
  std::vector<Entry> entries;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double diff = xs.omega_eigs(i) - xs.omega_eigs(j);
      if (std::abs(diff) > tol) entries.push_back({diff, i, j});
    }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.diff > b.diff; });

  std::vector<ResidualComponent> out;
  std::size_t k = 0;
  while (k < entries.size()) {
    const double head = entries[k].diff;
    CMatrix c = CMatrix::Zero(n, n);
    std::size_t e = k;
    for (; e < entries.size() && std::abs(entries[e].diff - head) <= tol; ++e)
      c(entries[e].i, entries[e].j) = coords(entries[e].i, entries[e].j);
    ResidualComponent rc;
    rc.eta = -head / (2.0 * energy_scale);
    rc.initial = xs.from_modes(c);
    rc.coupling = rc.initial.norm();
    rc.factor = relative_expm1(kI * rc.eta * theta);
    rc.amplitude = std::abs(rc.factor) * rc.coupling;
    rc.at_theta = rc.factor * rc.initial;
    out.push_back(std::move(rc));
    k = e;
  }
  return out;
}

struct ChoiResult {
  CMatrix choi;
  RVector eigenvalues;  // ascending
};

/// C_K = sum_ij e^{ij} kron K[e^{ij}] for K = f(t xi) on (D^2-1)x(D^2-1) rate matrices.
inline ChoiResult choi_of_K(const CMatrix& omega, double t_op) {
  if (!(t_op > 0.0)) throw InvalidArgument("choi_of_K: t_op must be > 0");
  const XiSpectrum xs = xi_spectrum(omega, false);
  const Eigen::Index n = xs.size();
  CMatrix factors(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) factors(a, b) = relative_expm1(t_op * xs.eigenvalue(a, b));
  const CMatrix& v = xs.vectors;
  ChoiResult r;
  r.choi = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      // V^dagger e^{ij} V = (row i of V)^dagger (row j of V)
      const CMatrix coords = (v.row(i).adjoint() * v.row(j)).cwiseProduct(factors);
      r.choi.block(i * n, j * n, n, n) = v * coords * v.adjoint();
    }
  r.eigenvalues = hermitian_eigenvalues(r.choi);
  return r;
}

/// lambda = 1 - exp(-alpha D^2 t) for Gamma = alpha * identity.
inline double global_depolarizing_lambda(double alpha, int dim, double t_op) {
  if (!(alpha >= 0.0)) throw InvalidArgument("global_depolarizing_lambda: alpha must be >= 0");
  if (dim < 1) throw InvalidArgument("global_depolarizing_lambda: dimension must be >= 1");
  if (t_op < 0.0) throw InvalidArgument("global_depolarizing_lambda: t_op must be >= 0");
  if (std::isinf(t_op)) return alpha > 0.0 ? 1.0 : 0.0;
  return -std::expm1(-alpha * dim * dim * t_op);
}

}  // namespace sepnoise
