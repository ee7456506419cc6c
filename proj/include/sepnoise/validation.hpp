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

/// Reference experiments and closed-form checks, collected into reports.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sepnoise/gate_compiler.hpp"
#include "sepnoise/json_io.hpp"
#include "sepnoise/lindblad.hpp"
#include "sepnoise/noise_presets.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/separated_noise.hpp"
#include "sepnoise/superoperators.hpp"

namespace sepnoise {

enum class Comparison { match, at_most, at_least };

/// Where a reference value comes from.
enum class ReferenceKind { closed_form, limit, cross_check, calibrated, scaling };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::match: return "match";
    case Comparison::at_most: return "at_most";
    case Comparison::at_least: return "at_least";
  }
  return "match";
}

inline const char* to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::closed_form: return "closed_form";
    case ReferenceKind::limit: return "limit";
    case ReferenceKind::cross_check: return "cross_check";
    case ReferenceKind::calibrated: return "calibrated";
    case ReferenceKind::scaling: return "scaling";
  }
  return "closed_form";
}

struct ValidationCase {
  std::string id;
  ReferenceKind kind = ReferenceKind::closed_form;
  Comparison comparison = Comparison::match;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

struct ValidationReport {
  std::string name;
  std::vector<ValidationCase> cases;
  double runtime_s = 0.0;

  bool pass() const {
    return std::all_of(cases.begin(), cases.end(), [](const ValidationCase& c) { return c.pass; });
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const ValidationCase& c) { return !c.pass; }));
  }

  /// |computed - reference| <= tolerance
  ValidationCase& match(std::string id, ReferenceKind kind, double computed, double reference, double tolerance,
                        double runtime_s = 0.0) {
    return add({std::move(id), kind, Comparison::match, computed, reference, tolerance,
                std::abs(computed - reference) <= tolerance, runtime_s});
  }

  /// computed <= bound
  ValidationCase& at_most(std::string id, ReferenceKind kind, double computed, double bound, double runtime_s = 0.0) {
    return add({std::move(id), kind, Comparison::at_most, computed, bound, 0.0, computed <= bound, runtime_s});
  }

  /// computed >= bound
  ValidationCase& at_least(std::string id, ReferenceKind kind, double computed, double bound, double runtime_s = 0.0) {
    return add({std::move(id), kind, Comparison::at_least, computed, bound, 0.0, computed >= bound, runtime_s});
  }

  void merge(const ValidationReport& other) {
    for (const auto& c : other.cases) cases.push_back(c);
    runtime_s += other.runtime_s;
  }

 private:
  ValidationCase& add(ValidationCase c) {
    cases.push_back(std::move(c));
    return cases.back();
  }
};

inline Json report_to_json(const ValidationReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back(Json{{"id", c.id},
                         {"reference_kind", to_string(c.kind)},
                         {"comparison", to_string(c.comparison)},
                         {"computed", c.computed},
                         {"reference", c.reference},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass},
                         {"runtime_s", c.runtime_s}});
  return Json{{"suite", r.name},
              {"pass", r.pass()},
              {"cases", r.cases.size()},
              {"failures", r.failures()},
              {"runtime_s", r.runtime_s},
              {"results", cases}};
}

/// JUnit XML with one testcase per validation case.
inline std::string report_to_junit(const ValidationReport& r) {
  auto esc = [](const std::string& s) {
    std::string o;
    for (char ch : s) {
      switch (ch) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
      }
    }
    return o;
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"" << esc(r.name) << "\" tests=\"" << r.cases.size() << "\" failures=\"" << r.failures()
     << "\" time=\"" << format_double(r.runtime_s) << "\">\n";
  for (const auto& c : r.cases) {
    os << "  <testcase name=\"" << esc(c.id) << "\" time=\"" << format_double(c.runtime_s) << "\"";
    if (c.pass) {
      os << "/>\n";
    } else {
      os << ">\n    <failure message=\"computed " << format_double(c.computed) << ", " << to_string(c.comparison) << " "
         << format_double(c.reference);
      if (c.comparison == Comparison::match) os << " within " << format_double(c.tolerance);
      os << "\"/>\n  </testcase>\n";
    }
  }
  os << "</testsuite>\n";
  return os.str();
}

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Reference systems

/// One qubit driven by H = -J X for t_op = theta / (2J), with constant noise.
inline LindbladGenerator x_drive_generator(double energy_scale, double theta, const CMatrix& gamma) {
  const OperatorBasis basis = pauli_basis(1);
  CVector h = CVector::Zero(3);
  h(0) = -energy_scale;
  return LindbladGenerator{basis, HamiltonianSchedule::constant(h, theta / (2.0 * energy_scale)),
                           NoiseSchedule::constant(gamma)};
}

/// Separated dephasing noise under H = -J X, in the (X, Y, Z) basis.
inline CMatrix dephasing_closed_form(double gamma, double theta) {
  const double c = gamma / (4.0 * theta);
  const double s = std::sin(theta);
  CMatrix m = CMatrix::Zero(3, 3);
  m(1, 1) = c * (theta - 0.5 * std::sin(2.0 * theta));
  m(1, 2) = m(2, 1) = c * s * s;
  m(2, 2) = c * (theta + 0.5 * std::sin(2.0 * theta));
  return m;
}

/// (gamma/4)(1 - sin(theta)/theta), (gamma/4)(1 + sin(theta)/theta)
inline std::array<double, 2> dephasing_closed_form_rates(double gamma, double theta) {
  const double r = std::sin(theta) / theta;
  return {0.25 * gamma * (1.0 - r), 0.25 * gamma * (1.0 + r)};
}

/// The three nonzero separated damping rates under H = -J X, ascending.
inline std::array<double, 3> damping_closed_form_rates(double gamma, double theta) {
  const double s = std::sin(theta);
  const double root = std::sqrt((theta - s) * (theta - s) + 32.0 * (1.0 - std::cos(theta)));
  std::array<double, 3> r = {gamma / 8.0 * (1.0 - s / theta),
                             3.0 * gamma / 16.0 + gamma / (16.0 * theta) * (s + root),
                             3.0 * gamma / 16.0 + gamma / (16.0 * theta) * (s - root)};
  std::sort(r.begin(), r.end());
  return r;
}

/// Nonzero Choi eigenvalues of f(t xi) for H = -J X, ascending.
inline std::array<double, 3> choi_closed_form(double theta) {
  const double s = std::sin(theta);
  const double root = std::sqrt(2.0 * std::cos(theta) + 34.0) * std::sin(0.5 * theta);
  std::array<double, 3> r = {1.0 - s / theta, 1.0 + (s + root) / (2.0 * theta), 1.0 + (s - root) / (2.0 * theta)};
  std::sort(r.begin(), r.end());
  return r;
}

/// Eigenmodes of xi with eta = +2 and -2 for Omega = -2 J lambda_7, written
/// in the Gell-Mann matrices acting on the 3-dimensional rate space:
/// -lambda_3/4 +- i lambda_6/2 + sqrt(3)/4 lambda_8.
inline std::array<CMatrix, 2> dephasing_xi_modes() {
  const OperatorBasis gm = gell_mann_basis(3);
  // gell_mann_basis scales by sqrt(D/2); undo it to get the textbook lambdas.
  const double unscale = 1.0 / std::sqrt(1.5);
  const CMatrix l3 = unscale * gm.ops[2], l6 = unscale * gm.ops[5], l8 = unscale * gm.ops[7];
  const CMatrix base = -0.25 * l3 + std::sqrt(3.0) / 4.0 * l8;
  return {base + 0.5 * kI * l6, base - 0.5 * kI * l6};
}

/// Gate noise of the two-rotation Hadamard construction with damping noise.
inline CMatrix hadamard_reference(double gamma) {
  const double pi = kPi;
  CMatrix m(3, 3);
  m << 1.0 / 12.0, -kI / (3.0 * pi), -1.0 / (6.0 * pi),
      kI / (3.0 * pi), 0.5, -kI * (1.0 + pi) / (3.0 * pi),
      -1.0 / (6.0 * pi), kI * (1.0 + pi) / (3.0 * pi), 5.0 / 12.0;
  return 0.5 * gamma * m;
}

/// Hadamard as a Z rotation (J = -pi/4, duration 2) followed by a Y rotation
/// (J = pi/4, duration 1) under damping noise, with `idle_units` units of
/// idling after the Y rotation.
inline GateSpec hadamard_toy_spec(double gamma, double idle_units = 0.0) {
  const OperatorBasis basis = pauli_basis(1);
  CVector hz = CVector::Zero(3), hy = CVector::Zero(3);
  hz(2) = -kPi / 4.0;
  hy(1) = kPi / 4.0;
  GateSpec spec{basis, {}, NoiseSchedule::constant(damping_rates(basis, 0, gamma))};
  spec.ops.push_back(GateOp{"Z", HamiltonianSchedule::constant(hz, 2.0), std::nullopt, 0.0});
  spec.ops.push_back(GateOp{"Y", HamiltonianSchedule::constant(hy, 1.0), std::nullopt, idle_units});
  return spec;
}

/// exp(-i pi Y / 4) exp(+i pi Z / 2)
inline CMatrix hadamard_reference_unitary() {
  const OperatorBasis b = pauli_basis(1);
  return expm(-kI * (kPi / 4.0) * b.ops[1]) * expm(kI * (kPi / 2.0) * b.ops[2]);
}

/// min over global phases of max |a - e^{i phi} b|, with phi aligned on the
/// largest entry of b.
inline double phase_insensitive_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "phase_insensitive_distance");
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) == 0.0) return max_abs(a);
  const cplx ratio = a(r, c) / b(r, c);
  const cplx phase = std::abs(ratio) > 0 ? ratio / std::abs(ratio) : cplx(1.0);
  return max_abs(a - phase * b);
}

/// H(t) = cos(t) X + sin(t) Y with Gamma(t) = (gamma/2) diag(0, sin^2(sqrt2 t), cos^2(sqrt2 t)).
inline LindbladGenerator fig1_generator(double gamma, double t_max) {
  const OperatorBasis basis = pauli_basis(1);
  auto h = HamiltonianSchedule::expression(
      [](double t) {
        CVector v = CVector::Zero(3);
        v(0) = std::cos(t);
        v(1) = std::sin(t);
        return v;
      },
      3, t_max);
  auto noise = NoiseSchedule::time_dependent([gamma](double t) {
    const double s = std::sin(std::sqrt(2.0) * t);
    const double c = std::cos(std::sqrt(2.0) * t);
    CMatrix g = CMatrix::Zero(3, 3);
    g(1, 1) = 0.5 * gamma * s * s;
    g(2, 2) = 0.5 * gamma * c * c;
    return g;
  });
  return LindbladGenerator{basis, h, noise};
}

/// Density matrices on `grid` + 1 equally spaced times in [0, t_max]: the
/// full noisy evolution and the separated model exp(t L_S(t)) phi(t) rho0.
/// Gamma^S(t) is rebuilt at every grid time from the Q equation, so
/// exp(t L_S) is the dissipator with rate matrix Q(t).
struct SeparatedTrajectory {
  std::vector<double> times;
  std::vector<CMatrix> exact;
  std::vector<CMatrix> separated;
};

inline SeparatedTrajectory separated_trajectory(const LindbladGenerator& gen, const DensityMatrix& rho0, double t_max,
                                                int grid, int steps = 0) {
  if (grid < 1) throw InvalidArgument("separated_trajectory: grid must be >= 1");
  if (steps <= 0) steps = default_evolve_steps(gen, t_max);
  const int per = (steps + grid - 1) / grid;
  steps = per * grid;

  SeparatedTrajectory out;
  for (int k = 0; k <= grid; ++k) out.times.push_back(t_max * k / grid);
  evolve(gen, rho0, t_max, steps, [&](int step, double, const CMatrix& rho) {
    if (step % per == 0) out.exact.push_back(rho);
  });

  std::vector<CMatrix> coherent;
  const Eigen::Index n = static_cast<Eigen::Index>(gen.basis.size());
  const LindbladGenerator ideal{gen.basis, gen.schedule, NoiseSchedule::constant(CMatrix::Zero(n, n))};
  evolve(ideal, rho0, t_max, steps, [&](int step, double, const CMatrix& rho) {
    if (step % per == 0) coherent.push_back(rho);
  });

  std::vector<CMatrix> q_path;
  separated_q_path(gen, t_max, steps, [&](int step, double, const CMatrix& q) {
    if (step % per == 0) q_path.push_back(q);
  });

  for (std::size_t k = 0; k < coherent.size(); ++k) {
    const CMatrix channel = expm(dissipator_superop(q_path[k], gen.basis));
    out.separated.push_back(unvec(channel * vec(coherent[k]), gen.basis.dim));
  }
  return out;
}

struct Fig1Result {
  double gamma = 0.0;
  double t_max = 0.0;
  std::vector<double> times;
  std::vector<double> exact;      // <sigma_x> under the full generator
  std::vector<double> separated;  // <sigma_x> under the separated model
  double max_deviation = 0.0;
};

/// The rotating-drive experiment: rho0 = |0><0|, observable sigma_x.
inline Fig1Result fig1_experiment(double gamma, double t_max, int grid, int steps = 0) {
  if (!(gamma >= 0.0)) throw InvalidArgument("fig1_experiment: gamma must be >= 0");
  const LindbladGenerator gen = fig1_generator(gamma, t_max);
  const SeparatedTrajectory traj = separated_trajectory(gen, DensityMatrix::basis_state(2, 0), t_max, grid, steps);
  Fig1Result r;
  r.gamma = gamma;
  r.t_max = t_max;
  r.times = traj.times;
  const CMatrix& sx = gen.basis.ops[0];
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    r.exact.push_back(expectation(sx, traj.exact[k]));
    r.separated.push_back(expectation(sx, traj.separated[k]));
    r.max_deviation = std::max(r.max_deviation, std::abs(r.separated.back() - r.exact.back()));
  }
  return r;
}

/// max |Phi - exp(t L_S) phi| over superoperator matrix elements, where Phi
/// is the full noisy map from the RK4 integrator.
inline double superop_residual(const LindbladGenerator& gen, double t_op, int steps) {
  const SeparatedNoiseResult sep = separated_integral(gen, t_op, steps);
  const CMatrix u = unitary_of(gen.schedule, gen.basis, t_op, steps);
  const CMatrix model = expm(t_op * dissipator_superop(sep.gamma_s.gamma, gen.basis)) * unitary_superop(u);
  return max_abs(evolution_superop(gen, t_op, steps) - model);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ScalingResult {
  std::vector<double> strengths;
  std::vector<double> residuals;
  double slope = 0.0;
};

/// Residual of the first-order model against noise strength for a family of
/// generators indexed by Tr Gamma; zero strength is skipped.
inline ScalingResult scaling_fit(const std::function<LindbladGenerator(double)>& family,
                                 const std::vector<double>& strengths, double t_op, int steps) {
  ScalingResult r;
  for (double s : strengths) {
    if (s <= 0.0) continue;
    r.strengths.push_back(s);
    r.residuals.push_back(superop_residual(family(s), t_op, steps));
  }
  r.slope = loglog_slope(r.strengths, r.residuals);
  return r;
}

/// Rotating drive (J = 1) with its dephasing noise scaled to total strength s.
inline LindbladGenerator fig1_family(double strength) { return fig1_generator(2.0 * strength, 1.0); }

/// H = XX + ZI with dephasing on both qubits, total strength s.
inline LindbladGenerator two_qubit_family(double strength) {
  const OperatorBasis b = pauli_basis(2);
  CVector h = CVector::Zero(15);
  h(b.index_of("XX")) = 1.0;
  h(b.index_of("ZI")) = 1.0;
  const CMatrix g = dephasing_rates(b, "ZI", strength) + dephasing_rates(b, "IZ", strength);
  return LindbladGenerator{b, HamiltonianSchedule::constant(h, 1.0), NoiseSchedule::constant(g)};
}

inline const std::vector<double>& scaling_strengths() {
  static const std::vector<double> kStrengths = {0.02, 0.05, 0.1, 0.2};
  return kStrengths;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::array<double, 4>& closed_form_angles() {
  static const std::array<double, 4> kAngles = {0.1, 1.0, kPi, 5.0};
  return kAngles;
}

inline ValidationReport closed_form_suite(double gamma = 0.2, double energy_scale = 1.0) {
  detail::Stopwatch total;
  ValidationReport rep;
  rep.name = "closed_form";
  const OperatorBasis b = pauli_basis(1);
  const StructureTensor g = structure_tensor(b);
  const CMatrix deph = dephasing_rates(b, "Z", gamma);
  const CMatrix damp = damping_rates(b, 0, gamma);
  auto omega_for = [&](const LindbladGenerator& gen) { return omega_of(gen.schedule, 0.0, g); };

  for (double theta : closed_form_angles()) {
    const std::string at = "@theta=" + format_double(theta);
    {
      detail::Stopwatch sw;
      const auto gen = x_drive_generator(energy_scale, theta, deph);
      const auto r = separated_spectral(gen, gen.schedule.t_op);
      rep.match("dephasing_matrix" + at, ReferenceKind::closed_form, max_abs(r.gamma_s.gamma - dephasing_closed_form(gamma, theta)), 0.0, 1e-8, sw.seconds());
      const RVector ev = r.gamma_s.spectrum();
      const auto ref = dephasing_closed_form_rates(gamma, theta);
      const double err = std::max({std::abs(ev(0)), std::abs(ev(1) - std::min(ref[0], ref[1])), std::abs(ev(2) - std::max(ref[0], ref[1]))});
      rep.match("dephasing_rates" + at, ReferenceKind::closed_form, err, 0.0, 1e-8);
    }
    {
      detail::Stopwatch sw;
      const auto gen = x_drive_generator(energy_scale, theta, damp);
      const RVector ev = separated_spectral(gen, gen.schedule.t_op).gamma_s.spectrum();
      const auto ref = damping_closed_form_rates(gamma, theta);
      double err = 0.0;
      for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(ev(k) - ref[static_cast<std::size_t>(k)]));
      rep.match("damping_rates" + at, ReferenceKind::closed_form, err, 0.0, 1e-8, sw.seconds());
    }
  }

  {
    detail::Stopwatch sw;
    CVector h(3);
    h << 0.3, -0.7, 0.2;
    const CMatrix dep = depolarizing_rates(b, 0.05);
    const auto gen = LindbladGenerator{b, HamiltonianSchedule::constant(h, 2.0), NoiseSchedule::constant(dep)};
    rep.match("depolarizing_invariance", ReferenceKind::closed_form,
              max_abs(separated_spectral(gen, 2.0).gamma_s.gamma - dep), 0.0, 1e-10, sw.seconds());
    rep.match("depolarizing_lambda", ReferenceKind::closed_form, global_depolarizing_lambda(0.1, 2, 1.0),
              1.0 - std::exp(-0.4), 1e-15);
  }

  {
    const auto gen = x_drive_generator(energy_scale, 1.0, deph);
    const CMatrix omega = omega_for(gen);
    const OperatorBasis gm = gell_mann_basis(3);
    const CMatrix lambda7 = gm.ops[6] / std::sqrt(1.5);
    rep.match("omega_x_drive", ReferenceKind::closed_form, max_abs(omega + 2.0 * energy_scale * lambda7), 0.0, 1e-12);

    CMatrix ss_ref = CMatrix::Zero(3, 3);
    ss_ref(1, 1) = ss_ref(2, 2) = 0.25 * gamma;
    rep.match("dephasing_steady_state", ReferenceKind::closed_form, max_abs(steady_state(deph, omega).gamma - ss_ref), 0.0, 1e-9);

    const RVector ss_damp = steady_state(damp, omega).spectrum();
    const double damp_err = std::max({std::abs(ss_damp(0) - gamma / 8.0), std::abs(ss_damp(1) - gamma / 8.0),
                                      std::abs(ss_damp(2) - gamma / 4.0)});
    rep.match("damping_steady_state", ReferenceKind::limit, damp_err, 0.0, 1e-9);

    for (double theta : {kPi, 2.0 * kPi}) {
      double worst = 0.0;
      for (const auto& c : residual_components(deph, omega, energy_scale, theta)) worst = std::max(worst, c.amplitude);
      rep.match("dephasing_residual@theta=" + format_double(theta), ReferenceKind::closed_form, worst, 0.0, 1e-9);
    }

    const auto modes = dephasing_xi_modes();
    for (int k = 0; k < 2; ++k) {
      const double eta = k == 0 ? 2.0 : -2.0;
      const CMatrix lhs = xi_apply(omega, modes[static_cast<std::size_t>(k)]);
      const CMatrix rhs = 2.0 * energy_scale * kI * eta * modes[static_cast<std::size_t>(k)];
      const std::string tag = k == 0 ? "+" : "-";
      rep.match("dephasing_mode_eigen" + tag, ReferenceKind::closed_form, max_abs(lhs - rhs), 0.0, 1e-12);
      const cplx coupling = mode_coupling(modes[static_cast<std::size_t>(k)], deph);
      rep.match("dephasing_mode_coupling" + tag, ReferenceKind::closed_form,
                std::abs(coupling - cplx(-0.25 * gamma, 0.0)), 0.0, 1e-12);
    }
  }

  for (double theta : {0.5, 1.0, 2.0, kPi}) {
    detail::Stopwatch sw;
    const RVector ev = choi_of_K(omega_for(x_drive_generator(energy_scale, theta, deph)), theta / (2.0 * energy_scale)).eigenvalues;
    const auto ref = choi_closed_form(theta);
    double err = 0.0;
    for (Eigen::Index k = 0; k < ev.size() - 3; ++k) err = std::max(err, std::abs(ev(k)));
    for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(ev(ev.size() - 3 + k) - ref[static_cast<std::size_t>(k)]));
    rep.match("choi_spectrum@theta=" + format_double(theta), ReferenceKind::closed_form, err, 0.0, 1e-8, sw.seconds());
  }
  {
    // 1 - sin(theta)/theta is the eigenvalue that reaches 1 at theta = pi.
    const RVector ev = choi_of_K(omega_for(x_drive_generator(energy_scale, kPi, deph)), kPi / (2.0 * energy_scale)).eigenvalues;
    double nearest = ev(0);
    for (Eigen::Index k = 1; k < ev.size(); ++k)
      if (std::abs(ev(k) - 1.0) < std::abs(nearest - 1.0)) nearest = ev(k);
    rep.match("choi_lambda0@theta=pi", ReferenceKind::limit, nearest, 1.0, 1e-8);
  }

  {
    detail::Stopwatch sw;
    const GateSpec spec = hadamard_toy_spec(gamma);
    const GateNoise gn = compile_per_op(spec);
    rep.match("hadamard_gate_noise", ReferenceKind::closed_form, max_abs(gn.gamma_n.gamma - hadamard_reference(gamma)), 0.0, 1e-6, sw.seconds());
    rep.match("hadamard_unitary", ReferenceKind::closed_form, phase_insensitive_distance(gn.u, hadamard_reference_unitary()), 0.0, 1e-8);
    CMatrix yl = CMatrix::Zero(3, 3);
    yl(1, 1) = yl(2, 2) = 0.25 * gamma;
    yl(1, 2) = -0.25 * kI * gamma;
    yl(2, 1) = 0.25 * kI * gamma;
    rep.match("damping_commuted_past_y", ReferenceKind::closed_form, max_abs(gn.segments[0].gamma_l.gamma - yl), 0.0, 1e-9);
  }
  rep.runtime_s = total.seconds();
  return rep;
}

/// Rotating-drive experiment: calibrated threshold at gamma = 0.25 and
/// monotone growth of the deviation with gamma.
inline ValidationReport fig1_suite(int grid = 2000) {
  detail::Stopwatch total;
  ValidationReport rep;
  rep.name = "fig1";
  auto run = [&](double gamma) { return fig1_experiment(gamma, 4.0 / gamma, grid); };
  const Fig1Result r005 = run(0.05), r025 = run(0.25), r1 = run(1.0), r25 = run(2.5);
  const double threshold = 3.0 * r005.max_deviation;
  rep.at_most("fig1_gamma=0.25_below_calibrated_threshold", ReferenceKind::calibrated, r025.max_deviation, threshold);
  rep.at_least("fig1_monotone_0.25_to_1", ReferenceKind::calibrated, r1.max_deviation, r025.max_deviation);
  rep.at_least("fig1_monotone_1_to_2.5", ReferenceKind::calibrated, r25.max_deviation, r1.max_deviation);
  rep.at_least("fig1_gamma=2.5_over_0.25_ratio", ReferenceKind::calibrated, r25.max_deviation / r025.max_deviation, 10.0);
  const Fig1Result tiny = fig1_experiment(1e-9, 10.0, grid);
  rep.at_most("fig1_vanishing_noise_floor", ReferenceKind::limit, tiny.max_deviation, 1e-7);
  rep.runtime_s = total.seconds();
  return rep;
}

inline ValidationReport scaling_suite(int steps = 2048) {
  detail::Stopwatch total;
  ValidationReport rep;
  rep.name = "scaling";
  {
    detail::Stopwatch sw;
    const auto r = scaling_fit(fig1_family, scaling_strengths(), 1.0, steps);
    rep.match("slope_rotating_drive", ReferenceKind::scaling, r.slope, 2.0, 0.3, sw.seconds());
  }
  {
    detail::Stopwatch sw;
    const auto r = scaling_fit(two_qubit_family, scaling_strengths(), 1.0, steps);
    rep.match("slope_two_qubit", ReferenceKind::scaling, r.slope, 2.0, 0.3, sw.seconds());
  }
  rep.runtime_s = total.seconds();
  return rep;
}

}  // namespace sepnoise
