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

/// Compilation of a sequence of noisy operations into an ideal unitary U and
/// a single gate-noise rate matrix Gamma^N applied after it. Each operation's
/// separated noise is moved past every later coherent map,
///   Gamma^L_i = (M_N ... M_{i+1}) Gamma^S_i (M_N ... M_{i+1})^dagger,
/// and t_G Gamma^N = sum_i t_i Gamma^L_i.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/lindblad.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/separated_noise.hpp"
#include "sepnoise/superoperators.hpp"

namespace sepnoise {

struct GateOp {
  std::string label;
  HamiltonianSchedule schedule;       // duration is schedule.t_op
  std::optional<NoiseSchedule> noise; // defaults to the hardware noise
  double idle_after = 0.0;
};

struct GateSpec {
  OperatorBasis basis;
  std::vector<GateOp> ops;
  NoiseSchedule hardware_noise;

  void validate() const {
    if (ops.empty()) throw InvalidArgument("GateSpec: no operations");
    for (const auto& op : ops) {
      if (!(op.schedule.t_op > 0.0)) throw InvalidArgument("GateSpec: operation '" + op.label + "' has no duration");
      if (!(op.idle_after >= 0.0)) throw InvalidArgument("GateSpec: negative idle after '" + op.label + "'");
      if (static_cast<std::size_t>(op.schedule.size) != basis.size())
        throw InvalidArgument("GateSpec: operation '" + op.label + "' does not match the basis size");
    }
  }

  double total_duration() const {
    double t = 0.0;
    for (const auto& op : ops) t += op.schedule.t_op + op.idle_after;
    return t;
  }
};

/// One compiled segment: an operation or an idle interval.
struct GateSegment {
  std::string label;
  bool idle = false;
  double duration = 0.0;
  RateMatrix gamma_s;  // separated noise of the segment
  RateMatrix gamma_l;  // gamma_s commuted to the end of the gate
  CMatrix m;           // adjoint propagator of the segment
};

enum class CompileMethod { per_op, monolithic };

inline const char* to_string(CompileMethod m) { return m == CompileMethod::per_op ? "per_op" : "monolithic"; }

struct GateNoise {
  double t_g = 0.0;
  RateMatrix gamma_n;
  CMatrix u;
  CompileMethod method = CompileMethod::per_op;
  std::vector<GateSegment> segments;
};

/// Operations and idles as a flat list of (label, generator, idle flag).
inline std::vector<std::pair<GateSegment, LindbladGenerator>> gate_segments(const GateSpec& spec) {
  spec.validate();
  std::vector<std::pair<GateSegment, LindbladGenerator>> out;
  const Eigen::Index n = static_cast<Eigen::Index>(spec.basis.size());
  for (const auto& op : spec.ops) {
    GateSegment seg;
    seg.label = op.label;
    seg.duration = op.schedule.t_op;
    out.emplace_back(seg, LindbladGenerator{spec.basis, op.schedule, op.noise.value_or(spec.hardware_noise)});
    if (op.idle_after > 0.0) {
      GateSegment idle;
      idle.label = op.label + ":idle";
      idle.idle = true;
      idle.duration = op.idle_after;
      out.emplace_back(idle, LindbladGenerator{spec.basis,
                                               HamiltonianSchedule::constant(CVector::Zero(n), op.idle_after),
                                               spec.hardware_noise});
    }
  }
  return out;
}

/// Ordered product of the per-operation Schroedinger propagators.
inline CMatrix ideal_unitary(const GateSpec& spec, int steps = kDefaultPropagatorSteps) {
  spec.validate();
  CMatrix u = CMatrix::Identity(spec.basis.dim, spec.basis.dim);
  for (const auto& op : spec.ops) u = unitary_of(op.schedule, spec.basis, op.schedule.t_op, steps) * u;
  return u;
}

namespace detail {

inline SeparatedRoute default_route(const LindbladGenerator& gen) {
  return gen.time_dependent() ? SeparatedRoute::integral : SeparatedRoute::spectral;
}

inline void check_factorization(const CMatrix& m_total, const CMatrix& u, const OperatorBasis& basis) {
  const double res = max_abs(m_total - adjoint_matrix(u, basis));
  if (!(res <= 1e-8))
    throw NumericalError("gate compilation: coherent part does not factorize (residual " + std::to_string(res) + ")");
}

}  // namespace detail

/// Separated noise per segment, commuted left past all later segments and
/// averaged with weights t_i / t_G. Without an explicit route, time-independent
/// segments use the spectral route and the rest the integral route.
inline GateNoise compile_per_op(const GateSpec& spec, std::optional<SeparatedRoute> route = std::nullopt,
                                int steps = kDefaultPropagatorSteps) {
  auto segments = gate_segments(spec);
  const StructureTensor g = structure_tensor(spec.basis);
  const Eigen::Index n = static_cast<Eigen::Index>(spec.basis.size());
  GateNoise out;
  out.method = CompileMethod::per_op;
  for (auto& [seg, gen] : segments) {
    const SeparatedNoiseResult r = separate(gen, seg.duration, route.value_or(detail::default_route(gen)), steps);
    seg.gamma_s = r.gamma_s;
    seg.m = propagate_M(gen.schedule, seg.duration, g, steps).m;
    out.t_g += seg.duration;
  }
  CMatrix later = CMatrix::Identity(n, n);
  CMatrix acc = CMatrix::Zero(n, n);
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    GateSegment& seg = it->first;
    seg.gamma_l = RateMatrix(commute_left(seg.gamma_s.gamma, later), spec.basis.label());
    acc += seg.duration * seg.gamma_l.gamma;
    later = later * seg.m;
  }
  out.gamma_n = RateMatrix(acc / out.t_g, spec.basis.label());
  out.u = ideal_unitary(spec, steps);
  detail::check_factorization(later, out.u, spec.basis);
  for (auto& s : segments) out.segments.push_back(std::move(s.first));
  return out;
}

/// The whole gate as one piecewise generator: the Q equation is integrated
/// across all segments in order, with step boundaries on the segment edges.
inline GateNoise compile_monolithic(const GateSpec& spec, int steps = kDefaultPropagatorSteps) {
  auto segments = gate_segments(spec);
  const StructureTensor g = structure_tensor(spec.basis);
  const Eigen::Index n = static_cast<Eigen::Index>(spec.basis.size());
  GateNoise out;
  out.method = CompileMethod::monolithic;
  CMatrix q = CMatrix::Zero(n, n);
  CMatrix m_total = CMatrix::Identity(n, n);
  for (auto& [seg, gen] : segments) {
    q = separated_q_path(gen, seg.duration, steps, {}, q);
    seg.m = propagate_M(gen.schedule, seg.duration, g, steps).m;
    m_total = seg.m * m_total;
    out.t_g += seg.duration;
  }
  out.gamma_n = RateMatrix(q / out.t_g, spec.basis.label());
  out.u = ideal_unitary(spec, steps);
  detail::check_factorization(m_total, out.u, spec.basis);
  for (auto& s : segments) out.segments.push_back(std::move(s.first));
  return out;
}

/// Duration-weighted time average of Tr Gamma^D over all segments.
inline double gate_average_strength(const GateSpec& spec, int steps = kDefaultPropagatorSteps) {
  double acc = 0.0, total = 0.0;
  for (const auto& [seg, gen] : gate_segments(spec)) {
    acc += seg.duration * time_averaged_strength(gen, seg.duration, steps);
    total += seg.duration;
  }
  return acc / total;
}

struct GateFidelityReport {
  double trace_distance = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  CMatrix rho_exact;
  CMatrix rho_model;
};

/// Compares the full noisy evolution of rho0 with exp(t_G L_N) applied after
/// the ideal unitary.
inline GateFidelityReport gate_fidelity_check(const GateSpec& spec, const DensityMatrix& rho0, double tol,
                                              int steps = kDefaultPropagatorSteps) {
  rho0.validate();
  const GateNoise noise = compile_per_op(spec, std::nullopt, steps);
  CMatrix rho = rho0.rho;
  for (const auto& [seg, gen] : gate_segments(spec)) rho = evolve_matrix(gen, rho, seg.duration, default_evolve_steps(gen, seg.duration));
  const CMatrix coherent = noise.u * rho0.rho * noise.u.adjoint();
  const CMatrix channel = expm(noise.t_g * dissipator_superop(noise.gamma_n.gamma, spec.basis));
  const CMatrix model = unvec(channel * vec(coherent), spec.basis.dim);
  GateFidelityReport r;
  r.rho_exact = rho;
  r.rho_model = model;
  r.trace_distance = trace_distance(rho, model);
  r.tolerance = tol;
  r.pass = r.trace_distance <= tol;
  return r;
}

}  // namespace sepnoise
