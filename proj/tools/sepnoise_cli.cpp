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


// sepnoise: command-line front end.
//
// Exit status: 0 on success, 1 when a numerical check or validation case
// fails, 2 for configuration and usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepnoise/sepnoise.hpp"

namespace {

using namespace sepnoise;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<double> theta;
  std::optional<double> gamma;
  std::optional<int> steps;
  std::string route = "auto";
  double tol = 1e-8;
  std::string suite = "all";
  std::string junit;
};

/// Raised when a check fails after the output has been produced.
struct CheckFailed {
  std::string message;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + o.out + "'");
  f << text;
}

Experiment load(const Options& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  Overrides ov;
  ov.theta = o.theta;
  ov.gamma = o.gamma;
  ov.steps = o.steps;
  return resolve(load_config(o.config), ov);
}

std::optional<SeparatedRoute> route_of(const Options& o) {
  if (o.route == "auto") return std::nullopt;
  return parse_route(o.route);
}

SeparatedRoute pick_route(const Options& o, const LindbladGenerator& gen) {
  return route_of(o).value_or(gen.time_dependent() ? SeparatedRoute::integral : SeparatedRoute::spectral);
}

CMatrix constant_omega(const Experiment& x) {
  if (x.generator.time_dependent())
    throw UnsupportedOperation("this subcommand needs a time-independent Hamiltonian and noise");
  return omega_of(x.generator.schedule, 0.0, structure_tensor(x.basis));
}

Json strength_check(double computed, double expected, double tol) {
  return Json{{"computed", computed},
              {"expected", expected},
              {"residual", std::abs(computed - expected)},
              {"pass", std::abs(computed - expected) <= tol}};
}

int cmd_separate(const Options& o) {
  const Experiment x = load(o);
  const SeparatedRoute route = pick_route(o, x.generator);
  const SeparatedNoiseResult r = separate(x.generator, x.t_op, route, x.steps);
  Json j = separated_to_json(r, x.basis.label(), x.energy_scale);
  const double expected = time_averaged_strength(x.generator, x.t_op, x.steps);
  j["strength_check"] = strength_check(r.strength, expected, o.tol);
  emit(o, dump_json(j));
  if (!j["strength_check"]["pass"].get<bool>()) throw CheckFailed{"Tr Gamma^S differs from the time-averaged strength"};
  return kExitOk;
}

int cmd_compile(const Options& o) {
  const Experiment x = load(o);
  if (!x.gate) throw ConfigError("compile needs at least one [op NAME] section");
  const GateNoise per_op = compile_per_op(*x.gate, route_of(o), x.steps);
  const GateNoise mono = compile_monolithic(*x.gate, x.steps);
  Json j = gate_noise_to_json(per_op, x.basis.label());
  j["monolithic_difference"] = max_abs(per_op.gamma_n.gamma - mono.gamma_n.gamma);
  j["strength_check"] = strength_check(per_op.gamma_n.strength(), gate_average_strength(*x.gate, x.steps), o.tol);
  emit(o, dump_json(j));
  if (!j["strength_check"]["pass"].get<bool>()) throw CheckFailed{"Tr Gamma^N differs from the averaged strength"};
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const Experiment x = load(o);
  if (x.observables.empty()) throw ConfigError("simulate needs at least one [output] observable");
  const SeparatedTrajectory traj = separated_trajectory(x.generator, x.rho0, x.t_max, x.grid);
  std::vector<std::string> header = {"t"};
  for (const auto& [name, op] : x.observables) {
    header.push_back(name + "_exact");
    header.push_back(name + "_separated");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row = {traj.times[k]};
    for (const auto& [name, op] : x.observables) {
      row.push_back(expectation(op, traj.exact[k]));
      row.push_back(expectation(op, traj.separated[k]));
    }
    rows.push_back(std::move(row));
  }
  std::ostringstream os;
  write_csv(os, header, rows);
  emit(o, os.str());
  return kExitOk;
}

/// Route agreement, Tr bookkeeping and positivity for one configured
/// experiment, plus the gate compilation when [op] sections exist.
ValidationReport validate_experiment(const Experiment& x, double tol) {
  ValidationReport rep;
  rep.name = "config";
  const auto integral = separated_integral(x.generator, x.t_op, x.steps);
  const auto ode = separated_ode(x.generator, x.t_op, x.steps);
  rep.match("integral_vs_ode", ReferenceKind::cross_check, max_abs(integral.gamma_s.gamma - ode.gamma_s.gamma), 0.0, tol);
  if (!x.generator.time_dependent()) {
    const auto spectral = separated_spectral(x.generator, x.t_op);
    rep.match("integral_vs_spectral", ReferenceKind::cross_check,
              max_abs(integral.gamma_s.gamma - spectral.gamma_s.gamma), 0.0, tol);
  }
  rep.match("strength_bookkeeping", ReferenceKind::cross_check, integral.strength,
            time_averaged_strength(x.generator, x.t_op, x.steps), tol);
  if (RateMatrix(x.generator.rates(0.0)).physical() && RateMatrix(x.generator.rates(x.t_op)).physical())
    rep.at_least("separated_min_eigenvalue", ReferenceKind::cross_check, integral.gamma_s.spectrum().minCoeff(),
                 -1e-9 * std::max(1.0, integral.strength));
  if (x.gate) {
    const GateNoise per_op = compile_per_op(*x.gate, std::nullopt, x.steps);
    const GateNoise mono = compile_monolithic(*x.gate, x.steps);
    rep.match("gate_per_op_vs_monolithic", ReferenceKind::cross_check,
              max_abs(per_op.gamma_n.gamma - mono.gamma_n.gamma), 0.0, tol);
    rep.match("gate_strength_bookkeeping", ReferenceKind::cross_check, per_op.gamma_n.strength(),
              gate_average_strength(*x.gate, x.steps), tol);
  }
  return rep;
}

int cmd_validate(const Options& o) {
  ValidationReport rep;
  if (!o.config.empty()) {
    rep = validate_experiment(load(o), o.tol);
  } else {
    rep.name = "builtin";
    if (o.suite == "all" || o.suite == "closed_form") rep.merge(closed_form_suite());
    if (o.suite == "all" || o.suite == "fig1") rep.merge(fig1_suite());
    if (o.suite == "all" || o.suite == "scaling") rep.merge(scaling_suite());
    if (rep.cases.empty()) throw ConfigError("unknown suite '" + o.suite + "'");
  }
  emit(o, dump_json(report_to_json(rep)));
  if (!o.junit.empty()) {
    std::ofstream f(o.junit, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + o.junit + "'");
    f << report_to_junit(rep);
  }
  std::cerr << rep.name << ": " << rep.cases.size() - rep.failures() << "/" << rep.cases.size() << " cases passed\n";
  for (const auto& c : rep.cases)
    if (!c.pass) std::cerr << "  FAIL " << c.id << ": computed " << format_double(c.computed) << ", reference "
                           << format_double(c.reference) << "\n";
  if (!rep.pass()) throw CheckFailed{"validation failed"};
  return kExitOk;
}

int cmd_steady(const Options& o) {
  const Experiment x = load(o);
  const CMatrix omega = constant_omega(x);
  const CMatrix gamma = x.generator.rates(0.0);
  const RateMatrix ss = steady_state(gamma, omega, x.basis.label());
  Json comps = Json::array();
  for (const auto& c : residual_components(gamma, omega, x.energy_scale, x.theta()))
    comps.push_back(Json{{"eta", c.eta},
                         {"coupling", c.coupling},
                         {"factor", Json{{"re", c.factor.real()}, {"im", c.factor.imag()}}},
                         {"amplitude", c.amplitude}});
  Json j{{"basis", x.basis.label()},
         {"theta", x.theta()},
         {"steady_state", rate_matrix_to_json(ss)},
         {"residual_components", comps}};
  emit(o, dump_json(j));
  return kExitOk;
}

int cmd_choi(const Options& o) {
  const Experiment x = load(o);
  const ChoiResult c = choi_of_K(constant_omega(x), x.t_op);
  Json j{{"basis", x.basis.label()},
         {"theta", x.theta()},
         {"eigenvalues", vector_to_json(c.eigenvalues)},
         {"min_eigenvalue", c.eigenvalues.minCoeff()},
         {"positive", c.eigenvalues.minCoeff() >= -o.tol}};
  emit(o, dump_json(j));
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  const ExperimentConfig cfg = load_config(o.config);
  Overrides base;
  base.gamma = o.gamma;
  base.steps = o.steps;
  const Experiment x0 = resolve(cfg, base);
  if (x0.sweep_points < 1) throw ConfigError("sweep needs a [sweep] section with points >= 1");
  std::vector<double> values;
  for (int k = 0; k < x0.sweep_points; ++k)
    values.push_back(x0.sweep_points == 1 ? x0.sweep_min
                                          : x0.sweep_min + (x0.sweep_max - x0.sweep_min) * k / (x0.sweep_points - 1));
  // Each point resolves its own experiment, so the workers share nothing.
  auto point = [&](double v) {
    Overrides ov = base;
    if (x0.sweep_parameter == "theta") ov.theta = v;
    else ov.params[x0.sweep_parameter] = v;
    const Experiment x = resolve(cfg, ov);
    const SeparatedNoiseResult r = separate(x.generator, x.t_op, pick_route(o, x.generator), x.steps);
    std::vector<double> row = {v, r.strength};
    const RVector ev = r.gamma_s.spectrum();
    row.insert(row.end(), ev.data(), ev.data() + ev.size());
    return row;
  };
  std::vector<std::future<std::vector<double>>> jobs;
  for (double v : values) jobs.push_back(std::async(std::launch::async, point, v));
  std::vector<std::vector<double>> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  std::vector<std::string> header = {x0.sweep_parameter, "strength"};
  for (std::size_t k = 0; k < x0.basis.size(); ++k) header.push_back("eig_" + std::to_string(k));
  std::ostringstream os;
  write_csv(os, header, rows);
  emit(o, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separated noise and gate noise from Lindblad master equations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool theta, bool gamma, bool route) {
    sub->add_option("--config", o.config, "Experiment configuration file");
    sub->add_option("--out", o.out, "Output path (default: stdout)");
    if (theta) sub->add_option("--theta", o.theta, "Operation angle; sets t_op = theta / (2 energy_scale)");
    if (gamma) sub->add_option("--gamma", o.gamma, "Value for the parameter 'gamma'");
    sub->add_option("--steps", o.steps, "Integration steps")->check(CLI::PositiveNumber);
    if (route)
      sub->add_option("--route", o.route, "Separated-noise route")
          ->check(CLI::IsMember({"auto", "integral", "ode", "spectral", "series"}));
    sub->add_option("--tol", o.tol, "Tolerance for numerical checks");
  };

  auto* separate_cmd = app.add_subcommand("separate", "Separated noise of one operation (JSON)");
  common(separate_cmd, true, true, true);
  auto* compile_cmd = app.add_subcommand("compile", "Gate noise of the [op] sequence (JSON)");
  common(compile_cmd, false, true, true);
  auto* simulate_cmd = app.add_subcommand("simulate", "Exact and separated observables over time (CSV)");
  common(simulate_cmd, false, true, false);
  auto* validate_cmd = app.add_subcommand("validate", "Run the built-in suites, or check one configuration");
  common(validate_cmd, true, true, false);
  validate_cmd->add_option("--suite", o.suite, "Built-in suite when no config is given")
      ->check(CLI::IsMember({"all", "closed_form", "fig1", "scaling"}));
  validate_cmd->add_option("--junit", o.junit, "Also write a JUnit XML summary");
  auto* steady_cmd = app.add_subcommand("steady", "Steady state and residual components (JSON)");
  common(steady_cmd, true, true, false);
  auto* choi_cmd = app.add_subcommand("choi", "Choi spectrum of the separation map (JSON)");
  common(choi_cmd, true, true, false);
  auto* sweep_cmd = app.add_subcommand("sweep", "Separated-noise spectrum over the [sweep] grid (CSV)");
  common(sweep_cmd, false, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*separate_cmd) return cmd_separate(o);
    if (*compile_cmd) return cmd_compile(o);
    if (*simulate_cmd) return cmd_simulate(o);
    if (*validate_cmd) return cmd_validate(o);
    if (*steady_cmd) return cmd_steady(o);
    if (*choi_cmd) return cmd_choi(o);
    if (*sweep_cmd) return cmd_sweep(o);
  } catch (const CheckFailed& e) {
    std::cerr << "sepnoise: " << e.message << "\n";
    return kExitCheckFailed;
  } catch (const NumericalError& e) {
    std::cerr << "sepnoise: numerical check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ParseError& e) {
    std::cerr << "sepnoise: " << o.config << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "sepnoise: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
