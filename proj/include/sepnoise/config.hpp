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

/// Experiment configuration: a line-oriented format with [sections] and
/// `key = value` lines. Numeric values are coefficient expressions; they may
/// be written bare or quoted. See docs/config.md for the full grammar.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"
#include "sepnoise/expr.hpp"
#include "sepnoise/gate_compiler.hpp"
#include "sepnoise/lindblad.hpp"
#include "sepnoise/noise_presets.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/superoperators.hpp"

namespace sepnoise {

struct ConfigTerm {
  std::string label;
  std::string expr;

  bool operator==(const ConfigTerm&) const = default;
};

/// kind is one of dephasing, damping, depolarizing, custom; args are the
/// remaining comma-separated fields (labels or expressions).
struct ConfigChannel {
  std::string kind;
  std::vector<std::string> args;

  bool operator==(const ConfigChannel&) const = default;
};

struct ConfigOp {
  std::string name;
  std::string duration;
  std::string idle_after = "0";
  std::vector<ConfigTerm> terms;
  std::vector<ConfigChannel> channels;  // empty: use the hardware noise

  bool operator==(const ConfigOp&) const = default;
};

struct ExperimentConfig {
  // [system]
  int qubits = 0;  // 0 when `dim` is used instead
  int dim = 0;
  std::string basis = "pauli";
  std::string t_op = "1";
  int steps = kDefaultPropagatorSteps;
  std::string energy_scale = "1";
  // [params], in declaration order
  std::vector<std::pair<std::string, std::string>> params;
  // [hamiltonian], [noise]
  std::vector<ConfigTerm> hamiltonian;
  std::vector<ConfigChannel> noise;
  // [op NAME] sections in order
  std::vector<ConfigOp> ops;
  // [output]
  std::vector<std::string> observables;
  int grid = 200;
  std::string t_max;  // empty: t_op
  std::string initial_state = "0";
  // [sweep]
  std::string sweep_parameter = "theta";
  std::string sweep_min;
  std::string sweep_max;
  int sweep_points = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Field {
  std::string text;
  bool quoted = false;
  std::size_t offset = 0;
};

/// Splits a value on commas outside double quotes; `base` is the byte offset
/// of `value` within the file.
inline std::vector<Field> split_fields(std::string_view value, std::size_t base) {
  std::vector<Field> out;
  std::size_t i = 0;
  for (;;) {
    while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
    Field f;
    f.offset = base + i;
    if (i < value.size() && value[i] == '"') {
      const std::size_t close = value.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated string", base + i);
      f.text = std::string(value.substr(i + 1, close - i - 1));
      f.quoted = true;
      i = close + 1;
      while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
      if (i < value.size() && value[i] != ',') throw ParseError("expected ',' after string", base + i);
    } else {
      const std::size_t comma = value.find(',', i);
      const std::size_t end = comma == std::string_view::npos ? value.size() : comma;
      f.text = trim(value.substr(i, end - i));
      if (f.text.find('"') != std::string::npos) throw ParseError("stray quote", base + i + f.text.find('"'));
      i = end;
    }
    out.push_back(std::move(f));
    if (i >= value.size()) break;
    ++i;  // skip ','
  }
  return out;
}

/// Strips a trailing comment ('#' outside quotes).
inline std::string_view strip_comment(std::string_view line) {
  bool in_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

inline bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline int parse_int(const Field& f, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(f.text, &used);
    if (used != f.text.size()) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": expected an integer", f.offset);
  }
}

class ConfigParser {
 public:
  explicit ConfigParser(std::string_view text) : text_(text) {}

  ExperimentConfig parse() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      line(text_.substr(pos, eol - pos), pos);
      if (eol == text_.size()) break;
      pos = eol + 1;
    }
    return cfg_;
  }

 private:
  std::string_view text_;
  ExperimentConfig cfg_;
  std::string section_;
  std::set<std::string> params_;
  std::set<std::string> seen_;  // section.key for single-valued keys

  /// Canonical form of an expression field; parameters must be declared earlier.
  std::string expr(const Field& f) {
    try {
      return parse_expr(f.text, params_).str();
    } catch (const ParseError& e) {
      // Re-anchor the expression offset to the file.
      const std::size_t local = e.offset();
      const std::string msg = e.what();
      const std::string plain = msg.substr(0, msg.rfind(" (at byte"));
      const std::size_t at = f.offset + (f.quoted ? 1 : 0) + local;
      if (dynamic_cast<const NameError*>(&e)) throw NameError(plain, at);
      throw ParseError(plain, at);
    }
  }

  void expect_count(const std::vector<Field>& fields, std::size_t lo, std::size_t hi, const std::string& key,
                    std::size_t at) {
    if (fields.size() < lo || fields.size() > hi)
      throw ParseError("'" + key + "' takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                           " field(s)",
                       at);
  }

  void once(const std::string& key, std::size_t at) {
    if (!seen_.insert(section_ + "." + key).second) throw ParseError("duplicate key '" + key + "'", at);
  }

  ConfigTerm term(const std::vector<Field>& f, std::size_t at) {
    expect_count(f, 2, 2, "term", at);
    if (f[0].text.empty()) throw ParseError("term: missing operator label", f[0].offset);
    return {f[0].text, expr(f[1])};
  }

  ConfigChannel channel(const std::vector<Field>& f, std::size_t at) {
    if (f.empty() || f[0].text.empty()) throw ParseError("channel: missing kind", at);
    ConfigChannel c;
    c.kind = f[0].text;
    if (c.kind == "dephasing") {
      expect_count(f, 3, 3, "channel = dephasing", at);
      c.args = {f[1].text, expr(f[2])};
    } else if (c.kind == "damping") {
      expect_count(f, 3, 3, "channel = damping", at);
      parse_int(f[1], "damping qubit");
      c.args = {f[1].text, expr(f[2])};
    } else if (c.kind == "depolarizing") {
      expect_count(f, 2, 2, "channel = depolarizing", at);
      c.args = {expr(f[1])};
    } else if (c.kind == "custom") {
      expect_count(f, 4, 5, "channel = custom", at);
      c.args = {f[1].text, f[2].text, expr(f[3])};
      c.args.push_back(f.size() == 5 ? expr(f[4]) : "0");
    } else {
      throw ParseError("unknown channel kind '" + c.kind + "'", f[0].offset);
    }
    return c;
  }

  void line(std::string_view raw, std::size_t base) {
    const std::string_view body = strip_comment(raw);
    const std::string content = trim(body);
    if (content.empty()) return;
    std::size_t lead = 0;
    while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
    const std::size_t at = base + lead;

    if (content.front() == '[') {
      if (content.back() != ']') throw ParseError("expected ']' to close the section header", at + content.size());
      const std::string name = trim(std::string_view(content).substr(1, content.size() - 2));
      if (name.rfind("op ", 0) == 0 || name.rfind("op\t", 0) == 0) {
        const std::string op = trim(std::string_view(name).substr(3));
        if (!valid_name(op)) throw ParseError("invalid operation name '" + op + "'", at + 1);
        for (const auto& o : cfg_.ops)
          if (o.name == op) throw ParseError("duplicate operation '" + op + "'", at + 1);
        cfg_.ops.push_back(ConfigOp{op, "", "0", {}, {}});
        section_ = "op " + op;
        return;
      }
      static const std::set<std::string> kSections = {"system", "params", "hamiltonian", "noise", "output", "sweep"};
      if (!kSections.count(name)) throw ParseError("unknown section '" + name + "'", at + 1);
      section_ = name;
      return;
    }

    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", at);
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::size_t value_start = eq + 1;
    const std::string_view value = std::string_view(content).substr(value_start);
    const std::vector<Field> f = split_fields(value, at + value_start);
    if (section_.empty()) throw ParseError("key '" + key + "' outside of any section", at);
    if (key.empty()) throw ParseError("missing key", at);

    auto single = [&]() -> const Field& {
      expect_count(f, 1, 1, key, at);
      once(key, at);
      return f[0];
    };
    auto unknown = [&]() { throw ParseError("unknown key '" + key + "' in [" + section_ + "]", at); };

    if (section_ == "system") {
      if (key == "qubits") cfg_.qubits = parse_int(single(), "qubits");
      else if (key == "dim") cfg_.dim = parse_int(single(), "dim");
      else if (key == "basis") cfg_.basis = single().text;
      else if (key == "t_op") cfg_.t_op = expr(single());
      else if (key == "steps") cfg_.steps = parse_int(single(), "steps");
      else if (key == "energy_scale") cfg_.energy_scale = expr(single());
      else unknown();
    } else if (section_ == "params") {
      if (!valid_name(key) || key == "t" || key == "pi") throw ParseError("invalid parameter name '" + key + "'", at);
      once(key, at);
      expect_count(f, 1, 1, key, at);
      const std::string value_expr = expr(f[0]);
      params_.insert(key);
      cfg_.params.emplace_back(key, value_expr);
    } else if (section_ == "hamiltonian") {
      if (key != "term") unknown();
      cfg_.hamiltonian.push_back(term(f, at));
    } else if (section_ == "noise") {
      if (key != "channel") unknown();
      cfg_.noise.push_back(channel(f, at));
    } else if (section_.rfind("op ", 0) == 0) {
      ConfigOp& op = cfg_.ops.back();
      if (key == "duration") op.duration = expr(single());
      else if (key == "idle_after") op.idle_after = expr(single());
      else if (key == "term") op.terms.push_back(term(f, at));
      else if (key == "channel") op.channels.push_back(channel(f, at));
      else unknown();
    } else if (section_ == "output") {
      if (key == "observable") {
        expect_count(f, 1, 1, key, at);
        cfg_.observables.push_back(f[0].text);
      } else if (key == "grid") {
        cfg_.grid = parse_int(single(), "grid");
      } else if (key == "t_max") {
        cfg_.t_max = expr(single());
      } else if (key == "initial_state") {
        cfg_.initial_state = single().text;
      } else {
        unknown();
      }
    } else if (section_ == "sweep") {
      if (key == "parameter") cfg_.sweep_parameter = single().text;
      else if (key == "min") cfg_.sweep_min = expr(single());
      else if (key == "max") cfg_.sweep_max = expr(single());
      else if (key == "points") cfg_.sweep_points = parse_int(single(), "points");
      else unknown();
    }
  }
};

}  // namespace detail

inline ExperimentConfig parse_config(std::string_view text) { return detail::ConfigParser(text).parse(); }

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Canonical text of a configuration; parse_config(print_config(c)) == c.
inline std::string print_config(const ExperimentConfig& c) {
  std::ostringstream os;
  auto q = [](const std::string& e) { return "\"" + e + "\""; };
  auto channel = [&](const ConfigChannel& ch) {
    os << "channel = " << ch.kind;
    if (ch.kind == "dephasing" || ch.kind == "damping") os << ", " << ch.args[0] << ", " << q(ch.args[1]);
    if (ch.kind == "depolarizing") os << ", " << q(ch.args[0]);
    if (ch.kind == "custom") os << ", " << ch.args[0] << ", " << ch.args[1] << ", " << q(ch.args[2]) << ", " << q(ch.args[3]);
    os << "\n";
  };
  if (!c.params.empty()) {
    os << "[params]\n";
    for (const auto& [k, v] : c.params) os << k << " = " << q(v) << "\n";
    os << "\n";
  }
  os << "[system]\n";
  if (c.qubits) os << "qubits = " << c.qubits << "\n";
  if (c.dim) os << "dim = " << c.dim << "\n";
  os << "basis = " << c.basis << "\n";
  os << "t_op = " << q(c.t_op) << "\n";
  os << "steps = " << c.steps << "\n";
  os << "energy_scale = " << q(c.energy_scale) << "\n";
  if (!c.hamiltonian.empty()) {
    os << "\n[hamiltonian]\n";
    for (const auto& t : c.hamiltonian) os << "term = " << t.label << ", " << q(t.expr) << "\n";
  }
  if (!c.noise.empty()) {
    os << "\n[noise]\n";
    for (const auto& ch : c.noise) channel(ch);
  }
  for (const auto& op : c.ops) {
    os << "\n[op " << op.name << "]\n";
    if (!op.duration.empty()) os << "duration = " << q(op.duration) << "\n";
    os << "idle_after = " << q(op.idle_after) << "\n";
    for (const auto& t : op.terms) os << "term = " << t.label << ", " << q(t.expr) << "\n";
    for (const auto& ch : op.channels) channel(ch);
  }
  os << "\n[output]\n";
  for (const auto& o : c.observables) os << "observable = " << o << "\n";
  os << "grid = " << c.grid << "\n";
  if (!c.t_max.empty()) os << "t_max = " << q(c.t_max) << "\n";
  os << "initial_state = " << c.initial_state << "\n";
  if (c.sweep_points || !c.sweep_min.empty() || !c.sweep_max.empty()) {
    os << "\n[sweep]\n";
    os << "parameter = " << c.sweep_parameter << "\n";
    if (!c.sweep_min.empty()) os << "min = " << q(c.sweep_min) << "\n";
    if (!c.sweep_max.empty()) os << "max = " << q(c.sweep_max) << "\n";
    os << "points = " << c.sweep_points << "\n";
  }
  return os.str();
}

/// Command-line overrides applied while resolving a configuration.
struct Overrides {
  std::optional<double> theta;  // sets t_op = theta / (2 energy_scale)
  std::optional<double> gamma;  // sets the parameter `gamma`
  std::optional<int> steps;
  std::map<std::string, double> params;
};

/// A configuration with every expression bound and every label resolved.
struct Experiment {
  OperatorBasis basis;
  std::map<std::string, double> params;
  double t_op = 0.0;
  double energy_scale = 1.0;
  int steps = kDefaultPropagatorSteps;
  LindbladGenerator generator;
  std::optional<GateSpec> gate;
  std::vector<std::pair<std::string, CMatrix>> observables;
  int grid = 200;
  double t_max = 0.0;
  DensityMatrix rho0;
  std::string sweep_parameter;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_points = 0;

  double theta() const { return 2.0 * energy_scale * t_op; }
};

namespace detail {

inline double constant_value(const std::string& text, const std::map<std::string, double>& params, const char* what) {
  const CoeffExpr e = parse_expr(text, [&] {
    std::set<std::string> names;
    for (const auto& kv : params) names.insert(kv.first);
    return names;
  }());
  if (e.depends_on_t()) throw ConfigError(std::string(what) + " must not depend on t");
  return e.bind(params).eval(0.0);
}

inline std::set<std::string> names_of(const std::map<std::string, double>& params) {
  std::set<std::string> names;
  for (const auto& kv : params) names.insert(kv.first);
  return names;
}

inline int label_index(const OperatorBasis& basis, const std::string& label) {
  const int p = basis.index_of(label);
  if (p < 0) throw ConfigError("unknown operator label '" + label + "' for basis " + basis.label());
  return p;
}

inline HamiltonianSchedule build_schedule(const OperatorBasis& basis, const std::vector<ConfigTerm>& terms,
                                          const std::map<std::string, double>& params, double duration) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  std::vector<std::pair<int, CoeffExpr>> bound;
  bool timed = false;
  for (const auto& t : terms) {
    CoeffExpr e = parse_expr(t.expr, names_of(params)).bind(params);
    timed = timed || e.depends_on_t();
    bound.emplace_back(label_index(basis, t.label), std::move(e));
  }
  if (!timed) {
    CVector h = CVector::Zero(n);
    for (const auto& [p, e] : bound) h(p) += e.eval(0.0);
    return HamiltonianSchedule::constant(h, duration);
  }
  return HamiltonianSchedule::expression(
      [bound, n](double t) {
        CVector h = CVector::Zero(n);
        for (const auto& [p, e] : bound) h(p) += e.eval(t);
        return h;
      },
      n, duration);
}

inline NoiseSchedule build_noise(const OperatorBasis& basis, const std::vector<ConfigChannel>& channels,
                                 const std::map<std::string, double>& params) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  // Each channel is a fixed matrix times a scalar expression (two for custom entries).
  struct Piece {
    CMatrix unit;
    CoeffExpr scale;
  };
  std::vector<Piece> pieces;
  const auto names = names_of(params);
  auto bind = [&](const std::string& text) { return parse_expr(text, names).bind(params); };
  for (const auto& ch : channels) {
    if (ch.kind == "dephasing") {
      label_index(basis, ch.args[0]);
      pieces.push_back({dephasing_rates(basis, ch.args[0], 1.0), bind(ch.args[1])});
    } else if (ch.kind == "damping") {
      const int qubit = std::stoi(ch.args[0]);
      try {
        pieces.push_back({damping_rates(basis, qubit, 1.0), bind(ch.args[1])});
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("damping channel: ") + e.what());
      }
    } else if (ch.kind == "depolarizing") {
      pieces.push_back({depolarizing_rates(basis, 1.0), bind(ch.args[0])});
    } else if (ch.kind == "custom") {
      const int r = label_index(basis, ch.args[0]);
      const int c = label_index(basis, ch.args[1]);
      CMatrix re = CMatrix::Zero(n, n), im = CMatrix::Zero(n, n);
      re(r, c) += 1.0;
      im(r, c) += kI;
      if (r != c) {
        re(c, r) += 1.0;
        im(c, r) -= kI;
      } else if (bind(ch.args[3]).depends_on_t() || bind(ch.args[3]).eval(0.0) != 0.0) {
        throw ConfigError("custom channel: a diagonal entry must be real");
      }
      pieces.push_back({re, bind(ch.args[2])});
      pieces.push_back({im, bind(ch.args[3])});
    } else {
      throw ConfigError("unknown channel kind '" + ch.kind + "'");
    }
  }
  const bool timed = std::any_of(pieces.begin(), pieces.end(), [](const Piece& p) { return p.scale.depends_on_t(); });
  auto at = [pieces, n](double t) {
    CMatrix g = CMatrix::Zero(n, n);
    for (const auto& p : pieces) g += p.scale.eval(t) * p.unit;
    return g;
  };
  return timed ? NoiseSchedule::time_dependent(at) : NoiseSchedule::constant(at(0.0));
}

}  // namespace detail

inline OperatorBasis make_basis(const ExperimentConfig& c) {
  if (c.basis == "pauli") {
    if (c.qubits <= 0) throw ConfigError("[system] basis = pauli needs qubits >= 1");
    return pauli_basis(c.qubits);
  }
  if (c.basis == "gell_mann") {
    const int d = c.dim ? c.dim : (c.qubits ? (1 << c.qubits) : 0);
    if (d < 2) throw ConfigError("[system] basis = gell_mann needs dim >= 2");
    return gell_mann_basis(d);
  }
  throw ConfigError("[system] unknown basis '" + c.basis + "' (expected pauli or gell_mann)");
}

/// Binds parameters, applies overrides and builds the generator, the optional
/// gate and the output settings.
inline Experiment resolve(const ExperimentConfig& c, const Overrides& ov = {}) {
  Experiment x;
  try {
    x.basis = make_basis(c);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [k, v] : c.params) {
    x.params[k] = detail::constant_value(v, x.params, "parameter");
    if (const auto it = ov.params.find(k); it != ov.params.end()) x.params[k] = it->second;
    if (k == "gamma" && ov.gamma) x.params[k] = *ov.gamma;
  }
  if (ov.gamma && !x.params.count("gamma")) throw ConfigError("--gamma given but the config has no parameter 'gamma'");
  for (const auto& kv : ov.params)
    if (!x.params.count(kv.first)) throw ConfigError("override for undeclared parameter '" + kv.first + "'");

  x.energy_scale = detail::constant_value(c.energy_scale, x.params, "energy_scale");
  if (!(x.energy_scale > 0.0)) throw ConfigError("energy_scale must be > 0");
  x.t_op = ov.theta ? *ov.theta / (2.0 * x.energy_scale) : detail::constant_value(c.t_op, x.params, "t_op");
  if (!(x.t_op > 0.0)) throw ConfigError("t_op must be > 0");
  x.steps = ov.steps.value_or(c.steps);
  if (x.steps < 1) throw ConfigError("steps must be >= 1");

  x.t_max = c.t_max.empty() ? x.t_op : detail::constant_value(c.t_max, x.params, "t_max");
  if (!(x.t_max > 0.0)) throw ConfigError("t_max must be > 0");
  const double horizon = std::max(x.t_op, x.t_max);
  const Eigen::Index n = static_cast<Eigen::Index>(x.basis.size());
  const NoiseSchedule hardware = c.noise.empty() ? NoiseSchedule::constant(CMatrix::Zero(n, n))
                                                 : detail::build_noise(x.basis, c.noise, x.params);
  x.generator = LindbladGenerator{x.basis, detail::build_schedule(x.basis, c.hamiltonian, x.params, horizon), hardware};

  if (!c.ops.empty()) {
    GateSpec spec{x.basis, {}, hardware};
    for (const auto& op : c.ops) {
      if (op.duration.empty()) throw ConfigError("[op " + op.name + "] needs a duration");
      const double duration = detail::constant_value(op.duration, x.params, "duration");
      const double idle = detail::constant_value(op.idle_after, x.params, "idle_after");
      if (!(duration > 0.0)) throw ConfigError("[op " + op.name + "] duration must be > 0");
      if (!(idle >= 0.0)) throw ConfigError("[op " + op.name + "] idle_after must be >= 0");
      GateOp g{op.name, detail::build_schedule(x.basis, op.terms, x.params, duration), std::nullopt, idle};
      if (!op.channels.empty()) g.noise = detail::build_noise(x.basis, op.channels, x.params);
      spec.ops.push_back(std::move(g));
    }
    x.gate = std::move(spec);
  }

  for (const auto& o : c.observables) x.observables.emplace_back(o, x.basis.ops[detail::label_index(x.basis, o)]);
  x.grid = c.grid;
  if (x.grid < 1) throw ConfigError("grid must be >= 1");
  if (c.initial_state == "mixed") {
    x.rho0 = DensityMatrix::maximally_mixed(x.basis.dim);
  } else {
    int k = -1;
    try {
      k = std::stoi(c.initial_state);
    } catch (const std::exception&) {
      throw ConfigError("initial_state must be a basis-state index or 'mixed'");
    }
    if (k < 0 || k >= x.basis.dim) throw ConfigError("initial_state index out of range");
    x.rho0 = DensityMatrix::basis_state(x.basis.dim, k);
  }
  x.sweep_parameter = c.sweep_parameter;
  x.sweep_points = c.sweep_points;
  if (c.sweep_points) {
    if (c.sweep_min.empty() || c.sweep_max.empty()) throw ConfigError("[sweep] needs min and max");
    x.sweep_min = detail::constant_value(c.sweep_min, x.params, "sweep min");
    x.sweep_max = detail::constant_value(c.sweep_max, x.params, "sweep max");
    if (x.sweep_parameter != "theta" && !x.params.count(x.sweep_parameter))
      throw ConfigError("[sweep] parameter '" + x.sweep_parameter + "' is neither theta nor a declared parameter");
  }
  return x;
}

}  // namespace sepnoise
