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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

#ifndef SEPNOISE_CONFIGS
#define SEPNOISE_CONFIGS "configs"
#endif

namespace sepnoise {
namespace {

double eval(const std::string& text, double t = 0.0) { return parse_expr(text).eval(t); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t error_offset(const std::string& text, const std::set<std::string>& params = {}) {
  try {
    parse_expr(text, params);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

TEST(Expr, BasicExamples) {
  EXPECT_EQ(eval("sin(sqrt(2)*t)^2", 0.0), 0.0);
  EXPECT_EQ(eval("cos(t)", 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval("pi"), kPi);
  EXPECT_DOUBLE_EQ(eval("pow(2, 10)"), 1024.0);
  EXPECT_DOUBLE_EQ(eval("exp(1)"), std::exp(1.0));
  EXPECT_DOUBLE_EQ(eval("sqrt(2)*sqrt(2)"), std::sqrt(2.0) * std::sqrt(2.0));
}

TEST(Expr, TrigIdentityOnAGrid) {
  const CoeffExpr a = parse_expr("0.5*(1-cos(2*t))");
  const CoeffExpr b = parse_expr("sin(t)^2");
  for (int k = 0; k < 100; ++k) {
    const double t = 0.1 * k;
    EXPECT_NEAR(a.eval(t), b.eval(t), 1e-12) << "t=" << t;
  }
}

TEST(Expr, Precedence) {
  EXPECT_DOUBLE_EQ(eval("2+3*4"), 14.0);
  EXPECT_DOUBLE_EQ(eval("(2+3)*4"), 20.0);
  EXPECT_DOUBLE_EQ(eval("2*3^2"), 18.0);
  EXPECT_DOUBLE_EQ(eval("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(eval("8/2/2"), 2.0);
  EXPECT_DOUBLE_EQ(eval("8-2-2"), 4.0);
  EXPECT_DOUBLE_EQ(eval("2*-3"), -6.0);
  EXPECT_DOUBLE_EQ(eval("--2"), 2.0);
  // Unary minus binds tighter than ^.
  EXPECT_DOUBLE_EQ(eval("-2^2"), 4.0);
  EXPECT_DOUBLE_EQ(eval("0-2^2"), -4.0);
  EXPECT_DOUBLE_EQ(eval("2^-1"), 0.5);
  EXPECT_DOUBLE_EQ(eval("1e-3*1E3"), 1.0);
}

TEST(Expr, Parameters) {
  const CoeffExpr e = parse_expr("gamma*sin(omega*t)", {"gamma", "omega"});
  EXPECT_EQ(e.parameters(), (std::set<std::string>{"gamma", "omega"}));
  EXPECT_TRUE(e.depends_on_t());
  EXPECT_DOUBLE_EQ(e.eval(0.5, {{"gamma", 2.0}, {"omega", kPi}}), 2.0);
  const CoeffExpr bound = e.bind({{"gamma", 2.0}, {"omega", kPi}});
  EXPECT_TRUE(bound.parameters().empty());
  EXPECT_DOUBLE_EQ(bound.eval(0.5), 2.0);
  EXPECT_FALSE(parse_expr("3*pi").depends_on_t());
  EXPECT_THROW(e.bind({{"gamma", 1.0}}), NameError);
}

TEST(Expr, ErrorOffsetsPointIntoTheOffendingToken) {
  EXPECT_EQ(error_offset("1 + * 2"), 4u);
  EXPECT_EQ(error_offset("foo + 1"), 0u);
  EXPECT_EQ(error_offset("2*bar"), 2u);
  EXPECT_EQ(error_offset("sin(t"), 5u);
  EXPECT_EQ(error_offset("1 2"), 2u);
  EXPECT_EQ(error_offset("sin(1, 2)"), 5u);
  EXPECT_EQ(error_offset("3 $ 4"), 2u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_THROW(parse_expr("foo"), NameError);
  EXPECT_THROW(parse_expr("1 +"), ParseError);
  EXPECT_NO_THROW(parse_expr("foo", {"foo"}));
}

TEST(Expr, DeepNestingIsRejected) {
  std::string deep(500, '(');
  deep += "1" + std::string(500, ')');
  EXPECT_THROW(parse_expr(deep), ParseError);
}

/// Random expression text over the full grammar.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 11 : 3);
  auto sub = [&] { return random_expr(rng, depth - 1); };
  switch (pick(rng)) {
    case 0: return std::to_string(std::uniform_int_distribution<int>(0, 9)(rng));
    case 1: return "t";
    case 2: return "pi";
    case 3: return "0.25";
    case 4: return sub() + "+" + sub();
    case 5: return sub() + "-" + sub();
    case 6: return sub() + "*" + sub();
    case 7: return "(" + sub() + ")/(2+" + sub() + "^2)";
    case 8: return "-" + sub();
    case 9: return "sin(" + sub() + ")";
    case 10: return "cos(" + sub() + ")^2";
    default: return "pow(" + sub() + ", 2)";
  }
}

TEST(Expr, PrintParseRoundTrip) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 300; ++k) {
    const std::string text = random_expr(rng, 4);
    const CoeffExpr a = parse_expr(text);
    const std::string printed = a.str();
    const CoeffExpr b = parse_expr(printed);
    EXPECT_EQ(b.str(), printed) << text;
    for (double t : {0.0, 0.3, 1.7}) {
      const double va = a.eval(t), vb = b.eval(t);
      if (std::isfinite(va)) EXPECT_EQ(va, vb) << text << " -> " << printed;
    }
  }
}

TEST(Config, SampleFilesRoundTrip) {
  for (const char* name : {"dephasing.cfg", "damping.cfg", "hadamard.cfg", "fig1.cfg"}) {
    const std::string text = read_file(std::string(SEPNOISE_CONFIGS) + "/" + name);
    ASSERT_FALSE(text.empty()) << name;
    const ExperimentConfig a = parse_config(text);
    const std::string printed = print_config(a);
    const ExperimentConfig b = parse_config(printed);
    EXPECT_TRUE(a == b) << name;
    EXPECT_EQ(print_config(b), printed) << name;
    EXPECT_NO_THROW(resolve(a)) << name;
  }
}

const char* kMinimal = R"([params]
J = "2"
gamma = "0.1"

[system]
qubits = 1
energy_scale = "J"
t_op = "1"

[hamiltonian]
term = X, "-J"   # drive

[noise]
channel = dephasing, Z, "gamma"
channel = custom, X, Y, "0.01", "0.02"
)";

TEST(Config, ResolvesParametersAndOverrides) {
  const ExperimentConfig c = parse_config(kMinimal);
  const Experiment x = resolve(c);
  EXPECT_DOUBLE_EQ(x.energy_scale, 2.0);
  EXPECT_DOUBLE_EQ(x.t_op, 1.0);
  EXPECT_DOUBLE_EQ(x.theta(), 4.0);
  const CMatrix g = x.generator.rates(0.0);
  EXPECT_DOUBLE_EQ(g(2, 2).real(), 0.05);
  EXPECT_EQ(g(0, 1), cplx(0.01, 0.02));
  EXPECT_EQ(g(1, 0), cplx(0.01, -0.02));
  EXPECT_DOUBLE_EQ(x.generator.hamiltonian(0.0)(0, 1).real(), -2.0);

  Overrides ov;
  ov.theta = kPi;
  ov.gamma = 0.4;
  const Experiment y = resolve(c, ov);
  EXPECT_DOUBLE_EQ(y.t_op, kPi / 4.0);
  EXPECT_DOUBLE_EQ(y.generator.rates(0.0)(2, 2).real(), 0.2);
}

TEST(Config, TimeDependentTermsBuildTimeDependentSchedules) {
  const ExperimentConfig c = parse_config(read_file(std::string(SEPNOISE_CONFIGS) + "/fig1.cfg"));
  const Experiment x = resolve(c);
  EXPECT_TRUE(x.generator.time_dependent());
  EXPECT_DOUBLE_EQ(x.t_max, 16.0);
  const LindbladGenerator ref = fig1_generator(0.25, 16.0);
  for (double t : {0.0, 0.7, 3.1}) {
    EXPECT_LE(max_abs(x.generator.hamiltonian(t) - ref.hamiltonian(t)), 1e-15);
    EXPECT_LE(max_abs(x.generator.rates(t) - ref.rates(t)), 1e-15);
  }
}

std::size_t config_error_offset(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

TEST(Config, ParseErrorsCarryFileOffsets) {
  EXPECT_EQ(config_error_offset("[system]\nqubits = 1\n[bogus]\n"), 21u);
  EXPECT_EQ(config_error_offset("qubits = 1\n"), 0u);
  // Offset of the '*' inside the quoted expression.
  const std::string bad = "[system]\nt_op = \"1 + * 2\"\n";
  EXPECT_EQ(config_error_offset(bad), bad.find('*'));
  const std::string unknown = "[system]\nt_op = \"2*zeta\"\n";
  EXPECT_EQ(config_error_offset(unknown), unknown.find("zeta"));
  EXPECT_THROW(parse_config(unknown), NameError);
  EXPECT_THROW(parse_config("[system]\nqubits = 1\nqubits = 2\n"), ParseError);
  EXPECT_THROW(parse_config("[noise]\nchannel = leakage, \"1\"\n"), ParseError);
  EXPECT_THROW(parse_config("[system]\nt_op = \"1\n"), ParseError);
}

TEST(Config, ResolutionErrors) {
  EXPECT_THROW(resolve(parse_config("[system]\nqubits = 1\n[hamiltonian]\nterm = Q, \"1\"\n")), ConfigError);
  EXPECT_THROW(resolve(parse_config("[system]\nqubits = 1\nt_op = \"0\"\n")), ConfigError);
  EXPECT_THROW(resolve(parse_config("[system]\nbasis = pauli\n")), ConfigError);
  EXPECT_THROW(resolve(parse_config("[system]\nqubits = 1\nt_op = \"t\"\n")), ConfigError);
  Overrides ov;
  ov.gamma = 1.0;
  EXPECT_THROW(resolve(parse_config("[system]\nqubits = 1\n"), ov), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, GateSectionsBecomeAGateSpec) {
  const Experiment x = resolve(parse_config(read_file(std::string(SEPNOISE_CONFIGS) + "/hadamard.cfg")));
  ASSERT_TRUE(x.gate.has_value());
  EXPECT_EQ(x.gate->ops.size(), 2u);
  EXPECT_LE(max_abs(compile_per_op(*x.gate).gamma_n.gamma - hadamard_reference(0.1)), 1e-12);
}

}  // namespace
}  // namespace sepnoise
