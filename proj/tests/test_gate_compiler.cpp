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

#include "support.hpp"

namespace sepnoise {
namespace {

TEST(GateCompiler, HadamardToyModelMatrix) {
  const double gamma = 0.1;
  const GateNoise gn = compile_per_op(hadamard_toy_spec(gamma));
  const double pi = kPi, h = gamma / 2.0;
  CMatrix expected(3, 3);
  expected << 1.0 / 12.0, -kI / (3.0 * pi), -1.0 / (6.0 * pi),
      kI / (3.0 * pi), 0.5, -kI * (1.0 + pi) / (3.0 * pi),
      -1.0 / (6.0 * pi), kI * (1.0 + pi) / (3.0 * pi), 5.0 / 12.0;
  expected *= h;
  EXPECT_LE(max_abs(gn.gamma_n.gamma - expected), 1e-6);
  EXPECT_LE(max_abs(gn.gamma_n.gamma - hadamard_reference(gamma)), 1e-12);
  EXPECT_DOUBLE_EQ(gn.t_g, 3.0);
  ASSERT_EQ(gn.segments.size(), 2u);
}

TEST(GateCompiler, HadamardUnitary) {
  const GateNoise gn = compile_per_op(hadamard_toy_spec(0.1));
  CMatrix had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  EXPECT_LE(phase_insensitive_distance(gn.u, had), 1e-12);
  EXPECT_LE(phase_insensitive_distance(gn.u, hadamard_reference_unitary()), 1e-12);
}

TEST(GateCompiler, IdleMixtureLaw) {
  const double gamma = 0.1;
  const GateNoise base = compile_per_op(hadamard_toy_spec(gamma));
  const CMatrix lz = base.segments[0].gamma_l.gamma;
  const CMatrix ly = base.segments[1].gamma_l.gamma;
  // The last operation is not commuted past anything.
  EXPECT_LE(max_abs(ly - base.segments[1].gamma_s.gamma), 1e-15);
  const CMatrix damp = damping_rates(pauli_basis(1), 0, gamma);
  for (double m : {0.0, 1.0, 10.0, 100.0}) {
    const GateNoise gn = compile_per_op(hadamard_toy_spec(gamma, m));
    const CMatrix expected = (2.0 * lz + ly + m * damp) / (m + 3.0);
    EXPECT_LE(max_abs(gn.gamma_n.gamma - expected), 1e-9) << "m=" << m;
    EXPECT_NEAR(gn.t_g, 3.0 + m, 1e-15);
  }
}

TEST(GateCompiler, SingleOperationEqualsSeparatedNoise) {
  std::mt19937_64 rng(51);
  const auto gen = testing::random_generator(rng, 2, 0.9);
  GateSpec spec{gen.basis, {GateOp{"U", gen.schedule, std::nullopt, 0.0}}, gen.noise};
  const GateNoise gn = compile_per_op(spec);
  EXPECT_LE(max_abs(gn.gamma_n.gamma - separated_spectral(gen, 0.9).gamma_s.gamma), 1e-14);
  EXPECT_LE(max_abs(compile_per_op(spec, SeparatedRoute::integral).gamma_n.gamma - gn.gamma_n.gamma), 1e-10);
}

TEST(GateCompiler, PerOperationAndMonolithicAgree) {
  std::mt19937_64 rng(52);
  const OperatorBasis b = pauli_basis(1);
  GateSpec spec{b, {}, NoiseSchedule::constant(testing::random_rates(rng, 3, 0.2))};
  spec.ops.push_back(GateOp{"a", HamiltonianSchedule::constant(testing::random_coeffs(rng, 3), 0.7), std::nullopt, 0.3});
  spec.ops.push_back(GateOp{"b", HamiltonianSchedule::constant(testing::random_coeffs(rng, 3), 1.1), std::nullopt, 0.0});
  spec.ops.push_back(GateOp{"c",
                            HamiltonianSchedule::expression([](double t) {
                              CVector v = CVector::Zero(3);
                              v(0) = std::cos(2.0 * t);
                              v(2) = 0.5;
                              return v;
                            }, 3, 0.8),
                            NoiseSchedule::constant(testing::random_rates(rng, 3, 0.1)), 0.5});
  const GateNoise per_op = compile_per_op(spec);
  const GateNoise mono = compile_monolithic(spec);
  EXPECT_LE(max_abs(per_op.gamma_n.gamma - mono.gamma_n.gamma), 1e-10);
  EXPECT_LE(max_abs(per_op.u - mono.u), 1e-14);
  EXPECT_EQ(per_op.segments.size(), 5u);
  EXPECT_NEAR(per_op.gamma_n.strength(), gate_average_strength(spec), 1e-12);
}

TEST(GateCompiler, OrderMatters) {
  const double gamma = 0.1;
  GateSpec fwd = hadamard_toy_spec(gamma);
  GateSpec rev = fwd;
  std::swap(rev.ops[0], rev.ops[1]);
  const GateNoise a = compile_per_op(fwd);
  const GateNoise b = compile_per_op(rev);
  EXPECT_GT(max_abs(a.gamma_n.gamma - b.gamma_n.gamma), 1e-3);
  // The total strength is order independent.
  EXPECT_NEAR(a.gamma_n.strength(), b.gamma_n.strength(), 1e-14);
}

TEST(GateCompiler, StrengthIsTheDurationWeightedAverage) {
  const double gamma = 0.1;
  for (double m : {0.0, 4.0}) {
    const GateNoise gn = compile_per_op(hadamard_toy_spec(gamma, m));
    EXPECT_NEAR(gn.gamma_n.strength(), gamma / 2.0, 1e-12);
  }
}

TEST(GateCompiler, ModelErrorIsSecondOrderInNoise) {
  const DensityMatrix rho0 = DensityMatrix::basis_state(2, 0);
  const GateFidelityReport a = gate_fidelity_check(hadamard_toy_spec(0.02), rho0, 1e-3);
  const GateFidelityReport b = gate_fidelity_check(hadamard_toy_spec(0.01), rho0, 1e-3);
  EXPECT_TRUE(a.pass) << a.trace_distance;
  EXPECT_GT(b.trace_distance, 0.0);
  EXPECT_NEAR(a.trace_distance / b.trace_distance, 4.0, 0.5);
}

TEST(GateCompiler, RejectsMalformedSpecs) {
  const OperatorBasis b = pauli_basis(1);
  GateSpec empty{b, {}, NoiseSchedule::constant(CMatrix::Zero(3, 3))};
  EXPECT_THROW(compile_per_op(empty), InvalidArgument);
  GateSpec bad = hadamard_toy_spec(0.1);
  bad.ops[0].idle_after = -1.0;
  EXPECT_THROW(compile_per_op(bad), InvalidArgument);
  GateSpec wrong = hadamard_toy_spec(0.1);
  wrong.ops[0].schedule = HamiltonianSchedule::constant(CVector::Zero(15), 1.0);
  EXPECT_THROW(compile_monolithic(wrong), InvalidArgument);
}

}  // namespace
}  // namespace sepnoise
